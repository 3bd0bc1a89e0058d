//! Polynomial Pell pairs `p̂² − P̂₄·q̂² = 1`, `P̂₄ = s(s−1/a)(s−1/b)(s−1/λ₀)`.
//!
//! A vanishing Hankel condition gives polynomials `p*`, `q*` with
//! `p*(x) − q*(x)·S(x) = O(xᴺ)` for one of the series `S ∈ {B, C, D}`.
//! Reversing to `s = 1/x` turns this into `W·P² − R·Q² = ε` with
//! `W·R = P̂₄`, and then `p̂ = 2W·p² − ε`, `q̂ = 2pq`.
//!
//! | case                 | series | deg (p, q)   | W          | ε  |
//! |----------------------|--------|--------------|------------|----|
//! | periodic, n = 2m     | B      | (m, m−2)     | 1          | +1 |
//! | periodic, n = 2m+1   | C      | (m, m−1)     | s−1/λ₀     | −1 |
//! | elliptic A, n = 2m   | C      | (m−1, m−1)   | s(s−1/λ₀)  | −1 |
//! | elliptic A/B, 2m+1   | B      | (m, m−1)     | s          | +1 |
//! | elliptic B, n = 2m   | D      | (m−1, m−1)   | s(s−1/b)   | −1 |
//! | elliptic C, 2m+1     | D      | (m, m−1)     | s−1/b      | −1 |

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::cayley::{Flavor, Series};
use crate::conics::{interval_config, CausticKind, ConfocalFamily, IntervalConfig};
use crate::error::{Error, Result};
use crate::linalg::{kernel_vector, Kernel};
use crate::poly::{chebyshev_grid, RealPoly};
use crate::series::CayleySeries;

pub const PELL_TOL: f64 = 1e-7;
pub const GRID_POINTS: usize = 512;
/// Distance from ±1 accepted for `p̂(cᵢ)`.
pub const VALUE_TOL: f64 = 1e-6;
/// Roots of `q̂` closer than this are treated as one cluster.
pub const CLUSTER_TOL: f64 = 1e-6;

struct Case {
    series: Series,
    dp: usize,
    dq: usize,
    /// Roots of `W` in `s`.
    w_roots: Vec<f64>,
    eps: f64,
}

fn case(family: &ConfocalFamily, lambda0: f64, n: usize, flavor: Flavor) -> Result<Case> {
    let kind = family.caustic(lambda0).kind;
    let bad = |what| Err(Error::InvalidPeriod { n, what });
    let m = n / 2;
    let (a, b, l) = (family.a(), family.b(), lambda0);
    let _ = a;
    let c = match (flavor, n.is_multiple_of(2)) {
        (Flavor::Periodic, _) if n < 3 => return bad("periodic Pell pair (need n >= 3)"),
        (_, _) if n < 2 => return bad("Pell pair (need n >= 2)"),
        (Flavor::Periodic, true) => Case {
            series: Series::B,
            dp: m,
            dq: m - 2,
            w_roots: vec![],
            eps: 1.0,
        },
        (Flavor::Periodic, false) => Case {
            series: Series::C,
            dp: m,
            dq: m - 1,
            w_roots: vec![1.0 / l],
            eps: -1.0,
        },
        (Flavor::EllipticA, true) => Case {
            series: Series::C,
            dp: m - 1,
            dq: m - 1,
            w_roots: vec![0.0, 1.0 / l],
            eps: -1.0,
        },
        (Flavor::EllipticB, true) => Case {
            series: Series::D,
            dp: m - 1,
            dq: m - 1,
            w_roots: vec![0.0, 1.0 / b],
            eps: -1.0,
        },
        (Flavor::EllipticA | Flavor::EllipticB, false) => Case {
            series: Series::B,
            dp: m,
            dq: m - 1,
            w_roots: vec![0.0],
            eps: 1.0,
        },
        (Flavor::EllipticC, false) => Case {
            series: Series::D,
            dp: m,
            dq: m - 1,
            w_roots: vec![1.0 / b],
            eps: -1.0,
        },
        (Flavor::EllipticC, true) => return bad("elliptic case C (odd n only)"),
    };
    let ok = match flavor {
        Flavor::Periodic => true,
        Flavor::EllipticA => kind == CausticKind::Ellipse,
        Flavor::EllipticB | Flavor::EllipticC => kind == CausticKind::Hyperbola,
    };
    if !ok {
        return Err(Error::DegenerateCaustic { lambda0 });
    }
    Ok(c)
}

/// Polynomials `p*`, `q*` in `x` with `p* − q*·S` vanishing to the order
/// fixed by the case, and the singular values that certify the kernel.
#[derive(Debug, Clone)]
pub struct DefectPair {
    pub n: usize,
    pub flavor: Flavor,
    pub lambda0: f64,
    pub p_star: RealPoly,
    pub q_star: RealPoly,
    pub kernel: Kernel,
}

/// Largest `k` with the power series of `p* − q*·S` vanishing through `x^{k−1}`.
pub fn defect_order(family: &ConfocalFamily, pair: &DefectPair, tol: f64) -> Result<usize> {
    let c = case(family, pair.lambda0, pair.n, pair.flavor)?;
    let order = c.dp + c.dq + 4;
    let s = series_coeffs(family, pair.lambda0, c.series, order)?;
    let rho = scale_of(family, pair.lambda0);
    let get = |p: &RealPoly, k: usize| p.coeffs().get(k).copied().unwrap_or(0.0);
    let mut k = 0;
    while k <= order {
        let conv: f64 = (0..=k).map(|j| get(&pair.q_star, j) * s[k - j]).sum();
        let v = (get(&pair.p_star, k) - conv) * rho.powi(k as i32);
        if v.abs() > tol {
            break;
        }
        k += 1;
    }
    Ok(k)
}

fn scale_of(family: &ConfocalFamily, lambda0: f64) -> f64 {
    family.a().min(family.b()).min(lambda0)
}

fn series_coeffs(family: &ConfocalFamily, lambda0: f64, series: Series, order: usize) -> Result<Vec<f64>> {
    let s = CayleySeries::new(family.a(), family.b(), lambda0, order)?;
    Ok(match series {
        Series::B => s.b,
        Series::C => s.c,
        Series::D => s.d,
    }
    .coeffs()
    .to_vec())
}

pub fn build_defect_pair(family: &ConfocalFamily, lambda0: f64, n: usize, flavor: Flavor) -> Result<DefectPair> {
    let c = case(family, lambda0, n, flavor)?;
    let rho = scale_of(family, lambda0);
    let size = c.dp + c.dq + 2;
    let raw = series_coeffs(family, lambda0, c.series, size)?;
    // work in ξ = x/ρ, where the coefficients are of unit size
    let c0 = raw[0].abs();
    let s: Vec<f64> = raw
        .iter()
        .enumerate()
        .map(|(k, v)| v * rho.powi(k as i32) / c0)
        .collect();
    let m = DMatrix::from_fn(size, size, |k, j| {
        if j <= c.dp {
            if j == k {
                1.0
            } else {
                0.0
            }
        } else {
            let jj = j - c.dp - 1;
            if jj <= k {
                -s[k - jj]
            } else {
                0.0
            }
        }
    });
    let kernel = kernel_vector(&m)?;
    let v = &kernel.vector;
    let unscale = |coeffs: &[f64], extra: f64| -> RealPoly {
        RealPoly::from_raw(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, x)| x * extra / rho.powi(k as i32))
                .collect(),
        )
    };
    Ok(DefectPair {
        n,
        flavor,
        lambda0,
        p_star: unscale(&v[..=c.dp], 1.0),
        q_star: unscale(&v[c.dp + 1..], 1.0 / c0),
        kernel,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PellPair {
    pub n: usize,
    pub flavor: Flavor,
    pub lambda0: f64,
    pub config: IntervalConfig,
    pub p_hat: RealPoly,
    pub q_hat: RealPoly,
    pub residual: f64,
}

/// `max |p̂² − P̂₄q̂² − 1|` on a Chebyshev grid over `[c₄, c₁]`.
pub fn pell_residual(p_hat: &RealPoly, q_hat: &RealPoly, config: &IntervalConfig) -> f64 {
    chebyshev_grid(config.c4, config.c1, GRID_POINTS)
        .into_iter()
        .map(|s| {
            let (p, q) = (p_hat.eval(s), q_hat.eval(s));
            (p * p - config.eval_quartic(s) * q * q - 1.0).abs()
        })
        .fold(0.0, f64::max)
}

pub fn assemble_pell(defect: &DefectPair, family: &ConfocalFamily) -> Result<PellPair> {
    let (n, lambda0) = (defect.n, defect.lambda0);
    let c = case(family, lambda0, n, defect.flavor)?;
    let config = interval_config(family, &family.caustic(lambda0))?;
    let rho = scale_of(family, lambda0);
    // t = ρs keeps every root of P̂₄ inside [0, 1]
    let rev = |p: &RealPoly, d: usize| {
        let scaled: Vec<f64> = (0..=d)
            .map(|k| p.coeffs().get(k).copied().unwrap_or(0.0) * rho.powi(k as i32))
            .rev()
            .collect();
        RealPoly::from_raw(scaled)
    };
    let pp = rev(&defect.p_star, c.dp);
    let qq = rev(&defect.q_star, c.dq);
    let w_roots: Vec<f64> = c.w_roots.iter().map(|r| r * rho).collect();
    let all_roots: Vec<f64> = [0.0, 1.0 / family.a(), 1.0 / family.b(), 1.0 / lambda0]
        .iter()
        .map(|r| r * rho)
        .collect();
    let mut r_roots = all_roots.clone();
    for w in &w_roots {
        let i = r_roots
            .iter()
            .position(|r| (r - w).abs() <= 1e-15 * (1.0 + w.abs()))
            .expect("W divides P4");
        r_roots.remove(i);
    }
    let w = RealPoly::from_roots(&w_roots);
    let r = RealPoly::from_roots(&r_roots);
    let wp2 = w.mul(&pp).mul(&pp);
    let rq2 = r.mul(&qq).mul(&qq);
    // least squares for kp·WP² − kq·RQ² = ε
    let len = wp2.coeffs().len().max(rq2.coeffs().len());
    let get = |p: &RealPoly, k: usize| p.coeffs().get(k).copied().unwrap_or(0.0);
    let a_mat = DMatrix::from_fn(len, 2, |k, j| if j == 0 { get(&wp2, k) } else { -get(&rq2, k) });
    let mut rhs = nalgebra::DVector::zeros(len);
    rhs[0] = c.eps;
    let sol = a_mat
        .clone()
        .svd(true, true)
        .solve(&rhs, 1e-14)
        .map_err(|_| Error::ResidualTooLarge {
            residual: f64::INFINITY,
            tolerance: PELL_TOL,
        })?;
    let (kp, kq) = (sol[0], sol[1]);
    if !(kp * kq > 0.0) {
        return Err(Error::ResidualTooLarge {
            residual: f64::INFINITY,
            tolerance: PELL_TOL,
        });
    }
    let p_t = wp2.scale(2.0 * kp).sub(&RealPoly::constant(c.eps));
    let q_t = pp.mul(&qq).scale(2.0 * (kp * kq).sqrt());
    // back to s
    let back = |p: &RealPoly, extra: f64| {
        RealPoly::from_raw(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, x)| x * extra * rho.powi(k as i32))
                .collect(),
        )
    };
    let mut p_hat = back(&p_t, 1.0);
    let mut q_hat = back(&q_t, rho * rho);
    let drift = p_hat.eval(0.0).abs();
    p_hat = p_hat.scale(1.0 / drift);
    q_hat = q_hat.scale(1.0 / drift);
    let residual = pell_residual(&p_hat, &q_hat, &config);
    if !(residual < PELL_TOL) {
        return Err(Error::ResidualTooLarge {
            residual,
            tolerance: PELL_TOL,
        });
    }
    Ok(PellPair {
        n,
        flavor: defect.flavor,
        lambda0,
        config,
        p_hat,
        q_hat,
        residual,
    })
}

/// Defect pair and assembly in one call.
pub fn pell_pair(family: &ConfocalFamily, lambda0: f64, n: usize, flavor: Flavor) -> Result<PellPair> {
    let d = build_defect_pair(family, lambda0, n, flavor)?;
    assemble_pell(&d, family)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Periodic,
    EllipticOnly,
}

fn endpoint_values(pair: &PellPair, config: &IntervalConfig) -> Result<[f64; 4]> {
    let values = config.as_array().map(|c| pair.p_hat.eval(c));
    if values.iter().any(|v| (v.abs() - 1.0).abs() > VALUE_TOL) {
        return Err(Error::ValuePatternInvalid { values });
    }
    Ok(values)
}

/// Real roots of `q̂` with their cluster multiplicity merged, sorted.
fn q_roots(pair: &PellPair) -> Vec<f64> {
    let mut roots: Vec<f64> = pair
        .q_hat
        .complex_roots()
        .into_iter()
        .filter(|&(re, im)| im.abs() <= CLUSTER_TOL * (1.0 + re.abs()))
        .map(|(re, _)| re)
        .collect();
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() < CLUSTER_TOL);
    roots
}

/// Splits the roots of `q̂ = 2pq` by the value of `p̂` there: `+1` for `p`
/// (where `p̂ − 1` has its double roots), `−1` for `q`.
fn split_roots(p_hat: &RealPoly, roots: &[f64]) -> (Vec<f64>, Vec<f64>) {
    roots.iter().partition(|&&r| p_hat.eval(r) > 0.0)
}

/// Builds `p`, `q` from `p̂ − 1 = σ·2·S₁·p²`, `p̂ + 1 = σ·2·S₃·q²`, with the
/// sign of `q` chosen so that `q̂ = 2pq`.
fn square_roots(p_hat: &RealPoly, q_hat: &RealPoly, dp: usize, dq: usize) -> Result<(RealPoly, RealPoly, f64)> {
    let roots = {
        let mut r: Vec<f64> = q_hat
            .complex_roots()
            .into_iter()
            .filter(|&(re, im)| im.abs() <= CLUSTER_TOL * (1.0 + re.abs()))
            .map(|(re, _)| re)
            .collect();
        r.sort_by(f64::total_cmp);
        r
    };
    let (pr, qr) = split_roots(p_hat, &roots);
    if pr.len() != dp || qr.len() != dq {
        return Err(Error::CountMismatch {
            detail: format!(
                "expected {dp} roots of p and {dq} of q among the roots of q̂, found {} and {}",
                pr.len(),
                qr.len()
            ),
        });
    }
    let lc = p_hat.leading();
    let sigma = lc.signum();
    let k = (lc.abs() / 2.0).sqrt();
    let p = RealPoly::from_roots(&pr).scale(k);
    let mut q = RealPoly::from_roots(&qr).scale(k);
    if (2.0 * p.leading() * q.leading()).signum() != q_hat.leading().signum() {
        q = q.scale(-1.0);
    }
    Ok((p, q, sigma))
}

fn max_on_grid(config: &IntervalConfig, f: impl Fn(f64) -> f64) -> f64 {
    chebyshev_grid(config.c4, config.c1, GRID_POINTS)
        .into_iter()
        .map(f)
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OddFactorization {
    pub s1: RealPoly,
    pub s3: RealPoly,
    pub p: RealPoly,
    pub q: RealPoly,
    pub sigma: f64,
    /// Index `i` of the root `cᵢ` of `S₁` (1 … 4).
    pub root_index: usize,
    pub verdict: Verdict,
    /// `max |S₁p² − S₃q² + σ|` on the grid.
    pub residual: f64,
}

pub fn factor_pell_odd(pair: &PellPair, config: &IntervalConfig) -> Result<OddFactorization> {
    if pair.p_hat.degree().is_multiple_of(2) {
        return Err(Error::InvalidPeriod {
            n: pair.p_hat.degree(),
            what: "odd factorization",
        });
    }
    let mut values = endpoint_values(pair, config)?;
    let mut p_hat = pair.p_hat.clone();
    let plus = values.iter().filter(|&&v| v > 0.0).count();
    match plus {
        1 => {}
        3 => {
            p_hat = p_hat.scale(-1.0);
            values = values.map(|v| -v);
        }
        _ => return Err(Error::ValuePatternInvalid { values }),
    }
    let idx = values.iter().position(|&v| v > 0.0).unwrap();
    let cs = config.as_array();
    let s1_root = cs[idx];
    let others: Vec<f64> = cs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .map(|(_, &c)| c)
        .collect();
    let s1 = RealPoly::from_raw(vec![-s1_root, 1.0]);
    let s3 = RealPoly::from_roots(&others);
    let d = pair.p_hat.degree();
    let (p, q, sigma) = square_roots(&p_hat, &pair.q_hat, (d - 1) / 2, (d - 3) / 2)?;
    let residual = max_on_grid(config, |s| {
        (s1.eval(s) * p.eval(s).powi(2) - s3.eval(s) * q.eval(s).powi(2) + sigma).abs()
    });
    if !(residual < 1e-6) {
        return Err(Error::ResidualTooLarge {
            residual,
            tolerance: 1e-6,
        });
    }
    let verdict = if idx == 0 && (config.c1 - 1.0 / pair.lambda0).abs() <= 1e-12 * config.c1 {
        Verdict::Periodic
    } else {
        Verdict::EllipticOnly
    };
    Ok(OddFactorization {
        s1,
        s3,
        p,
        q,
        sigma,
        root_index: idx + 1,
        verdict,
        residual,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvenFactorization {
    pub s_prime: RealPoly,
    pub s_second: RealPoly,
    pub p: RealPoly,
    pub q: RealPoly,
    pub sigma: f64,
    pub verdict: Verdict,
    pub residual: f64,
}

pub fn factor_pell_even(pair: &PellPair, config: &IntervalConfig) -> Result<EvenFactorization> {
    let d = pair.p_hat.degree();
    if d % 2 == 1 {
        return Err(Error::InvalidPeriod {
            n: d,
            what: "even factorization",
        });
    }
    let mut values = endpoint_values(pair, config)?;
    let mut p_hat = pair.p_hat.clone();
    let plus = values.iter().filter(|&&v| v > 0.0).count();
    let cs = config.as_array();
    let (s_prime, s_second, dp, dq, verdict) = match plus {
        0 | 4 => {
            if plus == 4 {
                p_hat = p_hat.scale(-1.0);
            }
            (
                RealPoly::constant(1.0),
                RealPoly::from_roots(&cs),
                d / 2,
                d / 2 - 2,
                Verdict::Periodic,
            )
        }
        2 => {
            // p̂(c₄) = p̂(0) = +1 after normalization
            if values[3] < 0.0 {
                p_hat = p_hat.scale(-1.0);
                values = values.map(|v| -v);
            }
            let partner = (0..3).find(|&i| values[i] > 0.0).unwrap();
            if partner != 0 {
                return Err(Error::ValuePatternInvalid { values });
            }
            (
                RealPoly::from_roots(&[0.0, cs[0]]),
                RealPoly::from_roots(&[cs[1], cs[2]]),
                d / 2 - 1,
                d / 2 - 1,
                Verdict::EllipticOnly,
            )
        }
        _ => return Err(Error::ValuePatternInvalid { values }),
    };
    let (p, q, sigma) = square_roots(&p_hat, &pair.q_hat, dp, dq)?;
    let residual = max_on_grid(config, |s| {
        (s_prime.eval(s) * p.eval(s).powi(2) - s_second.eval(s) * q.eval(s).powi(2) + sigma).abs()
    });
    if !(residual < 1e-6) {
        return Err(Error::ResidualTooLarge {
            residual,
            tolerance: 1e-6,
        });
    }
    Ok(EvenFactorization {
        s_prime,
        s_second,
        p,
        q,
        sigma,
        verdict,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub tau1: usize,
    pub tau2: usize,
    pub m0: usize,
    pub m1: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Alternance {
    /// All solutions of `p̂² = 1` in `[c₄, c₁]`, sorted: the four `cᵢ` and
    /// the double roots at the zeros of `q̂`.
    pub points: Vec<f64>,
    /// Size of the alternance set; `c₃` and `c₂` carry the same sign and
    /// count once.
    pub alternance_size: usize,
    pub signature: Signature,
}

pub fn alternance(pair: &PellPair, config: &IntervalConfig) -> Result<Alternance> {
    endpoint_values(pair, config)?;
    let n = pair.p_hat.degree();
    let (c1, c2, c3, c4) = (config.c1, config.c2, config.c3, config.c4);
    let roots = q_roots(pair);
    let inside = |lo: f64, hi: f64| roots.iter().filter(|&&r| r > lo && r < hi).count();
    let k1 = inside(c4, c3);
    let tau1 = inside(c2, c1);
    let gap = inside(c3, c2);
    if k1 + tau1 != n - 2 || gap != 0 {
        return Err(Error::CountMismatch {
            detail: format!(
                "q̂ has {k1} zeros in (c₄,c₃), {gap} in (c₃,c₂), {tau1} in (c₂,c₁); degree {}",
                n - 2
            ),
        });
    }
    let m1 = 1 + k1;
    let m0 = m1 + tau1 + 1;
    if m0 != n {
        return Err(Error::CountMismatch {
            detail: format!("m₀ = {m0} but deg p̂ = {n}"),
        });
    }
    let mut points: Vec<f64> = roots.iter().copied().filter(|&r| r > c4 && r < c1).collect();
    points.extend([c1, c2, c3, c4]);
    points.sort_by(f64::total_cmp);
    // signs alternate along the points except across the gap (c₃, c₂)
    let signs: Vec<bool> = points.iter().map(|&s| pair.p_hat.eval(s) > 0.0).collect();
    for (i, w) in signs.windows(2).enumerate() {
        let across_gap = points[i] == c3 && points[i + 1] == c2;
        if (w[0] == w[1]) != across_gap {
            return Err(Error::CountMismatch {
                detail: format!("no sign alternation at s = {}", points[i + 1]),
            });
        }
    }
    Ok(Alternance {
        alternance_size: points.len() - 1,
        points,
        signature: Signature {
            tau1,
            tau2: m1 - 1,
            m0,
            m1,
        },
    })
}

/// JSON shape of a Pell pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PellRecord {
    pub n: usize,
    pub lambda0: f64,
    pub p_hat: Vec<f64>,
    pub q_hat: Vec<f64>,
    pub residual: f64,
    pub signature: Option<Signature>,
}

impl PellPair {
    pub fn record(&self) -> PellRecord {
        PellRecord {
            n: self.n,
            lambda0: self.lambda0,
            p_hat: self.p_hat.coeffs().to_vec(),
            q_hat: self.q_hat.coeffs().to_vec(),
            residual: self.residual,
            signature: alternance(self, &self.config).ok().map(|a| a.signature),
        }
    }
}
