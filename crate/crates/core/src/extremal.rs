//! Jacobi elliptic and theta functions, and the extremal polynomials of
//! Chebyshev, Zolotarev and Akhiezer on one or two intervals.
//!
//! Theta notation: `H = θ₁`, `H₁ = θ₂`, `Θ = θ₄`, `Θ₁ = θ₃`, all taken at
//! `z = πu/(2K)` with nome `q = exp(−πK′/K)`.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::cayley::{closed_form_caustics, Flavor};
use crate::conics::{interval_config, ConfocalFamily};
use crate::error::{Error, Result};
use crate::pell::pell_pair;
use crate::poly::{chebyshev_grid, interpolate, RealPoly};
use crate::rotation::carlson_rf;

type C64 = Complex<f64>;

fn agm(mut a: f64, mut b: f64) -> f64 {
    while (a - b).abs() > 1e-16 * a {
        let next = ((a + b) / 2.0, (a * b).sqrt());
        if next.0 == a && next.1 == b {
            break;
        }
        (a, b) = next;
    }
    (a + b) / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticModulus {
    pub kappa: f64,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "Kprime")]
    pub k_prime: f64,
    pub nome_q: f64,
}

impl EllipticModulus {
    pub fn new(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa < 1.0) {
            return Err(Error::ModulusOutOfRange { kappa });
        }
        let kp = complementary(kappa);
        let k = PI / (2.0 * agm(1.0, kp));
        let k_prime = PI / (2.0 * agm(1.0, kappa));
        Ok(Self {
            kappa,
            k,
            k_prime,
            nome_q: (-PI * k_prime / k).exp(),
        })
    }

    pub fn kappa_prime(&self) -> f64 {
        complementary(self.kappa)
    }

    /// `|K_AGM − R_F(0, κ′², 1)|`, an independent evaluation of `K`.
    pub fn k_consistency(&self) -> f64 {
        (self.k - carlson_rf(0.0, self.kappa_prime().powi(2), 1.0)).abs()
    }

    fn z(&self, u: C64) -> C64 {
        u * (PI / (2.0 * self.k))
    }
}

fn complementary(kappa: f64) -> f64 {
    ((1.0 - kappa) * (1.0 + kappa)).sqrt()
}

/// `(sn, cn, dn)` by the descending Landen (AGM) scheme.
pub fn jacobi_sn_cn_dn(u: f64, kappa: f64) -> Result<(f64, f64, f64)> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::ModulusOutOfRange { kappa });
    }
    let mut a = vec![1.0];
    let mut c = vec![kappa];
    let mut b = complementary(kappa);
    while c.last().unwrap().abs() > 1e-16 && a.len() < 40 {
        let (an, bn) = (*a.last().unwrap(), b);
        a.push((an + bn) / 2.0);
        c.push((an - bn) / 2.0);
        b = (an * bn).sqrt();
    }
    let n = a.len() - 1;
    let mut phi = 2f64.powi(n as i32) * a[n] * u;
    for i in (1..=n).rev() {
        phi = (phi + (c[i] / a[i] * phi.sin()).asin()) / 2.0;
    }
    let (sn, cn) = phi.sin_cos();
    let dn = (1.0 - kappa * kappa * sn * sn).sqrt();
    Ok((sn, cn, dn))
}

/// `F(φ, k) = sin φ · R_F(cos²φ, 1 − k² sin²φ, 1)`.
fn incomplete_f(phi: f64, k: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    s * carlson_rf(c * c, 1.0 - k * k * s * s, 1.0)
}

/// The four theta functions `[θ₁, θ₂, θ₃, θ₄]` at complex `z`.
pub fn thetas(z: C64, q: f64) -> [C64; 4] {
    let lq = -q.ln();
    let y = z.im.abs();
    let mut t = [
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(1.0, 0.0),
    ];
    let peak = y / lq + 1.0;
    let mut n = 0usize;
    loop {
        let h = n as f64 + 0.5;
        let qh = (-lq * h * h).exp();
        let arg = z * (2.0 * h);
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        t[0] += arg.sin() * (2.0 * sign * qh);
        t[1] += arg.cos() * (2.0 * qh);
        let bound_odd = qh * (2.0 * h * y).exp();
        let mut bound_even = 0.0;
        if n > 0 {
            let nf = n as f64;
            let qn = (-lq * nf * nf).exp();
            let c = (z * (2.0 * nf)).cos() * (2.0 * qn);
            t[2] += c;
            t[3] += c * sign;
            bound_even = qn * (2.0 * nf * y).exp();
        }
        let scale = t.iter().map(|v| v.norm()).fold(1e-300, f64::max);
        if n as f64 > peak && bound_odd.max(bound_even) < 1e-17 * scale {
            break;
        }
        n += 1;
    }
    t
}

/// `dθ₄/dz` at real `z`.
fn theta4_prime(z: f64, q: f64) -> f64 {
    let lq = -q.ln();
    let mut s = 0.0;
    let mut n = 1usize;
    loop {
        let nf = n as f64;
        let term = nf * (-lq * nf * nf).exp();
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        s += sign * term * (2.0 * nf * z).sin();
        if term < 1e-18 * s.abs().max(1e-300) || n > 400 {
            break;
        }
        n += 1;
    }
    -4.0 * s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thetas {
    pub h: f64,
    pub h1: f64,
    pub theta: f64,
    pub theta1: f64,
}

pub fn theta_functions(u: f64, modulus: &EllipticModulus) -> Thetas {
    let t = thetas(modulus.z(C64::new(u, 0.0)), modulus.nome_q);
    Thetas {
        h: t[0].re,
        h1: t[1].re,
        theta: t[3].re,
        theta1: t[2].re,
    }
}

/// `Θ′(u)/Θ(u)` with the derivative in `u`.
fn log_deriv_theta(u: f64, m: &EllipticModulus) -> f64 {
    let scale = PI / (2.0 * m.k);
    let z = u * scale;
    scale * theta4_prime(z, m.nome_q) / thetas(C64::new(z, 0.0), m.nome_q)[3].re
}

/// `u` with `sn²u = S`: real for `S ∈ [0, 1]`, on the imaginary axis for
/// `S < 0`, and on `K + i·ℝ` for `S ∈ (1, 1/κ²]`.
fn u_from_sn2(s: f64, m: &EllipticModulus) -> Result<C64> {
    let (k, kp) = (m.kappa, m.kappa_prime());
    if s <= 0.0 {
        // sn(iv, κ) = i·sc(v, κ′)
        Ok(C64::new(0.0, incomplete_f((-s).sqrt().atan(), kp)))
    } else if s <= 1.0 {
        Ok(C64::new(incomplete_f(s.sqrt().asin(), k), 0.0))
    } else if s <= 1.0 / (k * k) * (1.0 + 1e-12) {
        // sn(K + iv, κ) = 1/dn(v, κ′)
        let w = ((1.0 - 1.0 / s) / (kp * kp)).clamp(0.0, 1.0);
        Ok(C64::new(m.k, incomplete_f(w.sqrt().asin(), kp)))
    } else {
        Err(Error::ParamOutOfRange {
            detail: format!("sn²u = {s} beyond 1/κ²"),
        })
    }
}

pub fn chebyshev_t(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        _ => {
            let (mut prev, mut cur) = (1.0, x);
            for _ in 1..n {
                (prev, cur) = (cur, 2.0 * x * cur - prev);
            }
            cur
        }
    }
}

/// `(vⁿ + v⁻ⁿ)` with `v(u) = H(u − c)/H(u + c)` at complex `u`.
fn theta_power_sum(n: usize, c: f64, u: C64, m: &EllipticModulus) -> f64 {
    let num = thetas(m.z(u - c), m.nome_q)[0];
    let den = thetas(m.z(u + c), m.nome_q)[0];
    let v = num / den;
    let vn = v.powi(n as i32);
    (vn + vn.inv()).re
}

fn gauss_nodes(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k)
        .map(|i| {
            let t = (PI * (2 * i + 1) as f64 / (2 * k) as f64).cos();
            0.5 * (lo + hi) + 0.5 * (hi - lo) * t
        })
        .collect()
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo * fhi > 0.0 || !flo.is_finite() || !fhi.is_finite() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-16 * hi {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Bracket for moduli recovered from interval geometry.
pub const KAPPA_BRACKET: (f64, f64) = (1e-9, 1.0 - 1e-9);

/// Roots in `κ` of a function, found on a scan grid and refined by bisection.
fn solve_kappa(f: impl Fn(f64) -> f64) -> Vec<f64> {
    let (lo, hi) = KAPPA_BRACKET;
    let n = 400;
    let ks: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let vs: Vec<f64> = ks.iter().map(|&k| f(k)).collect();
    let mut out = vec![];
    for i in 0..n {
        if vs[i].is_finite() && vs[i + 1].is_finite() && vs[i] * vs[i + 1] <= 0.0 {
            if let Some(r) = bisect(&f, ks[i], ks[i + 1]) {
                out.push(r);
            }
        }
    }
    out
}

/// Ratio constant at the point of largest `|f|` and the max deviation of
/// `f − c·g` relative to that value.
pub fn proportionality(f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64, grid: &[f64]) -> (f64, f64) {
    let (i, _) = grid
        .iter()
        .enumerate()
        .map(|(i, &s)| (i, f(s).abs()))
        .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    let peak = f(grid[i]);
    let c = peak / g(grid[i]);
    let dev = grid.iter().map(|&s| (f(s) - c * g(s)).abs()).fold(0.0, f64::max) / peak.abs();
    (c, dev)
}

// ---------------------------------------------------------------- Zolotarev

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZolotarevParams {
    pub n: usize,
    pub modulus: EllipticModulus,
    pub sigma: f64,
    pub alpha: f64,
    pub beta: f64,
    pub ell_n: f64,
    #[serde(rename = "L_n")]
    pub l_n: f64,
}

pub fn zolotarev_endpoints(n: usize, kappa: f64) -> Result<ZolotarevParams> {
    if n < 2 {
        return Err(Error::InvalidPeriod {
            n,
            what: "Zolotarev polynomial",
        });
    }
    let m = EllipticModulus::new(kappa)?;
    let c = m.k / n as f64;
    let (sn, cn, dn) = jacobi_sn_cn_dn(c, kappa)?;
    let k2 = kappa * kappa;
    let alpha = (1.0 + k2 * sn * sn) / (dn * dn);
    let beta = (1.0 + sn * sn) / (cn * cn);
    let back = (alpha - 1.0) * (beta + 1.0) / ((alpha + 1.0) * (beta - 1.0));
    if (back - k2).abs() > 1e-10 {
        return Err(Error::MismatchBeyondTolerance {
            detail: format!("κ² back-relation gives {back}, want {k2}"),
        });
    }
    let (sn2, _, _) = jacobi_sn_cn_dn(2.0 * c, kappa)?;
    let sigma = 2.0 * sn / (cn * dn) * (1.0 / sn2 - log_deriv_theta(c, &m)) - 1.0;
    let t0 = theta_functions(0.0, &m);
    let tc = theta_functions(c, &m);
    let ell_n = 0.5f64.powi(n as i32) * (kappa.sqrt() * t0.theta1 * t0.theta1 / (tc.h1 * tc.theta1)).powi(2 * n as i32);
    Ok(ZolotarevParams {
        n,
        modulus: m,
        sigma,
        alpha,
        beta,
        ell_n,
        l_n: 2.0 * ell_n,
    })
}

impl ZolotarevParams {
    /// `z_n(x) = ℓₙ(vⁿ + v⁻ⁿ)` for `x ∈ [−1, 1) ∪ [α, β]`, where
    /// `x = (sn²u + sn²(K/n))/(sn²u − sn²(K/n))`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let m = &self.modulus;
        let c = m.k / self.n as f64;
        let y2 = jacobi_sn_cn_dn(c, m.kappa)?.0.powi(2);
        let inside = (-1.0..1.0).contains(&x) || (x >= self.alpha && x <= self.beta);
        if !inside {
            return Err(Error::ParamOutOfRange {
                detail: format!("x = {x} outside [−1, 1) ∪ [α, β]"),
            });
        }
        let s = y2 * (x + 1.0) / (x - 1.0);
        let u = u_from_sn2(s, m)?;
        Ok(self.ell_n * theta_power_sum(self.n, c, u, m))
    }

    /// `z_n` interpolated at `n` nodes in `[−1, 1]` and one in `[α, β]`.
    pub fn polynomial(&self) -> Result<RealPoly> {
        let mut xs = gauss_nodes(-1.0, 1.0, self.n);
        xs.push(0.5 * (self.alpha + self.beta));
        let ys = xs.iter().map(|&x| self.eval(x)).collect::<Result<Vec<_>>>()?;
        Ok(interpolate(&xs, &ys))
    }
}

/// Modulus with `α(κ) = alpha` for the degree-`n` Zolotarev endpoints.
pub fn zolotarev_modulus(n: usize, alpha: f64) -> Result<f64> {
    let f = |k: f64| zolotarev_endpoints(n, k).map(|p| p.alpha - alpha).unwrap_or(f64::NAN);
    let (lo, hi) = KAPPA_BRACKET;
    bisect(f, lo, hi).ok_or_else(|| Error::ParamOutOfRange {
        detail: format!("no modulus in {KAPPA_BRACKET:?} gives α = {alpha}"),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZolotarevReport {
    pub t: f64,
    pub lambda0: f64,
    pub params: ZolotarevParams,
    /// `β` from the caustic: `(β + 1)/(2a) = 1/λ₀`.
    pub beta_geometric: f64,
    /// `(4/3)√(t²−t+1) + (2/3)t − 1/3`.
    pub beta_closed: f64,
    /// `(4/3)√(t²−t+1) + (2/3)t + 5/3`, as printed.
    pub beta_closed_printed: f64,
    /// `−(2t²−3t+3+2√(t²−t+1))/(t+1+2√(t²−t+1))`, as printed.
    pub beta_rational_printed: f64,
    /// `β` from `Y = (−1 + √(1−t+t²))/(t−1)` and `β = (1+Y²)/(1−Y²)`.
    pub beta_from_y: f64,
    /// `1 − 2Y + 2κ²Y³ − κ²Y⁴` at `Y = sn(K/3)`.
    pub y_relation_residual: f64,
    /// `α − (Y²−4Y+1)/(Y²−1)`.
    pub alpha_from_y_residual: f64,
    /// `9β² − 3α² − 6αβ + 12α − 36β + 56`.
    pub printed_identity_residual: f64,
    /// `9β² − 6αβ − 3α² − 12`.
    pub identity_residual: f64,
    /// Deviation of `p̂₃(s)` from a multiple of `z₃(2as − 1)`.
    pub deviation: f64,
    /// Leading and second coefficient of the interpolated `z₃`.
    pub leading: f64,
    pub second_coeff_residual: f64,
}

pub const IDENTITY_TOL: f64 = 1e-9;
pub const PROPORTIONALITY_TOL: f64 = 1e-6;

impl ZolotarevReport {
    pub fn check(&self) -> Result<()> {
        let mut bad = vec![];
        if !(self.printed_identity_residual.abs() < IDENTITY_TOL) {
            bad.push(format!(
                "endpoint identity 9β²−3α²−6αβ+12α−36β+56 = {:e}",
                self.printed_identity_residual
            ));
        }
        if !(self.deviation < PROPORTIONALITY_TOL) {
            bad.push(format!("proportionality deviation {:e}", self.deviation));
        }
        if !((self.params.beta - self.beta_geometric).abs() < IDENTITY_TOL) {
            bad.push(format!(
                "β = {} but the caustic needs {}",
                self.params.beta, self.beta_geometric
            ));
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::MismatchBeyondTolerance { detail: bad.join("; ") })
        }
    }
}

pub fn verify_zolotarev_n3(family: &ConfocalFamily) -> Result<ZolotarevReport> {
    let (a, b) = (family.a(), family.b());
    let t = a / b;
    let alpha = 2.0 * t - 1.0;
    let kappa = zolotarev_modulus(3, alpha)?;
    let params = zolotarev_endpoints(3, kappa)?;
    let beta = params.beta;
    let lambda0 = closed_form_caustics(family, 3)?
        .first()
        .map(|s| s.lambda0.lambda0)
        .ok_or(Error::UnsupportedPeriod { n: 3 })?;
    let r = (t * t - t + 1.0).sqrt();
    let yt = (-1.0 + r) / (t - 1.0);
    let y = jacobi_sn_cn_dn(params.modulus.k / 3.0, kappa)?.0;
    let k2 = kappa * kappa;
    let z = params.polynomial()?;
    let pair = pell_pair(family, lambda0, 3, Flavor::Periodic)?;
    let grid = chebyshev_grid(0.0, pair.config.c1, 64);
    let (_, deviation) = proportionality(|s| pair.p_hat.eval(s), |s| z.eval(2.0 * a * s - 1.0), &grid);
    let zc = z.coeffs();
    Ok(ZolotarevReport {
        t,
        lambda0,
        beta_geometric: 2.0 * a / lambda0 - 1.0,
        beta_closed: 4.0 / 3.0 * r + 2.0 / 3.0 * t - 1.0 / 3.0,
        beta_closed_printed: 4.0 / 3.0 * r + 2.0 / 3.0 * t + 5.0 / 3.0,
        beta_rational_printed: -(2.0 * t * t - 3.0 * t + 3.0 + 2.0 * r) / (t + 1.0 + 2.0 * r),
        beta_from_y: (1.0 + yt * yt) / (1.0 - yt * yt),
        y_relation_residual: 1.0 - 2.0 * y + 2.0 * k2 * y.powi(3) - k2 * y.powi(4),
        alpha_from_y_residual: params.alpha - (y * y - 4.0 * y + 1.0) / (y * y - 1.0),
        printed_identity_residual: 9.0 * beta * beta - 3.0 * alpha * alpha - 6.0 * alpha * beta + 12.0 * alpha
            - 36.0 * beta
            + 56.0,
        identity_residual: 9.0 * beta * beta - 6.0 * alpha * beta - 3.0 * alpha * alpha - 12.0,
        deviation,
        leading: zc[3],
        second_coeff_residual: zc[2] + 3.0 * params.sigma * zc[3],
        params,
    })
}

// ------------------------------------------------------ symmetric Akhiezer

/// `A_{2m}(x; α)` and its deviation `L_{2m}(α) = (1−α²)ᵐ/2^{2m−1}`.
pub fn akhiezer_symmetric(m: usize, alpha: f64, x: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange { alpha });
    }
    let w = 1.0 - alpha * alpha;
    let l = w.powi(m as i32) / 2f64.powi(2 * m as i32 - 1);
    Ok((l * chebyshev_t(m, (2.0 * x * x - 1.0 - alpha * alpha) / w), l))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AkhiezerCase {
    E,
    H,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AkhiezerN4Report {
    pub case: AkhiezerCase,
    pub lambda0: f64,
    pub alpha: f64,
    /// Against `T₂` of the quadratic substitution.
    pub deviation: f64,
    /// Against `A₄(g⁻¹(s); α)`.
    pub a4_deviation: f64,
    /// Against the canonical quartic printed for this case.
    pub canonical_deviation: f64,
    /// Case H only: against the substitution as printed.
    pub printed_deviation: Option<f64>,
    /// Case E only: `p̂₈` against `T₄` of the same substitution.
    pub n8_deviation: Option<f64>,
}

impl AkhiezerN4Report {
    pub fn check(&self) -> Result<()> {
        let worst = [Some(self.deviation), Some(self.a4_deviation), self.n8_deviation]
            .into_iter()
            .flatten()
            .fold(0.0, f64::max);
        if worst < PROPORTIONALITY_TOL {
            Ok(())
        } else {
            Err(Error::MismatchBeyondTolerance {
                detail: format!("case {:?}: deviation {worst:e}", self.case),
            })
        }
    }
}

pub fn verify_akhiezer_n4(family: &ConfocalFamily, case: AkhiezerCase) -> Result<AkhiezerN4Report> {
    let (a, b) = (family.a(), family.b());
    let (lambda0, alpha, x_of_s): (f64, f64, Box<dyn Fn(f64) -> f64>) = match case {
        AkhiezerCase::E => {
            let hat = (a + b) / (2.0 * a * b);
            (a * b / (a + b), (a - b) / (a + b), Box::new(move |s| s / hat - 1.0))
        }
        AkhiezerCase::H => {
            if !(b < a / 2.0) {
                return Err(Error::CaseHInadmissible { a, b });
            }
            (a * b / (a - b), (a - 2.0 * b) / a, Box::new(move |s| 2.0 * b * s - 1.0))
        }
    };
    let w = move |s: f64| match case {
        AkhiezerCase::E => 2.0 * a * b * s * s - 2.0 * (a + b) * s + 1.0,
        AkhiezerCase::H => (2.0 * a * a * b * s * s - 2.0 * a * a * s + (a - b)) / (a - b),
    };
    let canonical = RealPoly::from_raw(match case {
        AkhiezerCase::E => vec![
            1.0,
            -8.0 * (a + b),
            8.0 * (a * a + 3.0 * a * b + b * b),
            -16.0 * a * b * (a + b),
            8.0 * a * a * b * b,
        ],
        AkhiezerCase::H => vec![
            32.0 * b.powi(9) * (b - 2.0 * a),
            64.0 * a * a * b.powi(4) * (b - a),
            16.0 * a * a * b * b * (a * a + a * b - b * b),
            -8.0 * a.powi(4) * b,
            a.powi(4),
        ],
    });
    let pair = pell_pair(family, lambda0, 4, Flavor::Periodic)?;
    let grid = chebyshev_grid(0.0, pair.config.c1, 64);
    let p = |s: f64| pair.p_hat.eval(s);
    let (_, deviation) = proportionality(p, |s| chebyshev_t(2, w(s)), &grid);
    let (_, a4_deviation) = proportionality(
        p,
        |s| akhiezer_symmetric(2, alpha, x_of_s(s)).map(|v| v.0).unwrap_or(f64::NAN),
        &grid,
    );
    let (_, canonical_deviation) = proportionality(p, |s| canonical.eval(s), &grid);
    let printed_deviation = (case == AkhiezerCase::H).then(|| {
        let k = 8.0 * b.powi(3) * (a - b);
        proportionality(
            p,
            |s| chebyshev_t(2, (a * a * s * s - 4.0 * a * a * b * s + k) / k),
            &grid,
        )
        .1
    });
    let n8_deviation = match case {
        AkhiezerCase::E => {
            let p8 = pell_pair(family, lambda0, 8, Flavor::Periodic)?;
            Some(proportionality(|s| p8.p_hat.eval(s), |s| chebyshev_t(4, w(s)), &grid).1)
        }
        AkhiezerCase::H => None,
    };
    Ok(AkhiezerN4Report {
        case,
        lambda0,
        alpha,
        deviation,
        a4_deviation,
        canonical_deviation,
        printed_deviation,
        n8_deviation,
    })
}

// -------------------------------------------------------- general Akhiezer

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AkhiezerParams {
    pub n: usize,
    pub m: usize,
    pub modulus: EllipticModulus,
    pub alpha: f64,
    pub beta: f64,
    /// Deviation on `[−1, α] ∪ [β, 1]`.
    #[serde(rename = "L")]
    pub l: f64,
    pub tau1_coeff: f64,
}

impl AkhiezerParams {
    pub fn new(n: usize, m: usize, kappa: f64) -> Result<Self> {
        if !(1..n).contains(&m) {
            return Err(Error::ParamOutOfRange {
                detail: format!("need 1 ≤ m ≤ n − 1, got n = {n}, m = {m}"),
            });
        }
        let md = EllipticModulus::new(kappa)?;
        let c = m as f64 * md.k / n as f64;
        let (sn, cn, dn) = jacobi_sn_cn_dn(c, kappa)?;
        let snc = jacobi_sn_cn_dn((n - m) as f64 * md.k / n as f64, kappa)?.0;
        let t0 = theta_functions(0.0, &md);
        let tc = theta_functions(c, &md);
        // the ratio enters with the power 2n
        let l = 0.5f64.powi(n as i32 - 1) * (t0.theta * t0.theta1 / (tc.theta * tc.theta1)).powi(2 * n as i32);
        let s2 = jacobi_sn_cn_dn(2.0 * c, kappa)?.0;
        let tau1_coeff = -1.0 + 2.0 * sn * cn / dn * (1.0 / s2 - log_deriv_theta(c, &md));
        Ok(Self {
            n,
            m,
            modulus: md,
            alpha: 1.0 - 2.0 * sn * sn,
            beta: 2.0 * snc * snc - 1.0,
            l,
            tau1_coeff,
        })
    }

    /// `TA_n(x) = (L/2)(vⁿ + v⁻ⁿ)` for `x ∈ [−1, α) ∪ [β, 1]`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let inside = (x >= -1.0 && x < self.alpha) || (x >= self.beta && x <= 1.0);
        if !inside {
            return Err(Error::ParamOutOfRange {
                detail: format!("x = {x} outside [−1, α) ∪ [β, 1]"),
            });
        }
        let md = &self.modulus;
        let c = self.m as f64 * md.k / self.n as f64;
        let zc = jacobi_sn_cn_dn(c, md.kappa)?.0.powi(2);
        let s = zc * (x + 1.0) / (x - 1.0 + 2.0 * zc);
        let u = u_from_sn2(s, md)?;
        Ok(0.5 * self.l * theta_power_sum(self.n, c, u, md))
    }

    /// `TA_n` interpolated at `n − m + 1` nodes in `[−1, α]` and `m` in `[β, 1]`.
    pub fn polynomial(&self) -> Result<RealPoly> {
        let mut xs = gauss_nodes(-1.0, self.alpha, self.n - self.m + 1);
        xs.extend(gauss_nodes(self.beta, 1.0, self.m));
        let ys = xs.iter().map(|&x| self.eval(x)).collect::<Result<Vec<_>>>()?;
        Ok(interpolate(&xs, &ys))
    }
}

pub fn akhiezer_general_ta(n: usize, m: usize, kappa: f64, x: f64) -> Result<f64> {
    AkhiezerParams::new(n, m, kappa)?.eval(x)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AkhiezerPnReport {
    pub n: usize,
    pub l: usize,
    pub case: AkhiezerCase,
    pub params: AkhiezerParams,
    /// Caustic implied by the interval geometry.
    pub lambda_geometric: f64,
    pub lambda_mismatch: f64,
    pub deviation: f64,
    /// `n = 4` only: residual of the printed relation between `t = a/b` and `κ`.
    pub t_relation_residual: Option<f64>,
}

impl AkhiezerPnReport {
    pub fn check(&self) -> Result<()> {
        if self.deviation < PROPORTIONALITY_TOL && self.lambda_mismatch < IDENTITY_TOL {
            Ok(())
        } else {
            Err(Error::MismatchBeyondTolerance {
                detail: format!(
                    "n = {}, l = {}: deviation {:e}, λ mismatch {:e}",
                    self.n, self.l, self.deviation, self.lambda_mismatch
                ),
            })
        }
    }
}

pub fn verify_akhiezer_pn(
    family: &ConfocalFamily,
    lambda0: f64,
    n: usize,
    l: usize,
    case: AkhiezerCase,
) -> Result<AkhiezerPnReport> {
    if !(2 * l < n && l >= 1) {
        return Err(Error::ParamOutOfRange {
            detail: format!("winding (n, 2l) = ({n}, {}) needs 0 < 2l < n", 2 * l),
        });
    }
    let m = n - 2 * l;
    let (a, b) = (family.a(), family.b());
    let t = a / b;
    let geom = |p: &AkhiezerParams| match case {
        AkhiezerCase::E => a * (p.alpha + 1.0) / 2.0,
        AkhiezerCase::H => 2.0 * b / (p.beta + 1.0),
    };
    let params = |k: f64| AkhiezerParams::new(n, m, k);
    let roots = match case {
        AkhiezerCase::E => solve_kappa(|k| {
            params(k)
                .map(|p| (p.beta + 1.0) / (p.alpha + 1.0) - t)
                .unwrap_or(f64::NAN)
        }),
        AkhiezerCase::H => solve_kappa(|k| params(k).map(|p| p.alpha - (2.0 * b / a - 1.0)).unwrap_or(f64::NAN)),
    };
    let best = roots
        .into_iter()
        .filter_map(|k| params(k).ok())
        .min_by(|p, q| (geom(p) - lambda0).abs().total_cmp(&(geom(q) - lambda0).abs()))
        .ok_or_else(|| Error::ParamOutOfRange {
            detail: format!("no modulus fits the intervals for n = {n}, m = {m}"),
        })?;
    let lambda_geometric = geom(&best);
    let ta = best.polynomial()?;
    let x_of_s = |s: f64| match case {
        AkhiezerCase::E => a * (best.alpha + 1.0) * s - 1.0,
        AkhiezerCase::H => 2.0 * b * s - 1.0,
    };
    let pair = pell_pair(family, lambda0, n, Flavor::Periodic)?;
    let config = interval_config(family, &family.caustic(lambda0))?;
    let grid = chebyshev_grid(0.0, config.c1, 64);
    let (_, deviation) = proportionality(|s| pair.p_hat.eval(s), |s| ta.eval(x_of_s(s)), &grid);
    let kp = best.modulus.kappa_prime();
    let t_relation_residual = (n == 4).then(|| match case {
        AkhiezerCase::E => t - 1.0 / kp,
        AkhiezerCase::H => t - (1.0 + kp) / kp,
    });
    Ok(AkhiezerPnReport {
        n,
        l,
        case,
        params: best,
        lambda_geometric,
        lambda_mismatch: (lambda_geometric - lambda0).abs(),
        deviation,
        t_relation_residual,
    })
}

// ---------------------------------------------------------- quintic modulus

/// `P(Z, s) = Σ P[p][q] Zᵖ s^q` relating `Z = sn²(K/5)` and `s = κ²`.
pub fn quintic_modulus_table() -> [[i64; 9]; 17] {
    let f: [&[(usize, i64)]; 9] = [
        &[(0, -1), (1, 16), (2, -64), (3, 64)],
        &[(2, -56), (3, 352), (4, -416)],
        &[(3, 144), (4, -1244), (5, 2160), (6, -1280), (7, 896), (8, -256)],
        &[(4, -160), (5, 2144), (6, -4744), (7, 4160), (8, -3264), (9, 1024)],
        &[
            (5, 64),
            (6, -1984),
            (7, 5360),
            (8, -5830),
            (9, 5360),
            (10, -1984),
            (11, 64),
        ],
        &[(12, -160), (11, 2144), (10, -4744), (9, 4160), (8, -3264), (7, 1024)],
        &[(13, 144), (12, -1244), (11, 2160), (10, -1280), (9, 896), (8, -256)],
        &[(14, -56), (13, 352), (12, -416)],
        &[(16, -1), (15, 16), (14, -64), (13, 64)],
    ];
    let mut t = [[0i64; 9]; 17];
    for (q, row) in f.iter().enumerate() {
        for &(p, c) in row.iter() {
            t[p][q] = c;
        }
    }
    t
}

pub fn quintic_modulus_eval(z: f64, s: f64) -> f64 {
    let t = quintic_modulus_table();
    let mut acc = 0.0;
    for (p, row) in t.iter().enumerate() {
        for (q, &c) in row.iter().enumerate() {
            acc += c as f64 * z.powi(p as i32) * s.powi(q as i32);
        }
    }
    acc
}
