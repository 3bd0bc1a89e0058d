//! Hankel conditions for periodic and elliptic-periodic trajectories, and
//! the search for caustics of a given period.
//!
//! Determinant schedules (coefficients of `B = √((a−x)(b−x)(λ₀−x))`,
//! `C = B/(λ₀−x)`, `D = B/(b−x)`), with `m = ⌊n/2⌋`:
//!
//! | condition            | n = 2m                 | n = 2m+1               |
//! |----------------------|------------------------|------------------------|
//! | periodic             | `B_{i+j+3}`, `m−1`     | `C_{i+j+2}`, `m`       |
//! | elliptic, ellipse    | `C_{i+j+1}`, `m`       | `B_{i+j+2}`, `m`       |
//! | elliptic, hyperbola  | `D_{i+j+1}`, `m`       | `B_{i+j+2}`, `m`       |
//! | elliptic, hyperbola′ | none                   | `D_{i+j+2}`, `m`       |
//!
//! Residuals are determinants of the rescaled coefficients
//! `c̃ₖ = cₖρᵏ/|c₀|`, `ρ = min(a, b, λ₀)`. Rescaling multiplies the raw
//! determinant by a positive constant, so zeros and signs are unchanged.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::billiard::{launch_tangent, simulate};
use crate::conics::{CausticKind, CausticParam, ConfocalFamily};
use crate::error::{Error, Result};
use crate::linalg::{det, hankel};
use crate::poly::RealPoly;
use crate::rotation::rotation_number;
use crate::series::CayleySeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    Periodic,
    /// Elliptic-periodic with an ellipse caustic.
    EllipticA,
    /// Elliptic-periodic with a hyperbola caustic.
    EllipticB,
    /// Elliptic-periodic with a hyperbola caustic, odd `n` only.
    EllipticC,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [
        Flavor::Periodic,
        Flavor::EllipticA,
        Flavor::EllipticB,
        Flavor::EllipticC,
    ];

    pub fn is_elliptic(self) -> bool {
        self != Flavor::Periodic
    }

    /// Which series, the index of the top-left entry, and the dimension.
    fn schedule(self, n: usize) -> (Series, usize, usize) {
        let m = n / 2;
        let even = n.is_multiple_of(2);
        match (self, even) {
            (Flavor::Periodic, true) => (Series::B, 3, m.saturating_sub(1)),
            (Flavor::Periodic, false) => (Series::C, 2, m),
            (Flavor::EllipticA, true) => (Series::C, 1, m),
            (Flavor::EllipticB, true) => (Series::D, 1, m),
            (Flavor::EllipticA | Flavor::EllipticB, false) => (Series::B, 2, m),
            (Flavor::EllipticC, _) => (Series::D, 2, m),
        }
    }

    fn applies(self, kind: CausticKind, n: usize) -> bool {
        match self {
            Flavor::Periodic => true,
            Flavor::EllipticA => kind == CausticKind::Ellipse,
            Flavor::EllipticB => kind == CausticKind::Hyperbola,
            Flavor::EllipticC => kind == CausticKind::Hyperbola && n % 2 == 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Series {
    B,
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodicityCondition {
    pub n: usize,
    pub flavor: Flavor,
    pub residual: f64,
    pub matrix_dim: usize,
    /// Set for odd `n` with a hyperbola caustic: such trajectories are never
    /// periodic, whatever the determinant says.
    pub excluded: bool,
}

impl PeriodicityCondition {
    pub fn holds(&self, tol: f64) -> bool {
        !self.excluded && self.residual.abs() <= tol
    }
}

/// Default truncation order for period `n`.
pub fn default_order(n: usize) -> usize {
    2 * n + 2
}

/// Rescaled coefficients `cₖρᵏ/|c₀|` of the requested series.
pub fn normalized_coeffs(family: &ConfocalFamily, lambda0: f64, series: Series, order: usize) -> Result<Vec<f64>> {
    let s = CayleySeries::new(family.a(), family.b(), lambda0, order)?;
    let raw = match series {
        Series::B => s.b,
        Series::C => s.c,
        Series::D => s.d,
    };
    let rho = family.a().min(family.b()).min(lambda0);
    let c0 = raw.coeff(0).abs();
    let mut scale = 1.0 / c0;
    Ok(raw
        .coeffs()
        .iter()
        .map(|&c| {
            let v = c * scale;
            scale *= rho;
            v
        })
        .collect())
}

fn evaluate(family: &ConfocalFamily, caustic: &CausticParam, n: usize, flavor: Flavor) -> Result<PeriodicityCondition> {
    let (series, offset, dim) = flavor.schedule(n);
    let coeffs = normalized_coeffs(family, caustic.lambda0, series, default_order(n))?;
    let residual = det(&hankel(&coeffs, offset, dim));
    Ok(PeriodicityCondition {
        n,
        flavor,
        residual,
        matrix_dim: dim,
        excluded: flavor == Flavor::Periodic && n % 2 == 1 && caustic.kind == CausticKind::Hyperbola,
    })
}

pub fn periodic_residual(family: &ConfocalFamily, lambda0: f64, n: usize) -> Result<PeriodicityCondition> {
    if n < 3 {
        return Err(Error::InvalidPeriod {
            n,
            what: "periodic condition (need n >= 3)",
        });
    }
    let c = family.caustic(lambda0);
    c.require_regular()?;
    evaluate(family, &c, n, Flavor::Periodic)
}

/// One condition per case that applies to the caustic type and parity.
pub fn elliptic_periodic_residual(
    family: &ConfocalFamily,
    lambda0: f64,
    n: usize,
) -> Result<Vec<PeriodicityCondition>> {
    if n < 2 {
        return Err(Error::InvalidPeriod {
            n,
            what: "elliptic-periodic condition (need n >= 2)",
        });
    }
    let c = family.caustic(lambda0);
    c.require_regular()?;
    [Flavor::EllipticA, Flavor::EllipticB, Flavor::EllipticC]
        .into_iter()
        .filter(|f| f.applies(c.kind, n))
        .map(|f| evaluate(family, &c, n, f))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    ClosedForm,
    RootScan,
}

/// A caustic of prescribed period.
///
/// For elliptic flavors `n` is the elliptic period and `winding` belongs to
/// the closed Cartesian trajectory, so `winding.0 = 2n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CausticSolution {
    pub lambda0: CausticParam,
    pub n: usize,
    pub flavor: Flavor,
    pub winding: (usize, usize),
    pub source: Source,
    pub rho: f64,
    /// Closure defect of a simulated trajectory after `winding.0` bounces.
    pub closure_residual: f64,
    /// Winding numbers counted by the simulator.
    pub simulated_winding: (usize, usize),
}

impl CausticSolution {
    /// `(τ₁, τ₂) = (m₀ − m₁ − 1, m₁ − 1)`.
    pub fn signature(&self) -> (usize, usize) {
        let (m0, m1) = self.winding;
        (m0 - m1 - 1, m1 - 1)
    }

    pub fn validated(&self) -> bool {
        self.closure_residual < 1e-7 && self.simulated_winding == self.winding
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    /// Grid points per interval.
    pub grid_density: usize,
    /// Bisection stops below this bracket width.
    pub x_tol: f64,
    /// Threshold for touching zeros without a sign change.
    pub touch_tol: f64,
    /// Phase used for the simulator cross-check.
    pub phase: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            grid_density: 10_000,
            x_tol: 1e-12,
            touch_tol: 1e-18,
            phase: 0.37,
        }
    }
}

/// Smallest Cartesian period of a trajectory with rotation number `m1/m0`.
/// Hyperbola caustics only admit even periods.
fn minimal_period(m0: usize, m1: usize, hyperbola: bool) -> usize {
    let g = m0.gcd(&m1);
    let (p, q) = (m1 / g, m0 / g);
    let n = if p % 2 == 0 { q } else { 2 * q };
    if hyperbola && n % 2 == 1 {
        2 * n
    } else {
        n
    }
}

/// Winding pair of a caustic whose trajectories close after `period`
/// reflections for the first time, or `None`.
fn classify_winding(
    family: &ConfocalFamily,
    caustic: &CausticParam,
    period: usize,
) -> Result<Option<(usize, usize, f64)>> {
    let rho = rotation_number(family, caustic.lambda0)?.rho;
    let x = rho * period as f64;
    let m1 = x.round();
    if (x - m1).abs() > 1e-6 || m1 < 1.0 {
        return Ok(None);
    }
    let m1 = m1 as usize;
    let hyperbola = caustic.kind == CausticKind::Hyperbola;
    if m1 % 2 == 1 || minimal_period(period, m1, hyperbola) != period {
        return Ok(None);
    }
    Ok(Some((period, m1, rho)))
}

fn solution(
    family: &ConfocalFamily,
    caustic: CausticParam,
    n: usize,
    flavor: Flavor,
    source: Source,
    phase: f64,
) -> Result<Option<CausticSolution>> {
    let period = if flavor.is_elliptic() { 2 * n } else { n };
    let Some((m0, m1, rho)) = classify_winding(family, &caustic, period)? else {
        return Ok(None);
    };
    let (p, d) = launch_tangent(family, &caustic, phase)?;
    let traj = simulate(family, &p, &d, m0)?;
    Ok(Some(CausticSolution {
        lambda0: caustic,
        n,
        flavor,
        winding: (m0, m1),
        source,
        rho,
        closure_residual: traj.closure_residual,
        simulated_winding: (traj.m0, traj.m1),
    }))
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64, x_tol: f64) -> f64 {
    while hi - lo > x_tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn golden_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, x_tol: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1).abs(), f(x2).abs());
    while hi - lo > x_tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1).abs();
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2).abs();
        }
    }
    0.5 * (lo + hi)
}

/// All zeros of `f` on `[lo, hi]` found by sign changes on a uniform grid,
/// plus touching zeros below `touch_tol`.
fn scan_interval(f: &(dyn Fn(f64) -> f64 + Sync), lo: f64, hi: f64, opts: &ScanOptions) -> Vec<f64> {
    let n = opts.grid_density.max(2);
    let xs: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    let ys: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect();
    let mut roots = Vec::new();
    for i in 0..n - 1 {
        if ys[i] == 0.0 {
            roots.push(xs[i]);
        } else if ys[i] * ys[i + 1] < 0.0 {
            roots.push(bisect(f, xs[i], xs[i + 1], ys[i], opts.x_tol));
        }
    }
    for i in 1..n - 1 {
        let (l, m, r) = (ys[i - 1].abs(), ys[i].abs(), ys[i + 1].abs());
        if m < l && m < r && m < opts.touch_tol && ys[i - 1] * ys[i + 1] > 0.0 {
            let x = golden_min(f, xs[i - 1], xs[i + 1], opts.x_tol);
            if f(x).abs() < opts.touch_tol {
                roots.push(x);
            }
        }
    }
    if ys[n - 1] == 0.0 {
        roots.push(xs[n - 1]);
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    roots
}

pub fn find_caustics(family: &ConfocalFamily, n: usize, flavor: Flavor) -> Result<Vec<CausticSolution>> {
    find_caustics_with(family, n, flavor, &ScanOptions::default())
}

pub fn find_caustics_with(
    family: &ConfocalFamily,
    n: usize,
    flavor: Flavor,
    opts: &ScanOptions,
) -> Result<Vec<CausticSolution>> {
    let min_n = if flavor.is_elliptic() { 2 } else { 3 };
    if n < min_n {
        return Err(Error::InvalidPeriod {
            n,
            what: "caustic search",
        });
    }
    let (a, b) = (family.a(), family.b());
    let guard = 1e-9 * (a - b);
    let mut intervals = Vec::new();
    if flavor.applies(CausticKind::Ellipse, n) {
        intervals.push((guard, b - guard));
    }
    if flavor.applies(CausticKind::Hyperbola, n) && !(flavor == Flavor::Periodic && n % 2 == 1) {
        intervals.push((b + guard, a - guard));
    }
    let (series, offset, dim) = flavor.schedule(n);
    let order = default_order(n);
    let f = move |l: f64| -> f64 {
        match normalized_coeffs(family, l, series, order) {
            Ok(c) => det(&hankel(&c, offset, dim)),
            Err(_) => f64::NAN,
        }
    };
    let mut out = Vec::new();
    for (lo, hi) in intervals {
        for root in scan_interval(&f, lo, hi, opts) {
            let c = family.caustic(root);
            if !c.is_regular() {
                continue;
            }
            if let Some(s) = solution(family, c, n, flavor, Source::RootScan, opts.phase)? {
                out.push(s);
            }
        }
    }
    out.sort_by(|x, y| x.lambda0.lambda0.total_cmp(&y.lambda0.lambda0));
    Ok(out)
}

/// Numerator of `C₃² − C₂C₄` (up to the positive factor `1024a⁵b⁵λ₀⁷`) as
/// a polynomial in `λ₀`.
pub fn quintic_condition_poly(a: f64, b: f64) -> RealPoly {
    let (ab, d) = (a * b, a - b);
    let d2 = d * d;
    RealPoly::new(vec![
        -5.0 * ab.powi(6),
        10.0 * ab.powi(5) * (a + b),
        ab.powi(4) * (9.0 * a * a - 34.0 * a * b + 9.0 * b * b),
        -36.0 * ab.powi(3) * d2 * (a + b),
        ab * ab * d2 * (29.0 * a * a + 54.0 * a * b + 29.0 * b * b),
        -2.0 * ab * d2 * (a + b) * (3.0 * a + b) * (a + 3.0 * b),
        -d2 * d2 * d2,
    ])
}

/// Explicit caustics for `n ∈ {3, 4, 5, 6}`.
pub fn closed_form_caustics(family: &ConfocalFamily, n: usize) -> Result<Vec<CausticSolution>> {
    let (a, b) = (family.a(), family.b());
    let ab = a * b;
    let mut lambdas: Vec<f64> = Vec::new();
    match n {
        3 => {
            // positive root of (a−b)²λ² + 2ab(a+b)λ − 3a²b²
            lambdas.push((-ab * (a + b) + 2.0 * ab * (a * a - ab + b * b).sqrt()) / (a - b).powi(2));
        }
        4 => {
            lambdas.push(ab / (a + b));
            if b < a / 2.0 {
                lambdas.push(ab / (a - b));
            }
        }
        5 => {
            lambdas.extend(
                quintic_condition_poly(a, b)
                    .real_roots(1e-9)
                    .into_iter()
                    .filter(|&l| l > 0.0 && l < b),
            );
        }
        6 => {
            let (sa, sb) = (a.sqrt(), b.sqrt());
            lambdas.push(ab / (sa + sb).powi(2));
            if a > 4.0 * b {
                lambdas.push(ab / (sa - sb).powi(2));
            }
            if a > 4.0 * b / 3.0 {
                lambdas.push((ab * (a - b) + 2.0 * ab * (a * (a - b)).sqrt()) / ((a - b) * (3.0 * a + b)));
            }
        }
        _ => return Err(Error::UnsupportedPeriod { n }),
    }
    let mut out = Vec::new();
    for l in lambdas {
        let c = family.caustic(l);
        if !c.is_regular() {
            continue;
        }
        if let Some(s) = solution(
            family,
            c,
            n,
            Flavor::Periodic,
            Source::ClosedForm,
            ScanOptions::default().phase,
        )? {
            out.push(s);
        }
    }
    out.sort_by(|x, y| x.lambda0.lambda0.total_cmp(&y.lambda0.lambda0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(a: f64, b: f64) -> ConfocalFamily {
        ConfocalFamily::new(a, b).unwrap()
    }

    #[test]
    fn schedules() {
        assert_eq!(Flavor::Periodic.schedule(3), (Series::C, 2, 1));
        assert_eq!(Flavor::Periodic.schedule(4), (Series::B, 3, 1));
        assert_eq!(Flavor::Periodic.schedule(5), (Series::C, 2, 2));
        assert_eq!(Flavor::Periodic.schedule(6), (Series::B, 3, 2));
        assert_eq!(Flavor::EllipticA.schedule(2), (Series::C, 1, 1));
        assert_eq!(Flavor::EllipticB.schedule(2), (Series::D, 1, 1));
        assert_eq!(Flavor::EllipticA.schedule(3), (Series::B, 2, 1));
        assert_eq!(Flavor::EllipticC.schedule(3), (Series::D, 2, 1));
    }

    #[test]
    fn minimal_periods() {
        assert_eq!(minimal_period(6, 4, false), 3);
        assert_eq!(minimal_period(6, 4, true), 6);
        assert_eq!(minimal_period(6, 2, false), 6);
        assert_eq!(minimal_period(4, 2, true), 4);
        assert_eq!(minimal_period(8, 4, false), 4);
    }

    #[test]
    fn residual_examples() {
        let f = fam(2.0, 1.0);
        let l3 = -6.0 + 4.0 * 3f64.sqrt();
        assert!(periodic_residual(&f, l3, 3).unwrap().residual.abs() < 1e-10);
        assert!(periodic_residual(&f, 2.0 / 3.0, 4).unwrap().residual.abs() < 1e-10);
        assert!(periodic_residual(&f, 0.5, 3).unwrap().residual.abs() > 1e-3);
        assert!(matches!(
            periodic_residual(&f, 1.0, 4),
            Err(Error::DegenerateCaustic { .. })
        ));
        assert!(periodic_residual(&f, 1.5, 3).unwrap().excluded);
    }

    #[test]
    fn elliptic_examples() {
        let f = fam(2.0, 1.0);
        let l = 2.0 / (2f64.sqrt() + 1.0).powi(2);
        let conds = elliptic_periodic_residual(&f, l, 3).unwrap();
        assert_eq!(conds.len(), 1);
        assert_eq!(conds[0].flavor, Flavor::EllipticA);
        assert!(conds[0].residual.abs() < 1e-10);

        let f = fam(4.5, 1.0);
        let l = 4.5 / (4.5f64.sqrt() - 1.0).powi(2);
        let conds = elliptic_periodic_residual(&f, l, 3).unwrap();
        let b = conds.iter().find(|c| c.flavor == Flavor::EllipticB).unwrap();
        assert!(b.residual.abs() < 1e-10);

        let f = fam(2.0, 1.0);
        let l = (2.0 + 4.0 * 2f64.sqrt()) / 7.0;
        let conds = elliptic_periodic_residual(&f, l, 3).unwrap();
        let c = conds.iter().find(|c| c.flavor == Flavor::EllipticC).unwrap();
        assert!(c.residual.abs() < 1e-10);
    }

    #[test]
    fn closed_forms_two_one() {
        let f = fam(2.0, 1.0);
        let s = closed_form_caustics(&f, 6).unwrap();
        let ls: Vec<f64> = s.iter().map(|c| c.lambda0.lambda0).collect();
        assert_eq!(ls.len(), 2);
        assert!((ls[0] - 2.0 / (2f64.sqrt() + 1.0).powi(2)).abs() < 1e-14);
        assert!((ls[1] - (2.0 + 4.0 * 2f64.sqrt()) / 7.0).abs() < 1e-14);
        assert!(matches!(
            closed_form_caustics(&f, 7),
            Err(Error::UnsupportedPeriod { n: 7 })
        ));
    }
}
