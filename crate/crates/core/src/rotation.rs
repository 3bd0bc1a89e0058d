//! Rotation numbers of the billiard map through Carlson's `R_F`.
//!
//! For a caustic `λ ∈ (0, a)`, `λ ≠ b`, with `e₁ < e₂ < e₃` the sorted
//! `{λ, b, a}`,
//!
//! ```text
//! ρ(λ) = ∫₀^{e₁} dt/√|(λ−t)(b−t)(a−t)|  /  ∫_{e₂}^{e₃} dt/√|(λ−t)(b−t)(a−t)|.
//! ```

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conics::{interval_config, CausticParam, ConfocalFamily};
use crate::error::{Error, Result};

/// Carlson's symmetric integral `R_F(x,y,z) = ½∫₀^∞ dt/√((t+x)(t+y)(t+z))`.
///
/// At most one argument may vanish. Duplication until the fifth-order
/// expansion is below double precision.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    debug_assert!(x >= 0.0 && y >= 0.0 && z >= 0.0);
    let (x0, y0) = (x, y);
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / 3.0;
    let mut q = (3.0 * f64::EPSILON).powf(-1.0 / 6.0) * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut a = a0;
    let mut pow4 = 1.0;
    while q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        q *= 0.25;
        pow4 *= 0.25;
    }
    let xx = (a0 - x0) / a * pow4;
    let yy = (a0 - y0) / a * pow4;
    let zz = -(xx + yy);
    let e2 = xx * yy - zz * zz;
    let e3 = xx * yy * zz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / a.sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotationResult {
    pub lambda: f64,
    pub rho: f64,
    pub quadrature_error: f64,
}

fn sorted_roots(family: &ConfocalFamily, lambda: f64) -> Result<(f64, f64, f64)> {
    let (a, b) = (family.a(), family.b());
    let tol = 1e-14 * a;
    if !(lambda > 0.0 && lambda < a) || (lambda - b).abs() <= tol || (lambda - a).abs() <= tol {
        return Err(Error::DegenerateLambda { lambda });
    }
    Ok((lambda.min(b), lambda.max(b), a))
}

pub fn rotation_number(family: &ConfocalFamily, lambda: f64) -> Result<RotationResult> {
    let (e1, e2, e3) = sorted_roots(family, lambda)?;
    let (p, q, y) = (e2 - e1, e3 - e1, e1);
    // ∫₀^{e₁}: substitute u = e₁ − t
    let num = 2.0 * y.sqrt() * carlson_rf(p * q, q * (p + y), p * (q + y));
    let den = 2.0 * carlson_rf(0.0, p, q);
    let rho = num / den;
    Ok(RotationResult {
        lambda,
        rho,
        quadrature_error: 8.0 * f64::EPSILON * rho,
    })
}

/// `∫_{c₁}^∞ ds/√P̂₄` and `∫_{c₃}^{c₂} ds/√|P̂₄|` for `P̂₄ = s(s−c₁)(s−c₂)(s−c₃)`.
pub fn period_integrals(family: &ConfocalFamily, caustic: &CausticParam) -> Result<(f64, f64)> {
    let cfg = interval_config(family, caustic)?;
    let (c1, c2, c3) = (cfg.c1, cfg.c2, cfg.c3);
    // infinite upper limit: factors s−c₁, s−c₂, s−c₃, s at y = c₁
    let (y2, y3, y4) = ((c1 - c2).sqrt(), (c1 - c3).sqrt(), c1.sqrt());
    let i_inf = 2.0 * carlson_rf((y3 * y4).powi(2), (y2 * y4).powi(2), (y2 * y3).powi(2));
    // finite interval: factors s, s−c₃, c₂−s, c₁−s on [c₃, c₂]
    let h = c2 - c3;
    let (x1, x2, x4) = (c2.sqrt(), h.sqrt(), (c1 - c2).sqrt());
    let (y1, y3, y4) = (c3.sqrt(), h.sqrt(), (c1 - c3).sqrt());
    let u12 = x1 * x2 * y3 * y4 / h;
    let u13 = y1 * y3 * x2 * x4 / h;
    let i_mid = 2.0 * carlson_rf(u12 * u12, u13 * u13, 0.0);
    Ok((i_inf, i_mid))
}

/// Relative defect of `m₀·I_∞ = m₁·I_mid`.
pub fn winding_identity_residual(family: &ConfocalFamily, lambda: f64, m0: usize, m1: usize) -> Result<f64> {
    let c = family.caustic(lambda);
    let (i_inf, i_mid) = period_integrals(family, &c)?;
    let lhs = m0 as f64 * i_inf;
    Ok((lhs - m1 as f64 * i_mid).abs() / lhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    EllipseSide,
    HyperbolaSide,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub side: Side,
    pub lambdas: Vec<f64>,
    pub rhos: Vec<f64>,
    pub increasing: bool,
}

/// Guard band kept away from the interval ends.
pub const SCAN_GUARD: f64 = 1e-6;

pub fn monotonicity_scan(family: &ConfocalFamily, side: Side, samples: usize) -> Result<MonotonicityReport> {
    if samples < 3 {
        return Err(Error::ParamOutOfRange {
            detail: format!("monotonicity scan needs at least 3 samples, got {samples}"),
        });
    }
    let (lo, hi) = match side {
        Side::EllipseSide => (SCAN_GUARD, family.b() - SCAN_GUARD),
        Side::HyperbolaSide => (family.b() + SCAN_GUARD, family.a() - SCAN_GUARD),
    };
    let lambdas: Vec<f64> = (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect();
    let rhos = lambdas
        .par_iter()
        .map(|&l| rotation_number(family, l).map(|r| r.rho))
        .collect::<Result<Vec<f64>>>()?;
    let increasing = rhos[1] > rhos[0];
    for (i, w) in rhos.windows(2).enumerate() {
        if (w[1] > w[0]) != increasing || w[1] == w[0] {
            return Err(Error::MonotonicityViolated { index: i + 1 });
        }
    }
    Ok(MonotonicityReport {
        side,
        lambdas,
        rhos,
        increasing,
    })
}
