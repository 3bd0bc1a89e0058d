//! Truncated power series and the coefficient families `B`, `C`, `D`.
//!
//! `B` expands `√((a−x)(b−x)(λ₀−x))` at `x = 0`, `C` is `B/(λ₀−x)` and `D`
//! is `B/(b−x)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    coeffs: Vec<f64>,
}

impl PowerSeries {
    /// Series truncated at order `n`; missing coefficients are zero.
    pub fn new(mut coeffs: Vec<f64>, n: usize) -> Self {
        coeffs.resize(n + 1, 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `xᵏ`. Panics past the truncation order.
    #[inline]
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.truncation_order().min(other.truncation_order());
        let mut out = vec![0.0; n + 1];
        for (i, &x) in self.coeffs[..=n].iter().enumerate() {
            for (j, &y) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        PowerSeries { coeffs: out }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// Square root of a polynomial with positive constant term, truncated at `n`.
///
/// Matching coefficients of `g² = f` gives `2g₀gₖ = fₖ − Σ_{j=1}^{k−1} gⱼgₖ₋ⱼ`.
pub fn sqrt_poly_series(f: &[f64], n: usize) -> Result<PowerSeries> {
    let f0 = f.first().copied().unwrap_or(0.0);
    if !(f0 > 0.0) {
        return Err(Error::NonPositiveParam {
            name: "f(0)",
            value: f0,
        });
    }
    let mut g = vec![0.0; n + 1];
    g[0] = f0.sqrt();
    for k in 1..=n {
        let fk = f.get(k).copied().unwrap_or(0.0);
        let conv: f64 = (1..k).map(|j| g[j] * g[k - j]).sum();
        g[k] = (fk - conv) / (2.0 * g[0]);
    }
    Ok(PowerSeries { coeffs: g })
}

/// Coefficients of `(a−x)(b−x)(λ₀−x)` in ascending order.
pub fn cubic_coeffs(a: f64, b: f64, lambda0: f64) -> [f64; 4] {
    [
        a * b * lambda0,
        -(a * b + a * lambda0 + b * lambda0),
        a + b + lambda0,
        -1.0,
    ]
}

/// The `B` series, principal branch `B₀ = +√(abλ₀)`.
pub fn sqrt_cubic_series(a: f64, b: f64, lambda0: f64, n: usize) -> Result<PowerSeries> {
    for (name, value) in [("a", a), ("b", b), ("lambda0", lambda0)] {
        if !(value > 0.0) {
            return Err(Error::NonPositiveParam { name, value });
        }
    }
    sqrt_poly_series(&cubic_coeffs(a, b, lambda0), n)
}

/// Coefficients of `series(x)/(root − x)`.
pub fn divide_by_linear(series: &PowerSeries, root: f64) -> Result<PowerSeries> {
    if root == 0.0 {
        return Err(Error::ZeroRoot);
    }
    let mut out = Vec::with_capacity(series.coeffs.len());
    let mut prev = 0.0;
    for &s in &series.coeffs {
        prev = (s + prev) / root;
        out.push(prev);
    }
    Ok(PowerSeries { coeffs: out })
}

/// The three coefficient families at one parameter point.
#[derive(Debug, Clone)]
pub struct CayleySeries {
    pub b: PowerSeries,
    pub c: PowerSeries,
    pub d: PowerSeries,
}

impl CayleySeries {
    pub fn new(a: f64, b: f64, lambda0: f64, n: usize) -> Result<Self> {
        let bs = sqrt_cubic_series(a, b, lambda0, n)?;
        let c = divide_by_linear(&bs, lambda0)?;
        let d = divide_by_linear(&bs, b)?;
        Ok(Self { b: bs, c, d })
    }
}
