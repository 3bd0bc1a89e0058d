//! Dense real polynomials, coefficients in ascending order.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Coefficients below this fraction of the largest are trimmed from the top.
pub const TRIM_REL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

impl RealPoly {
    /// Builds and trims. The zero polynomial is stored as `[0.0]`.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    /// No trimming; the caller vouches for the leading coefficient.
    pub fn from_raw(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `∏ (x − rᵢ)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots
            .iter()
            .fold(Self::constant(1.0), |acc, &r| acc.mul(&Self::from_raw(vec![-r, 1.0])))
    }

    fn trim(&mut self) {
        let scale = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().abs() <= TRIM_REL * scale {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(0.0);
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(0.0);
        }
        Self::from_raw(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_raw(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        Self::new((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::from_raw(out)
    }

    /// `xᵈ·p(1/x)` for `d ≥ deg p`.
    pub fn reversed(&self, d: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(d + 1, 0.0);
        c.reverse();
        Self::new(c)
    }

    /// `p(αx + β)`.
    pub fn compose_affine(&self, alpha: f64, beta: f64) -> Self {
        let lin = Self::from_raw(vec![beta, alpha]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::constant(0.0), |acc, &c| acc.mul(&lin).add(&Self::constant(c)))
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::constant(0.0), |acc, &c| acc.mul(q).add(&Self::constant(c)))
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dn = d.degree();
        let lc = d.leading();
        if self.degree() < dn {
            return (Self::constant(0.0), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0.0; self.degree() - dn + 1];
        for k in (0..quo.len()).rev() {
            let q = rem[k + dn] / lc;
            quo[k] = q;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= q * dc;
            }
        }
        rem.truncate(dn.max(1));
        (Self::from_raw(quo), Self::new(rem))
    }

    /// All complex roots as `(re, im)` from the companion matrix, with real
    /// ones polished by Newton's method.
    pub fn complex_roots(&self) -> Vec<(f64, f64)> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let lc = self.leading();
        let comp = DMatrix::from_fn(d, d, |i, j| {
            if i == 0 {
                -self.coeffs[d - 1 - j] / lc
            } else if i == j + 1 {
                1.0
            } else {
                0.0
            }
        });
        let eig = comp.complex_eigenvalues();
        let dp = self.derivative();
        let mut out: Vec<(f64, f64)> = eig
            .iter()
            .map(|z| {
                if z.im.abs() > 1e-9 * (1.0 + z.re.abs()) {
                    return (z.re, z.im);
                }
                (self.polish(&dp, z.re), 0.0)
            })
            .collect();
        out.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        out
    }

    fn polish(&self, dp: &Self, mut x: f64) -> f64 {
        for _ in 0..8 {
            let f = self.eval(x);
            let g = dp.eval(x);
            if g == 0.0 || !f.is_finite() {
                break;
            }
            let step = f / g;
            let next = x - step;
            if !(self.eval(next).abs() < f.abs()) {
                break;
            }
            x = next;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1e-300) {
                break;
            }
        }
        x
    }

    /// Sorted real roots, imaginary parts below `im_tol` accepted.
    pub fn real_roots(&self, im_tol: f64) -> Vec<f64> {
        self.complex_roots()
            .into_iter()
            .filter(|&(re, im)| im.abs() <= im_tol * (1.0 + re.abs()))
            .map(|(re, _)| re)
            .collect()
    }

    /// Max of `|p|` relative to the largest coefficient, for sizing tolerances.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }
}

/// Chebyshev–Lobatto points on `[lo, hi]`, both ends included.
pub fn chebyshev_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    (0..n)
        .map(|k| {
            let t = std::f64::consts::PI * k as f64 / (n - 1) as f64;
            mid - half * t.cos()
        })
        .collect()
}

/// Polynomial through `(xs[i], ys[i])` by solving the Vandermonde system in
/// a centered and scaled variable.
pub fn interpolate(xs: &[f64], ys: &[f64]) -> RealPoly {
    let n = xs.len();
    assert_eq!(n, ys.len());
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (mid, half) = (0.5 * (lo + hi), (0.5 * (hi - lo)).max(f64::MIN_POSITIVE));
    let v = DMatrix::from_fn(n, n, |i, j| ((xs[i] - mid) / half).powi(j as i32));
    let rhs = nalgebra::DVector::from_column_slice(ys);
    let sol = v.lu().solve(&rhs).expect("distinct interpolation nodes");
    RealPoly::from_raw(sol.iter().copied().collect()).compose_affine(1.0 / half, -mid / half)
}
