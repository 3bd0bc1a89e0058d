//! Confocal conics `x²/(a−λ) + y²/(b−λ) = 1` around the billiard table
//! `x²/a + y²/b = 1`.
//!
//! Ellipses correspond to `λ < b`, hyperbolas to `b < λ < a`; `λ = b` and
//! `λ = a` are the degenerate members (the x- and y-axis).

use nalgebra::Vector2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = Vector2<f64>;

/// Root separation (in λ) below which a point is treated as a focus.
pub const FOCUS_TOL: f64 = 1e-14;

/// Relative tolerance used to snap a caustic parameter onto `b` or `a`.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// The boundary ellipse, stored through the squares of its semi-axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfocalFamily {
    a: f64,
    b: f64,
}

impl ConfocalFamily {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > 0.0 && a > b) {
            return Err(Error::InvalidFamily { a, b });
        }
        Ok(Self { a, b })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Foci `(±√(a−b), 0)`.
    pub fn foci(&self) -> [Point; 2] {
        let f = (self.a - self.b).sqrt();
        [Point::new(f, 0.0), Point::new(-f, 0.0)]
    }

    /// Value of `x²/a + y²/b − 1`; zero on the boundary.
    #[inline]
    pub fn boundary_residual(&self, p: &Point) -> f64 {
        p.x * p.x / self.a + p.y * p.y / self.b - 1.0
    }

    /// Classify an arbitrary λ with the default tolerance.
    pub fn caustic(&self, lambda0: f64) -> CausticParam {
        CausticParam::classify(self, lambda0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausticKind {
    Ellipse,
    Hyperbola,
    /// The x-axis, `λ = b`.
    DegenerateX,
    /// The y-axis, `λ = a`.
    DegenerateY,
    /// `λ ≤ 0` or `λ > a`: no real trajectory inside the table.
    NonReal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CausticParam {
    pub lambda0: f64,
    pub kind: CausticKind,
}

impl CausticParam {
    pub fn classify(family: &ConfocalFamily, lambda0: f64) -> Self {
        let (a, b) = (family.a, family.b);
        let tol = DEGENERACY_TOL * a;
        let kind = if !lambda0.is_finite() || lambda0 <= 0.0 {
            CausticKind::NonReal
        } else if (lambda0 - b).abs() <= tol {
            CausticKind::DegenerateX
        } else if (lambda0 - a).abs() <= tol {
            CausticKind::DegenerateY
        } else if lambda0 < b {
            CausticKind::Ellipse
        } else if lambda0 < a {
            CausticKind::Hyperbola
        } else {
            CausticKind::NonReal
        };
        Self { lambda0, kind }
    }

    pub fn is_regular(&self) -> bool {
        matches!(self.kind, CausticKind::Ellipse | CausticKind::Hyperbola)
    }

    pub(crate) fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::DegenerateCaustic { lambda0: self.lambda0 })
        }
    }
}

/// Elliptic coordinates `λ₁ < λ₂` of a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticCoords {
    pub lambda1: f64,
    pub lambda2: f64,
}

/// The sorted endpoints of `{0, 1/a, 1/b, 1/λ₀}`: `c4 = 0 < c3 < c2 < c1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalConfig {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl IntervalConfig {
    /// `[c1, c2, c3, c4]`.
    pub fn as_array(&self) -> [f64; 4] {
        [self.c1, self.c2, self.c3, self.c4]
    }

    /// Monic quartic `s(s−c1)(s−c2)(s−c3)` in ascending coefficient order.
    pub fn quartic(&self) -> [f64; 5] {
        let (c1, c2, c3) = (self.c1, self.c2, self.c3);
        let e1 = c1 + c2 + c3;
        let e2 = c1 * c2 + c1 * c3 + c2 * c3;
        let e3 = c1 * c2 * c3;
        [0.0, -e3, e2, -e1, 1.0]
    }

    pub fn eval_quartic(&self, s: f64) -> f64 {
        s * (s - self.c1) * (s - self.c2) * (s - self.c3)
    }
}

/// The two confocal parameters through `point`.
///
/// They are the roots of `λ² − (a+b−x²−y²)λ + (ab − bx² − ay²) = 0`, whose
/// discriminant equals `(a−b−x²+y²)² + 4x²y²` and vanishes only at the foci.
pub fn elliptic_coords(family: &ConfocalFamily, point: &Point) -> Result<EllipticCoords> {
    let (a, b) = (family.a, family.b);
    let (x2, y2) = (point.x * point.x, point.y * point.y);
    let sum = a + b - x2 - y2;
    let prod = a * b - b * x2 - a * y2;
    let u = a - b - x2 + y2;
    let root = (u * u + 4.0 * x2 * y2).sqrt();
    if root < FOCUS_TOL {
        return Err(Error::FocusPoint { x: point.x, y: point.y });
    }
    // cancellation-free pairing of the two roots
    let (lambda1, lambda2) = if sum >= 0.0 {
        let hi = 0.5 * (sum + root);
        (prod / hi, hi)
    } else {
        let lo = 0.5 * (sum - root);
        (lo, prod / lo)
    };
    Ok(EllipticCoords { lambda1, lambda2 })
}

/// Caustic parameter of the line through `point` with direction `direction`.
///
/// With the line written as `px + qy = r`, `p² + q² = 1`, tangency to the
/// confocal conic reads `(a−λ)p² + (b−λ)q² = r²`, so `λ = ap² + bq² − r²`.
/// Lines through the origin need no special treatment in this form.
pub fn caustic_of_line(family: &ConfocalFamily, point: &Point, direction: &Vector2<f64>) -> Result<CausticParam> {
    let norm = direction.norm();
    if !(norm > 0.0) {
        return Err(Error::ParamOutOfRange {
            detail: "direction must be nonzero".into(),
        });
    }
    let (p, q) = (-direction.y / norm, direction.x / norm);
    let r = p * point.x + q * point.y;
    let lambda = family.a * p * p + family.b * q * q - r * r;
    Ok(CausticParam::classify(family, lambda))
}

pub fn interval_config(family: &ConfocalFamily, caustic: &CausticParam) -> Result<IntervalConfig> {
    let (a, b, l) = (family.a, family.b, caustic.lambda0);
    match caustic.kind {
        CausticKind::Ellipse => Ok(IntervalConfig {
            c1: 1.0 / l,
            c2: 1.0 / b,
            c3: 1.0 / a,
            c4: 0.0,
        }),
        CausticKind::Hyperbola => Ok(IntervalConfig {
            c1: 1.0 / b,
            c2: 1.0 / l,
            c3: 1.0 / a,
            c4: 0.0,
        }),
        _ => Err(Error::DegenerateCaustic { lambda0: l }),
    }
}
