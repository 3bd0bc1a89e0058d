//! Periodic trajectories of billiards inside an ellipse.
//!
//! The crate decides periodicity through Hankel conditions on Taylor
//! coefficients, finds caustics of a given period, simulates trajectories,
//! builds polynomial Pell pairs, realizes the Zolotarev and Akhiezer
//! extremal polynomials and checks discriminant factorizations exactly.

// comparisons are negated on purpose so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod billiard;
pub mod cayley;
pub mod conics;
pub mod error;
pub mod exactalg;
pub mod extremal;
pub mod fixtures;
pub mod linalg;
pub mod pell;
pub mod poly;
pub mod rotation;
pub mod series;

pub use conics::{CausticKind, CausticParam, ConfocalFamily, IntervalConfig, Point};
pub use error::{Error, Result};
