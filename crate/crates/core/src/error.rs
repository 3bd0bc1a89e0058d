use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid ellipse parameters a = {a}, b = {b}: need a > b > 0")]
    InvalidFamily { a: f64, b: f64 },
    #[error("point ({x}, {y}) is a focus of the confocal family")]
    FocusPoint { x: f64, y: f64 },
    #[error("line passes through the origin")]
    LineThroughOrigin,
    #[error("degenerate caustic parameter {lambda0}")]
    DegenerateCaustic { lambda0: f64 },
    #[error("parameter {name} = {value} must be positive")]
    NonPositiveParam { name: &'static str, value: f64 },
    #[error("division by a linear factor with zero root")]
    ZeroRoot,
    #[error("period {n} is not supported here")]
    UnsupportedPeriod { n: usize },
    #[error("invalid period {n} for {what}")]
    InvalidPeriod { n: usize, what: &'static str },
    #[error("point ({x}, {y}) is not on the boundary (residual {residual:e})")]
    PointNotOnBoundary { x: f64, y: f64, residual: f64 },
    #[error("ray is tangent to the boundary")]
    TangentRay,
    #[error("tangent line misses the boundary")]
    NoIntersection,
    #[error("no kernel: smallest singular value {sigma_min:e} not separated (largest {sigma_max:e}, second {sigma_second:e})")]
    NoKernel {
        sigma_min: f64,
        sigma_second: f64,
        sigma_max: f64,
    },
    #[error("Pell residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("values of p at the interval endpoints do not form a valid pattern: {values:?}")]
    ValuePatternInvalid { values: [f64; 4] },
    #[error("alternance count mismatch: {detail}")]
    CountMismatch { detail: String },
    #[error("modulus {kappa} outside (0, 1)")]
    ModulusOutOfRange { kappa: f64 },
    #[error("alpha {alpha} outside (0, 1)")]
    AlphaOutOfRange { alpha: f64 },
    #[error("parameter out of range: {detail}")]
    ParamOutOfRange { detail: String },
    #[error("mismatch beyond tolerance: {detail}")]
    MismatchBeyondTolerance { detail: String },
    #[error("hyperbola case needs b < a/2 (a = {a}, b = {b})")]
    CaseHInadmissible { a: f64, b: f64 },
    #[error("lambda = {lambda} coincides with a branch point")]
    DegenerateLambda { lambda: f64 },
    #[error("rotation number is not monotone at sample {index}")]
    MonotonicityViolated { index: usize },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("leading coefficient vanishes")]
    ZeroLeading,
    #[error("example {id} failed at witness {witness}")]
    ExampleMismatch { id: String, witness: String },
    #[error("factor {factor} of example {id} is not homogeneous")]
    NonHomogeneousFactor { id: String, factor: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
