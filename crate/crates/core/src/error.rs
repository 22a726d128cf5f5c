use alloc::string::String;

/// Errors raised by the exact algebra and the spectral solver.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("form degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("form degree {q} out of range for n = {n}")]
    DegreeOutOfRange { q: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("basis element {0} is the zero vector")]
    ZeroBasisElement(usize),
    #[error("empty basis")]
    EmptyBasis,
    #[error("Gram matrix is singular at pivot {0}")]
    SingularGram(usize),
    #[error("Gram matrix reciprocal condition estimate {0:e} is below threshold; lower the degree cap")]
    IllConditioned(f64),
    #[error("eigenvalue {value} lies {distance:e} from the nearest integer (tolerance {tolerance:e})")]
    OffInteger {
        value: f64,
        distance: f64,
        tolerance: f64,
    },
    #[error("degree cap {degree} exceeds {limit}; pass the large-degree override to proceed")]
    DegreeCapExceeded { degree: u32, limit: u32 },
    #[error("eigenpair residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualExceeded { residual: f64, tolerance: f64 },
    #[error("operator image leaves the truncated class: {0}")]
    LeavesSubspace(String),
    #[error("expected a real value, found {0}")]
    NotReal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
