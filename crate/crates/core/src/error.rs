use thiserror::Error;

/// Errors raised by the numeric and exact kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {bad_row} has {len} entries")]
    NotSquare { rows: usize, bad_row: usize, len: usize },

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("exterior power degree {k} out of range for a {n}x{n} matrix")]
    DegreeOutOfRange { k: usize, n: usize },

    #[error("root finder did not converge after {iterations} iterations (last step {last_step:e})")]
    NoConvergence { iterations: usize, last_step: f64 },

    #[error("precision of {0} digits exceeds what double arithmetic can certify")]
    PrecisionUnsupported(u32),

    #[error("zero polynomial has no well-defined roots")]
    ZeroPolynomial,

    #[error("monodromy is not invertible over the integers (det = {0})")]
    NotUnimodular(String),

    #[error("orientation-reversing monodromy (det = -1) cannot be used with duality features")]
    OrientationReversing,

    #[error("invalid cohomology action: {0}")]
    InvalidAction(String),

    #[error("duality requested but not available: {0}")]
    DualityUnavailable(String),

    #[error("det(A^{m} - I) = 0: input has a root-of-unity eigenvalue, fixed-point count is infinite")]
    InfiniteFixedPoints { m: u64 },

    #[error("outside the convergence domain: {0}")]
    Divergent(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("numeric overflow while evaluating {0}")]
    Overflow(String),

    #[error("argument {0} is at a pole of the function")]
    AtPole(String),

    #[error("argument is at a zero of the product: {0}")]
    AtZero(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
