use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("point is not on the shape (distance {distance:e})")]
    NotOnShape { distance: f64 },

    #[error("sample verification failed: achieved Hausdorff distance {achieved} (+{bound} discretization) is not below eps = {eps}")]
    VerificationFailed { achieved: f64, bound: f64, eps: f64 },

    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u32),

    #[error("row count mismatch: {0} vs {1}")]
    RowMismatch(usize, usize),

    #[error("filtration ordering violation at column {0}")]
    OrderingViolation(usize),

    #[error("pairs do not nest: need scale1 <= scale2 and radius2 <= radius1 (got {scale1}, {scale2}, {radius1}, {radius2})")]
    NestingViolation { scale1: f64, scale2: f64, radius1: f64, radius2: f64 },

    #[error("complex built to dimension {built}, degree {degree} needs {}", degree + 1)]
    InsufficientDimension { built: usize, degree: usize },

    #[error("infeasible scales: {reason} (deficit {deficit})")]
    Infeasible { reason: String, deficit: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
