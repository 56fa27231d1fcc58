use thiserror::Error;

/// Errors raised by the martkit kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("vectors must have at least one component")]
    EmptyVector,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("outcome index {index} out of range for universe of size {size}")]
    OutOfRange { index: usize, size: usize },

    #[error("universe size mismatch: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },

    #[error("horizon mismatch: {left} vs {right}")]
    HorizonMismatch { left: usize, right: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("negative weight {weight} at outcome {outcome}")]
    NegativeWeight { outcome: String, weight: String },

    #[error("order relations need scalar values, got dimension {dim}")]
    UnsupportedOrder { dim: usize },

    #[error("{op} is only supported for scalar values, got dimension {dim}")]
    UnsupportedDimension { op: &'static str, dim: usize },

    #[error("event enumeration over {size} elements exceeds the cap of {cap}")]
    Capacity { size: usize, cap: usize },

    #[error("measure is not a probability measure (total mass {total})")]
    NotProbability { total: String },

    #[error("filtration is not monotone: F_{earlier} is not contained in F_{later}")]
    NotMonotone { earlier: usize, later: usize },

    #[error("process is not adapted at time {time}")]
    NotAdapted { time: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid workspace: {0}")]
    Workspace(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
