use thiserror::Error;

/// Errors raised by domain, map, bound and certification operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point or map does not have the dimension the operation requires.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A caller-side precondition does not hold.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// Input data is structurally invalid (bad shape, asymmetric matrix, bad field).
    #[error("malformed input: {0}")]
    MalformedInput(String),

    /// A scalar argument is outside the range the operation accepts.
    #[error("out of range: {0}")]
    Range(String),

    /// The operation has no implementation for this kind of domain.
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    /// The map does not provide what the operation needs (usually an inverse).
    #[error("unsupported map: {0}")]
    UnsupportedMap(String),

    /// Bound rules produced an empty intersection.
    #[error("inconsistent bounds: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
