//! Crate-wide error type.

use thiserror::Error;

/// Errors shared across the pipeline modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("interval endpoint {0} is a root; perturb the endpoint and retry")]
    RootAtEndpoint(String),

    #[error("invalid interval: require lo < hi")]
    EmptyInterval,

    #[error("projective point must have a nonzero coordinate")]
    AllZeroCoordinates,

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("projective dimension must be at least 2 (got {0})")]
    DimensionTooSmall(usize),

    #[error("point is indeterminate for J (at least two zero coordinates): {0}")]
    IndeterminateInput(String),

    #[error("L is not invertible")]
    SingularMatrix,

    #[error("invalid map or structure data: {0}")]
    InvalidInput(String),

    #[error("orbit list structure is inconsistent: {0}")]
    InconsistentStructure(String),

    #[error("map is not elementary: {0}")]
    NotElementary(String),

    #[error("singular chains cannot be regularized: {0}")]
    NotRegularizable(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("oracle line was degenerate after {0} reseed attempts")]
    DegenerateLine(usize),

    #[error("oracle runs with two seeds disagree: {first:?} vs {second:?}")]
    OracleDisagreement { first: Vec<u64>, second: Vec<u64> },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
