use thiserror::Error;

/// Errors surfaced by the library. Preconditions are checked eagerly so
/// callers never receive partially built objects.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dense cap exceeded: {n_sites} sites (cap {cap})")]
    DenseCapExceeded { n_sites: usize, cap: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("inverse temperature must be >= 0, got {0}")]
    NegativeBeta(f64),

    #[error("operation requires the XY model, got {0}")]
    UnsupportedModel(String),

    #[error("unsupported factor: {0}")]
    UnsupportedFactor(String),

    #[error("operator support violation: {0}")]
    SupportViolation(String),

    #[error("data integrity: {0}")]
    DataIntegrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
