use thiserror::Error;

/// Errors surfaced by the algebra, scheme and codec layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("polynomial is not invertible")]
    NotInvertible,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("codeword generation exhausted its retry budget")]
    RetryExhausted,
    #[error("no counter value satisfied the kernel condition")]
    ThetaExhausted,
    #[error("malformed encoding: {0}")]
    Format(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
