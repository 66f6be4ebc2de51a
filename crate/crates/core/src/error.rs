use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("malformed game document: {0}")]
    MalformedGame(String),

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("difference vector violates the triangle relations")]
    OutsideSpace,

    #[error("size limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("empty polytope")]
    EmptyPolytope,

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
