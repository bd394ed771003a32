use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("subspace is not contained in the other")]
    NotContained,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid complex: {0}")]
    Invalid(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("linear system has no solution: {0}")]
    Unsolvable(String),
    #[error("not a mixed Hodge structure: {0}")]
    NotMhs(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("parse error at {path}: {msg}")]
    Parse { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape(msg: impl Into<String>) -> Error {
    Error::Shape(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
