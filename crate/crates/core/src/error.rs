use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precision exhausted at position {position}: estimated relative error {estimate:e} exceeds tolerance {tolerance:e}")]
    PrecisionExhausted {
        position: usize,
        estimate: f64,
        tolerance: f64,
    },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
