use thiserror::Error;

/// Errors raised by constructors and builders when a precondition is violated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("zero polynomial is not accepted here")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("generator output rejected: {0}")]
    Rejected(String),
    #[error("generator gave up after {0} rejected samples")]
    GeneratorExhausted(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
