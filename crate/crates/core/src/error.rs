use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no convergence after {iterations} iterations ({what})")]
    Convergence { what: &'static str, iterations: usize },
    #[error("value out of representable range: {0}")]
    Range(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
