use thiserror::Error;

/// Library error. `Domain` covers bad inputs, `Internal` a broken invariant.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("quadrature did not converge: estimate {estimate}, achieved error {achieved}")]
    Quadrature { estimate: f64, achieved: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
