use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A covering or interval family violates its structural constraints.
    #[error("construction error: {0}")]
    Construction(String),
    /// A quadrature failed its step-halving check.
    #[error("accuracy flag: step halving changed the result by {change:e} (tolerance {tolerance:e})")]
    Accuracy { change: f64, tolerance: f64 },
    /// A computation would exceed a hard size cap and was refused.
    #[error("refused: {0}")]
    Refused(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
