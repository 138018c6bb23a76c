use std::fmt;
use std::process::ExitCode;

/// Failure classes of a run, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    /// Malformed or inconsistent configuration (exit 2).
    Config(String),
    /// A module precondition failed (exit 3).
    Precondition(String),
    /// A quadrature step-halving check failed (exit 4).
    Accuracy(String),
    /// Writing the outputs failed (exit 1).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Accuracy(_) => 4,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Precondition(m) => write!(f, "precondition error: {m}"),
            CliError::Accuracy(m) => write!(f, "accuracy flag: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<brushlab_core::Error> for CliError {
    fn from(e: brushlab_core::Error) -> Self {
        match e {
            brushlab_core::Error::Accuracy { change, tolerance } => {
                CliError::Accuracy(format!("step halving changed the result by {change:e} (tolerance {tolerance:e})"))
            }
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
