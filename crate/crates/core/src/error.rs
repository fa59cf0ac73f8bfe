//! Error type shared across the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, UcnpError>;

/// Errors produced by the physics and I/O layers.
#[derive(Debug, Clone, PartialEq)]
pub enum UcnpError {
    /// A precondition on the inputs was violated.
    InvalidInput(String),
    /// An iterative solve failed to converge; carries diagnostics.
    Convergence(String),
    /// The supplied density profiles produce no confining well.
    NonConfining(String),
    /// An implicit time step could not be completed at the requested dt.
    StepSize(String),
    /// Configuration file missing, unreadable or inconsistent.
    Config(String),
    /// Filesystem error while writing results.
    Io(String),
}

impl fmt::Display for UcnpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UcnpError::InvalidInput(m) => write!(f, "invalid input: {m}"),
            UcnpError::Convergence(m) => write!(f, "convergence failure: {m}"),
            UcnpError::NonConfining(m) => write!(f, "non-confining configuration: {m}"),
            UcnpError::StepSize(m) => write!(f, "step-size failure: {m}"),
            UcnpError::Config(m) => write!(f, "configuration error: {m}"),
            UcnpError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for UcnpError {}

impl From<std::io::Error> for UcnpError {
    fn from(e: std::io::Error) -> Self {
        UcnpError::Io(e.to_string())
    }
}

impl UcnpError {
    /// Process exit code used by the CLI: 2 for configuration problems,
    /// 3 for convergence failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            UcnpError::Config(_) | UcnpError::InvalidInput(_) => 2,
            UcnpError::Convergence(_) | UcnpError::StepSize(_) | UcnpError::NonConfining(_) => 3,
            _ => 1,
        }
    }
}
