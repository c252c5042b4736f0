use thiserror::Error;

/// Failures mapped to process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// A check ran and failed.
    #[error("verification failed: {0}")]
    Verification(String),

    /// A result contradicts an invariant the implementation guarantees.
    #[error("internal invariant breached: {0}")]
    Internal(String),

    #[error("input error: {0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Internal(_) => 2,
            CliError::Input(_) => 3,
        }
    }
}

impl From<entrocone::Error> for CliError {
    fn from(e: entrocone::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
