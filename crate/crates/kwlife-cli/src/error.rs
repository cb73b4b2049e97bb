//! Error type shared by the command-line layer.

use std::fmt;

/// Failure of a CLI operation, split by exit code.
///
/// Validation failures (bad flags, malformed input rows, impossible
/// parameter combinations) exit with code 1; operating-system level I/O
/// failures exit with code 2. Every variant renders as a single line.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// Process exit code for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
        }
    }

    /// Wrap an OS error with the path it concerns.
    pub fn io(action: &str, path: &std::path::Path, err: impl fmt::Display) -> CliError {
        CliError::Io(format!("cannot {action} {}: {err}", path.display()))
    }
}

impl From<kwlife_core::Error> for CliError {
    fn from(err: kwlife_core::Error) -> CliError {
        CliError::Validation(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
