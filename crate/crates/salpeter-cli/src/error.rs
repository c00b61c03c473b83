//! Error type shared by the command implementations.

use thiserror::Error;

/// Failure surfaced to the shell. Invalid input (configuration, flags, grid,
/// output destination) exits with code 2; a numerical failure on an otherwise
/// valid sweep exits with code 3.
#[derive(Debug, Error)]
pub enum CliError {
    /// The invocation itself is unusable.
    #[error("{0}")]
    Input(String),
    /// An operation failed while evaluating the sweep.
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    /// Shell exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}
