//! Library backing the `fermi-loss` command-line tool; the commands are
//! exposed as functions so integration tests drive them in-process.

pub mod commands;
pub mod jsonfmt;
pub mod statefile;

use thiserror::Error;

/// Process exit codes: 0 success, 1 validation error, 2 suite failure,
/// 3 optimizer non-convergence.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("suite failed: {0}")]
    SuiteFailure(String),

    #[error("optimizer did not meet the residual tolerance")]
    NonConvergence,

    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Output(_) => 1,
            CliError::SuiteFailure(_) => 2,
            CliError::NonConvergence => 3,
        }
    }
}

impl From<fermi_loss::Error> for CliError {
    fn from(err: fermi_loss::Error) -> Self {
        CliError::Validation(err.to_string())
    }
}
