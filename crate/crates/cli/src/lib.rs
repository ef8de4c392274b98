//! Sweeps, reports and output formatting behind the `locdim` command.

pub mod config;
pub mod output;
pub mod report;
pub mod sweep;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("output failed: {0}")]
    Output(String),
}

impl CliError {
    /// Process exit code: 2 for bad input, 3 for unmet hypotheses, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::InvalidConfig(_) => 2,
            CliError::Hypothesis(_) => 3,
            CliError::Output(_) => 1,
        }
    }
}

impl From<locdim_core::Error> for CliError {
    fn from(e: locdim_core::Error) -> Self {
        match e {
            locdim_core::Error::Hypothesis(msg) => CliError::Hypothesis(msg),
            other => CliError::InvalidConfig(other.to_string()),
        }
    }
}
