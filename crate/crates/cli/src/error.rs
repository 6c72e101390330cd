use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("resource limit: {0}")]
    Resource(String),

    /// The scenario ran but its checked bound failed.
    #[error("assertion failed: {0}")]
    Assertion(String),

    #[error("computation failed: {0}")]
    Compute(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Assertion(_) => 1,
            CliError::Config(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Compute(_) | CliError::Io(_) => 4,
        })
    }
}

impl From<wwlab_core::Error> for CliError {
    fn from(e: wwlab_core::Error) -> Self {
        match e {
            wwlab_core::Error::Resource(msg) => CliError::Resource(msg),
            other => CliError::Compute(other.to_string()),
        }
    }
}
