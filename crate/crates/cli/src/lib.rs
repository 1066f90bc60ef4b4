//! Command-line frontend for dpsplit: input documents, report builders and exit codes.

pub mod commands;
pub mod document;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(dpsplit::Error),
    #[error("io error: {0}")]
    Io(String),
}

impl From<dpsplit::Error> for CliError {
    fn from(e: dpsplit::Error) -> Self {
        match e {
            dpsplit::Error::Parse { .. } => CliError::Parse(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
