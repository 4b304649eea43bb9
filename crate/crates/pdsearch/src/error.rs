use std::io;

/// Failures surfaced by the command line, each with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal invariant failure: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Internal(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<pdsearch_core::Error> for CliError {
    fn from(err: pdsearch_core::Error) -> Self {
        match err {
            pdsearch_core::Error::Size(_) | pdsearch_core::Error::Domain(_) => {
                CliError::Domain(err.to_string())
            }
            pdsearch_core::Error::Shape(_) => CliError::Internal(err.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Internal(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
