use std::path::Path;

use thiserror::Error;

/// CLI-level failures, each mapped to a distinct exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: CSV cells, config files, flag values.
    #[error("parse error: {0}")]
    Parse(String),

    /// Inputs parsed but violate a contract (ranges, shapes).
    #[error("validation error: {0}")]
    Validation(String),

    /// A tuning run found no parameter under the risk threshold.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// Reading or writing files failed.
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Infeasible(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> CliError {
        CliError::Io(format!("{}: {err}", path.display()))
    }
}

impl From<sdshuffle::Error> for CliError {
    fn from(err: sdshuffle::Error) -> Self {
        CliError::Validation(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
