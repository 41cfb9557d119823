use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] logdet_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("{0}")]
    Config(String),
}

impl CliError {
    /// 2 parse/config, 3 singular or not positive definite, 4 dimension
    /// mismatch.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(logdet_core::Error::SingularOrNotPd { .. }) => 3,
            CliError::Core(logdet_core::Error::DimensionMismatch { .. }) => 4,
            _ => 2,
        }
    }
}
