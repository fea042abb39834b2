use std::path::PathBuf;

use thiserror::Error;

use crate::dataset::DataError;
use crate::pgm::PgmError;

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Data(#[from] DataError),
    #[error(transparent)]
    Image(#[from] PgmError),
    #[error(transparent)]
    Model(#[from] qnn_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {reason}")]
    Parse { path: PathBuf, reason: String },
    #[error("{0}")]
    Config(String),
}
