//! File formats and helpers behind the `biglide` command.

pub mod dataset_file;
pub mod records;

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: line {line}: {field}: {message}")]
    Parse {
        path: String,
        line: usize,
        field: String,
        message: String,
    },
    #[error("invalid dataset: {0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Model(#[from] biglide::Error),
}

impl IoError {
    /// Process exit code: 1 for rejected inputs, 2 for unreadable ones.
    pub fn exit_code(&self) -> i32 {
        match self {
            IoError::Validation(_) | IoError::Model(_) => 1,
            IoError::Parse { .. } | IoError::Io { .. } | IoError::Csv(_) => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        IoError::Io {
            path: path.into(),
            source,
        }
    }
}
