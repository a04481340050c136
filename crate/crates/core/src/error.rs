use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the synthesis pipeline.
#[derive(Debug, Error)]
pub enum SynthError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid value for `{field}`: {message}")]
    InvalidRange { field: String, message: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("matrix is not unitary (max deviation of U^dag U from I is {max_deviation:e})")]
    NonUnitary { max_deviation: f64 },

    #[error("incompatible reports: {0}")]
    Incompatible(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error on {}: {message}", path.display())]
    Serialization { path: PathBuf, message: String },
}

impl SynthError {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        SynthError::Config(msg.into())
    }

    pub(crate) fn range(field: &str, message: impl Into<String>) -> Self {
        SynthError::InvalidRange {
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        SynthError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the CLI: 2 for configuration problems, 3 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            SynthError::Io { .. } | SynthError::Serialization { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, SynthError>;
