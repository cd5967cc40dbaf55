//! Crate-wide error type.

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Bad input data or arguments: shape mismatches, out-of-range values,
    /// unsupported scale factors, missing files, and the like.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Configuration file or flag problems (unknown keys, unparsable values).
    #[error("config error: {0}")]
    Config(String),

    /// A checkpoint file that cannot be read back: bad magic, truncated
    /// payload, or header/shape inconsistencies.
    #[error("corrupt checkpoint: {0}")]
    Checkpoint(String),

    /// Numerical failure during optimization (non-finite loss) or a failed
    /// gradient verification.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("image error on {path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Process exit code for the CLI: 1 for validation/input problems,
    /// 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numerical(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
