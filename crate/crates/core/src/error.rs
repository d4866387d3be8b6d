use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid label stream: {0}")]
    InvalidStream(String),

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("invalid window {index}: {reason}")]
    InvalidWindow { index: usize, reason: String },

    #[error("invalid scenario config: {0}")]
    InvalidConfig(String),

    #[error(
        "insufficient audio: frame {frame} needs samples up to {needed}, track has {available}"
    )]
    InsufficientAudio {
        frame: usize,
        needed: usize,
        available: usize,
    },

    #[error("degenerate dataset: {0}")]
    DegenerateDataset(String),

    #[error("krippendorff's alpha is undefined: {0}")]
    UndefinedAlpha(String),

    #[error("parse error in {source_name} at line {line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("unsupported audio: {0}")]
    UnsupportedAudio(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(
        source_name: impl Into<String>,
        line: usize,
        message: impl ToString,
    ) -> Self {
        Error::Parse {
            source_name: source_name.into(),
            line,
            message: message.to_string(),
        }
    }

    /// Process exit code used by the command-line tool.
    ///
    /// 2 for I/O failures, 3 for everything that is wrong with the data itself.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            _ => 3,
        }
    }
}
