use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("sentence {sentence}: {message}")]
    Tree { sentence: usize, message: String },

    #[error("sentence {sentence}: {message}")]
    Alignment { sentence: usize, message: String },

    #[error("invalid supertag distribution: {0}")]
    Distribution(String),

    #[error("illegal transition {transition}: {reason}")]
    IllegalTransition { transition: String, reason: String },

    #[error("oracle: {0}")]
    Oracle(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("pca: {0}")]
    Pca(String),

    #[error("pca: requested {requested} components but the data only has rank {rank}")]
    Rank { requested: usize, rank: usize },

    #[error("training: {0}")]
    Training(String),

    #[error("model: {0}")]
    Model(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error("serialization: {0}")]
    Serialization(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Serialization(err.to_string())
    }
}

impl From<bincode::Error> for Error {
    fn from(err: bincode::Error) -> Self {
        Error::Serialization(err.to_string())
    }
}
