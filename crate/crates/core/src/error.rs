use thiserror::Error;

/// Unified error type for the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch in {op}: {lhs:?} vs {rhs:?}")]
    Shape {
        op: &'static str,
        lhs: Vec<usize>,
        rhs: Vec<usize>,
    },

    #[error("insufficient history: time length {time} < kernel width {width}")]
    InsufficientHistory { time: usize, width: usize },

    #[error("softmax row {row} is fully masked")]
    DegenerateRow { row: usize },

    #[error("backward requires a scalar loss, got shape {shape:?}")]
    NonScalarLoss { shape: Vec<usize> },

    #[error("non-finite value at coordinate {coordinate} in {context}")]
    NonFinite { context: String, coordinate: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid data: {0}")]
    Data(String),

    #[error("training diverged at epoch {epoch} (learning rate {lr}): loss is not finite")]
    Divergence { epoch: usize, lr: f64 },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit code class: data problems are 3, numeric divergence 4,
    /// anything else 1. Usage errors (2) are the CLI parser's business.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Data(_) | Error::Io { .. } | Error::Parse { .. } => 3,
            Error::Divergence { .. } | Error::NonFinite { .. } => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
