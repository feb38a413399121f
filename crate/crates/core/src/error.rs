use thiserror::Error;

/// Errors raised by sequence generation, expansion, measure construction and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} is out of range for a user-supplied sequence of length {len}")]
    IndexOutOfRange { index: u64, len: u64 },

    #[error("index must be at least 1, got {0}")]
    ZeroIndex(u64),

    #[error("power exponent must lie strictly between 0 and 1, got {0}")]
    InvalidDelta(f64),

    #[error("exact rational arithmetic is unavailable for the {family} family")]
    UnsupportedMode { family: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(source_name: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            source_name: source_name.into(),
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
