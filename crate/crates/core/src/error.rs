use thiserror::Error;

/// Errors raised by matroid construction, queries and searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {index} is out of range for a ground set of size {size}")]
    ElementOutOfRange { index: usize, size: usize },

    #[error("contracted and deleted sets overlap on {0}")]
    OverlappingMinor(String),

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    /// Whether the error comes from a resource cap rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
