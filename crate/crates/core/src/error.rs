use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An interval comparison could not be decided at the working precision.
    #[error("precision exhausted: {0}")]
    Precision(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A claim that should hold on a verified instance did not.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error("instance too large: {0}")]
    TooLarge(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
