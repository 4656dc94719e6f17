use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matching is not non-crossing: {0}")]
    NotNoncrossing(String),
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("site does not match the move: {0}")]
    BadSite(String),
    #[error("graph has no almost perfect matching")]
    Degenerate,
    #[error("point is not in the image: {0}")]
    NotInImage(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
