use thiserror::Error;

/// Errors for all library operations.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("invalid input: {0}")]
    Input(String),
    /// A search or solve exceeded its configured budget.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    /// An internal consistency assertion failed.
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn resource_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Resource(msg.into()))
}
