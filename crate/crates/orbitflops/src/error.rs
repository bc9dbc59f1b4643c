use thiserror::Error;

/// Library-wide error type.
///
/// `InvalidInput` covers precondition violations by the caller (bad partitions,
/// mismatched weights, unsupported sizes). `Invariant` signals that an internal
/// consistency check failed; it indicates a bug, not a user error, and maps to
/// a distinct exit code in the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violation: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
