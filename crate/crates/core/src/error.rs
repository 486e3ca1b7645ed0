use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates a precondition (dimension mismatch, out-of-range parameter).
    #[error("rejected input: {0}")]
    Rejected(String),
    /// A randomized construction exhausted its retry budget.
    #[error("generation failed: {0}")]
    Generation(String),
    /// An enumeration or memory cap would be exceeded.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// A claimed witness does not satisfy its instance.
    #[error("invalid witness: {0}")]
    Witness(String),
    /// Configuration is inconsistent (for example a failed parameter validator).
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn rejected(msg: impl Into<String>) -> Error {
    Error::Rejected(msg.into())
}

pub(crate) fn resource(msg: impl Into<String>) -> Error {
    Error::Resource(msg.into())
}
