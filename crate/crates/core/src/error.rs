use thiserror::Error;

/// Errors raised by group construction, set arithmetic and the verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: bad literal, non-positive order, index out of range.
    #[error("invalid input: {0}")]
    Spec(String),

    /// A precondition of an operation does not hold.
    #[error("contract violated: {0}")]
    Contract(String),

    /// A triple of sets fails the trio conditions.
    #[error("not a trio: {0}")]
    NotATrio(String),

    /// The requested work exceeds a configured bound.
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// A checked statement failed. Never expected; carries the witness.
    #[error("theorem violation: {0}")]
    Violation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
