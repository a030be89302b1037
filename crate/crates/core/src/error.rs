//! Crate-wide error type and result alias.

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by this crate.
///
/// `Soundness` is special: it means a structure this crate *built itself*
/// violates one of its own guarantees. It should never fire; if it does,
/// the construction (not the caller) is wrong.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation
    /// (zero denominator, non-positive rational where positives are required, …).
    #[error("domain error: {0}")]
    Domain(String),

    /// Caller-supplied data is malformed (duplicate points, unknown index, …).
    #[error("input error: {0}")]
    Input(String),

    /// The request is valid but exceeds a configured resource bound.
    #[error("resource error: {0}")]
    Resource(String),

    /// Text could not be parsed as a rational / point list.
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal invariant of a constructed object failed. Never expected.
    #[error("soundness error: {0}")]
    Soundness(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
    pub fn soundness(msg: impl Into<String>) -> Self {
        Error::Soundness(msg.into())
    }
}
