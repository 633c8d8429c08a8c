//! Error type shared by every module of the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, KrError>;

/// All failure modes surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KrError {
    /// An unknown variant tag or otherwise unusable configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// A caller-supplied argument violates an operation's precondition.
    #[error("argument error: {0}")]
    Argument(String),
    /// The preconditions of a forward or backward move do not hold.
    #[error("move inapplicable: {0}")]
    MoveInapplicable(String),
    /// A part could not be assigned to any cluster.
    #[error("cluster decomposition error: {0}")]
    Decomposition(String),
    /// An internal inconsistency inside encode or decode. Always a bug.
    #[error("bijection integrity failure: {0}")]
    BijectionIntegrity(String),
    /// A negative q-exponent survived after combining Laurent factors.
    #[error("Laurent resolution error: {0}")]
    LaurentResolution(String),
    /// A series recipe is malformed or cannot be evaluated.
    #[error("recipe error: {0}")]
    Recipe(String),
}
