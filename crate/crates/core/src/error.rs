//! The crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong in a forest, graph or sequence operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("handle refers to an erased element")]
    InvalidHandle,
    #[error("elements lie in different sequences")]
    DifferentSequences,
    #[error("range start follows range end")]
    BadRange,
    #[error("depth target {0} must be positive")]
    BadDepth(i32),
    #[error("vertices already lie in the same tree")]
    Cycle,
    #[error("vertex is not the root of its tree")]
    NotRoot,
    #[error("vertices lie in different trees")]
    DifferentTrees,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` already exists")]
    DuplicateVertex(String),
    #[error("self-loops are not allowed")]
    SelfLoop,
    #[error("{0} is not supported")]
    NotSupported(&'static str),
    #[error("{0} is undefined")]
    Undefined(&'static str),
    #[error("malformed tree: {0}")]
    MalformedTree(String),
}

impl Error {
    /// Short stable identifier, used by the script driver.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidHandle => "invalid-handle",
            Error::DifferentSequences | Error::DifferentTrees => "different-trees",
            Error::BadRange => "bad-range",
            Error::BadDepth(_) => "bad-depth",
            Error::Cycle => "cycle",
            Error::NotRoot => "not-root",
            Error::UnknownVertex(_) => "unknown-vertex",
            Error::DuplicateVertex(_) => "duplicate-vertex",
            Error::SelfLoop => "self-loop",
            Error::NotSupported(_) => "not-supported",
            Error::Undefined(_) => "undefined",
            Error::MalformedTree(_) => "malformed-tree",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
