use thiserror::Error;

use crate::format::FormatError;

/// Errors produced by the family operations, constructions and search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UcsError {
    #[error("universe size {m} outside 1..={max}")]
    Capacity { m: u32, max: u32 },

    #[error("set {set} has elements outside 1..={m}")]
    SetOutOfRange { set: String, m: u32 },

    #[error("element {element} outside 1..={m}")]
    ElementOutOfRange { element: u32, m: u32 },

    #[error("family has no non-empty member")]
    NoUniverse,

    #[error("{0}")]
    Domain(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("search budget of {budget} nodes exhausted; best upper bound {incumbent}")]
    Budget {
        budget: u64,
        incumbent: u32,
        witness: crate::Family,
    },

    #[error(transparent)]
    Format(#[from] FormatError),
}

impl UcsError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        UcsError::Domain(msg.into())
    }
}

pub type Result<T, E = UcsError> = std::result::Result<T, E>;
