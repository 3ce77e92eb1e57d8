//! Crate-wide error type.

use alloc::string::String;
use thiserror::Error;

/// Errors reported by the engine's fallible operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two braid words that must live in the same braid group do not.
    #[error("strand-count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    /// A generator or strand index lies outside the valid range.
    #[error("index {index} out of range for {context} (strands = {strands})")]
    IndexOutOfRange {
        index: usize,
        strands: usize,
        context: &'static str,
    },

    /// A structural precondition failed (block ordering, parity, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exponent run is too large to expand on this machine.
    #[error("exponent {0} too large to expand")]
    ExponentTooLarge(String),

    /// Text input could not be parsed.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Two adjacent tangle elements do not fit together.
    #[error("inconsistent tangle sequence at junction {position}: lower target {below_target} != upper source {above_source}")]
    Inconsistent {
        position: usize,
        below_target: String,
        above_source: String,
    },

    /// A rewriting move was applied at a position where it is not legal.
    #[error("illegal move: {0}")]
    IllegalMove(String),

    /// An operation requiring a closed diagram received an open tangle.
    #[error("not a link: boundary is not empty")]
    NotALink,

    /// An operation requiring a knot received a multi-component link.
    #[error("not a knot: {components} components")]
    NotAKnot { components: usize },

    /// The crossing count exceeds the configured state-sum cap.
    #[error("crossing count {count} exceeds cap {cap}")]
    CrossingCapExceeded { count: usize, cap: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl core::fmt::Display) -> Self {
        Error::InvalidArgument(alloc::format!("{msg}"))
    }

    pub(crate) fn illegal(msg: impl core::fmt::Display) -> Self {
        Error::IllegalMove(alloc::format!("{msg}"))
    }
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;
