use thiserror::Error;

use crate::pages::Page;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed token {token:?} at position {position} (expected [abcdx][012])")]
    Token { token: String, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApplyError {
    #[error("relation side {side} does not occur at position {pos}")]
    NoMatch { side: String, pos: usize },
}

/// Why a word is not a closed 3-page embedding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    /// An arc-end in `page` at letter `position` has no partner.
    #[error("unbalanced arcs in page {page} at letter {position}")]
    Unbalanced { page: Page, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("word contains singular letter {letter} at position {position}; expected a classical word")]
    Singular { letter: String, position: usize },
    #[error("singular letter {letter} at position {position} has all four branches in one half-plane")]
    FlatSingular { letter: String, position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("diagram has {crossings} crossings, above the cap of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("cannot read diagram: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("no admissible axis path found: {0}")]
    NoPath(String),
}
