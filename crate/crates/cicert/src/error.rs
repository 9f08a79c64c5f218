//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by group construction, set expansion, verification and search.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("group order {order} exceeds the enumeration capacity ({cap})")]
    Capacity { order: u128, cap: u64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("family {label:?} is degenerate: expanded to {got} elements, expected {want}")]
    DegenerateFamily {
        label: String,
        got: usize,
        want: usize,
    },

    #[error("families {a:?} and {b:?} overlap in {count} elements")]
    FamilyOverlap { a: String, b: String, count: usize },

    #[error("connection set contains the identity")]
    IdentityInConnectionSet,

    #[error("undirected Cayley graph requires an inverse-closed connection set")]
    NotInverseClosed,

    #[error("graphs live on different groups")]
    GroupMismatch,

    #[error("unsupported operation: {0}")]
    Unsupported(&'static str),

    #[error("map is not a bijection")]
    NotBijective,

    #[error("matrix is singular mod {p}")]
    Singular { p: u8 },

    #[error("polynomial term invalid: {0}")]
    InvalidTerm(String),

    #[error("map does not act as a translation on block {block:?}")]
    NotBlockTranslation { block: Vec<u8> },

    #[error("cannot parse element expression {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("search family invalid: {0}")]
    InvalidFamily(String),

    #[error("candidate space {candidates} exceeds the search budget {budget}")]
    Budget { candidates: u128, budget: u64 },

    #[error("mutual-count table deviates from the expected values: {0}")]
    TableDeviation(String),

    #[error("preset invalid: {0}")]
    Preset(String),

    #[error("checkpoint rejected: preset hash {found} does not match {expected}")]
    CheckpointMismatch { expected: String, found: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
