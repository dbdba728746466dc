use thiserror::Error;

use crate::graph::VertexSet;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex label {0} outside 1..=64")]
    LabelOutOfRange(usize),

    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("vertex {0} is not in the graph")]
    MissingVertex(usize),

    #[error("vertex {0} already present")]
    LabelCollision(usize),

    #[error("removing {0} would leave no vertices")]
    EmptyResult(VertexSet),

    #[error("{0} is not a cut set")]
    NotACutSet(VertexSet),

    #[error("graph must be connected")]
    Disconnected,

    #[error("{what}: {actual} exceeds limit {limit}")]
    SizeBound {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid field {0:?} (expected q or a prime)")]
    InvalidField(String),

    #[error("matrix entry ({row}, {col}) is out of range or duplicated")]
    MatrixEntry { row: usize, col: usize },

    #[error("checkpoint line {line} is corrupt: {reason}")]
    CorruptCheckpoint { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the error is a resource bound rather than bad input.
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::SizeBound { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
