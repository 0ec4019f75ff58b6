use thiserror::Error;

use crate::graph::{VertexId, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {}", join(.0))]
    InvalidGraph(Vec<Violation>),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("permutation of size {found} applied where size {expected} is required")]
    PermutationSize { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("vertex {0} is not reachable from any graph input")]
    Unreachable(VertexId),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vertex {0} does not carry a P-label")]
    NotPVertex(VertexId),

    #[error("vertices {0} and {1} cannot be merged without creating a directed cycle")]
    NotMergeable(VertexId, VertexId),

    #[error("no assignment for label `{0}`")]
    UnassignedLabel(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("inconsistent index data: {0}")]
    Inconsistent(String),

    #[error("matrix is singular")]
    Singular,

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by malformed input documents rather than by the domain.
    pub fn is_malformed_input(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Json(_))
    }
}

fn join(violations: &[Violation]) -> String {
    violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}
