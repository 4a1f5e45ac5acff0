use crate::graph::ValidationReport;
use crate::operator::OperatorKind;

/// Errors produced by the walk simulator.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },

    #[error("edge list is empty")]
    EmptyInput,

    #[error("invalid graph: {0}")]
    InvalidGraph(ValidationReport),

    #[error("node {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("node {node} has degree zero")]
    ZeroDegree { node: usize },

    #[error("expected {expected} operator, got {found}")]
    KindMismatch {
        expected: OperatorKind,
        found: OperatorKind,
    },

    #[error("dense backend refused: {arcs} arcs exceeds cap of {cap}")]
    DenseCapExceeded { arcs: usize, cap: usize },

    #[error("operator is not unitary: max |U^dagger U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
