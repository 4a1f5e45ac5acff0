//! Classical simulation of the coinless (scattering) discrete-time quantum
//! walk on undirected graphs, node embeddings derived from it, and a
//! classical random-walk baseline.
//!
//! The walk lives on the arc space: each undirected edge `{i, j}` contributes
//! the basis states `|i,j>` and `|j,i>`. A step swaps the registers and then
//! reflects about the projected Markov-chain states `psi_i`.

pub mod baseline;
pub mod basis;
pub mod embedding;
pub mod error;
pub mod evolution;
pub mod fixtures;
pub mod graph;
pub mod laws;
pub mod linalg;
pub mod operator;

pub use basis::{arc_basis, node_state, qubit_count, ArcBasis, ArcStateVector, NodeStateVector};
pub use error::{Error, Result};
pub use graph::{
    adjacency_matrix, degrees, markov_chain, parse_edge_list, transition_matrix, validate,
    AdjacencyMatrix, DegreeVector, Graph, TransitionMatrix, ValidationReport,
};
pub use linalg::C64;
pub use operator::{
    apply_step, grover_reflection, phi_coefficients, projector, psi_state, swap_operator,
    walk_operator, walk_operator_with, Backend, Operator, OperatorKind, WalkOperator, WalkOptions,
    DEFAULT_DENSE_CAP,
};
