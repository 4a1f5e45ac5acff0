//! The directed-arc basis `|i,j>` of the walk space and the vectors living in
//! it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::C64;

/// Norm tolerance for walk states.
pub const STATE_NORM_TOLERANCE: f64 = 1e-10;

/// Lexicographically ordered directed arcs of a graph.
///
/// Arcs leaving node `i` occupy the contiguous range [`ArcBasis::out_arcs`];
/// arcs entering it are listed by [`ArcBasis::in_arcs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcBasis {
    node_count: usize,
    arcs: Vec<(usize, usize)>,
    out_start: Vec<usize>,
    in_arcs: Vec<Vec<usize>>,
    reverse: Vec<usize>,
}

impl ArcBasis {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, index: usize) -> (usize, usize) {
        self.arcs[index]
    }

    /// Position of arc `(tail, head)`, if present.
    pub fn index(&self, tail: usize, head: usize) -> Option<usize> {
        if tail >= self.node_count {
            return None;
        }
        let range = self.out_arcs(tail);
        self.arcs[range.clone()]
            .binary_search(&(tail, head))
            .ok()
            .map(|k| range.start + k)
    }

    /// Indices of arcs `(node, *)`.
    pub fn out_arcs(&self, node: usize) -> std::ops::Range<usize> {
        self.out_start[node]..self.out_start[node + 1]
    }

    /// Indices of arcs `(*, node)`, ascending.
    pub fn in_arcs(&self, node: usize) -> &[usize] {
        &self.in_arcs[node]
    }

    /// Index of the reversed arc: `(i,j)` -> `(j,i)`.
    pub fn reverse(&self, index: usize) -> usize {
        self.reverse[index]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.out_start[node + 1] - self.out_start[node]
    }
}

/// Builds the arc basis: two arcs per undirected edge, sorted by (tail, head).
pub fn arc_basis(g: &Graph) -> ArcBasis {
    let n = g.node_count();
    let mut arcs: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect();
    arcs.sort_unstable();

    let mut out_start = vec![0usize; n + 1];
    let mut in_arcs = vec![Vec::new(); n];
    for (k, &(tail, head)) in arcs.iter().enumerate() {
        out_start[tail + 1] += 1;
        in_arcs[head].push(k);
    }
    for i in 0..n {
        out_start[i + 1] += out_start[i];
    }

    let mut basis = ArcBasis {
        node_count: n,
        arcs,
        out_start,
        in_arcs,
        reverse: Vec::new(),
    };
    basis.reverse = basis
        .arcs
        .iter()
        .map(|&(i, j)| basis.index(j, i).expect("undirected graph has both arc directions"))
        .collect();
    basis
}

/// Minimum qubits needed to index `n` nodes: `ceil(log2 n)`, with 1 node
/// needing none.
pub fn qubit_count(n: usize) -> u32 {
    assert!(n >= 1, "qubit_count needs at least one node");
    n.next_power_of_two().trailing_zeros()
}

/// One-hot node register state `|i>`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeStateVector(Vec<C64>);

impl NodeStateVector {
    pub fn amplitudes(&self) -> &[C64] {
        &self.0
    }
}

pub fn node_state(i: usize, n: usize) -> Result<NodeStateVector> {
    if i >= n {
        return Err(Error::NodeOutOfRange {
            node: i,
            node_count: n,
        });
    }
    let mut amps = vec![C64::new(0.0, 0.0); n];
    amps[i] = C64::new(1.0, 0.0);
    Ok(NodeStateVector(amps))
}

/// Complex amplitudes indexed by [`ArcBasis`] positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcStateVector {
    amplitudes: Vec<C64>,
}

impl ArcStateVector {
    /// Wraps amplitudes, requiring unit norm within [`STATE_NORM_TOLERANCE`].
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let state = Self { amplitudes };
        let norm = state.norm();
        if (norm - 1.0).abs() > STATE_NORM_TOLERANCE {
            return Err(Error::InvalidInput(format!("state norm {norm} is not 1")));
        }
        Ok(state)
    }

    pub(crate) fn from_unchecked(amplitudes: Vec<C64>) -> Self {
        Self { amplitudes }
    }

    /// The basis state concentrated on one arc.
    pub fn basis_state(basis: &ArcBasis, arc: usize) -> Self {
        let mut amplitudes = vec![C64::new(0.0, 0.0); basis.len()];
        amplitudes[arc] = C64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &ArcStateVector) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
