//! Graph ingestion and the classical matrices derived from it.
//!
//! A [`Graph`] is an undirected simple graph on nodes `0..node_count`. The
//! adjacency matrix, degree vector and row-stochastic transition matrix are
//! all computed from its edge set.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Undirected simple graph with 0-based node ids.
///
/// Edges are stored once each as `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list, collapsing duplicate undirected edges.
    ///
    /// Out-of-range endpoints and isolated nodes are accepted here and
    /// reported by [`validate`]; self-loops are rejected outright.
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop on node {u}")));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        normalized.dedup();
        Ok(Self {
            node_count,
            edges: normalized,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Returns `Err(Error::InvalidGraph)` unless [`validate`] finds nothing.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = validate(self);
        if report.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(report))
        }
    }

    /// Relabels node `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.node_count {
            return Err(Error::DimensionMismatch {
                expected: self.node_count,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidInput("relabeling is not a permutation".into()));
            }
        }
        Self::new(
            self.node_count,
            self.edges.iter().map(|&(u, v)| (perm[u], perm[v])),
        )
    }
}

/// Parses the line-oriented edge-list format: one `u v` pair per line,
/// `#` comments and blank lines ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_id = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected two node ids, found {} fields", tokens.len()),
            });
        }
        let parse_id = |tok: &str| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("invalid node id '{tok}'"),
            })
        };
        let u = parse_id(tokens[0])?;
        let v = parse_id(tokens[1])?;
        if u == v {
            return Err(Error::SelfLoop { line, node: u });
        }
        max_id = max_id.max(u).max(v);
        edges.push((u, v));
    }

    if edges.is_empty() {
        return Err(Error::EmptyInput);
    }
    Graph::new(max_id + 1, edges)
}

/// Findings from [`validate`]. An empty report means the graph is accepted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub isolated: Vec<usize>,
    pub out_of_range: Vec<usize>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.isolated.is_empty() && self.out_of_range.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.isolated.is_empty() {
            parts.push(format!("isolated nodes {:?}", self.isolated));
        }
        if !self.out_of_range.is_empty() {
            parts.push(format!("out-of-range node ids {:?}", self.out_of_range));
        }
        if parts.is_empty() {
            write!(f, "no findings")
        } else {
            write!(f, "{}", parts.join("; "))
        }
    }
}

/// Reports isolated nodes and endpoints outside `0..node_count`.
///
/// Connectivity is not required.
pub fn validate(g: &Graph) -> ValidationReport {
    let n = g.node_count;
    let mut degree = vec![0usize; n];
    let mut out_of_range = Vec::new();
    for &(u, v) in &g.edges {
        for w in [u, v] {
            if w < n {
                degree[w] += 1;
            } else {
                out_of_range.push(w);
            }
        }
    }
    out_of_range.sort_unstable();
    out_of_range.dedup();
    ValidationReport {
        isolated: (0..n).filter(|&v| degree[v] == 0).collect(),
        out_of_range,
    }
}

/// Symmetric 0/1 adjacency matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl AdjacencyMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        Self { n, entries }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Adjacency matrix of a validated graph.
///
/// # Panics
/// If an edge endpoint is out of range; call [`Graph::ensure_valid`] first.
pub fn adjacency_matrix(g: &Graph) -> AdjacencyMatrix {
    let n = g.node_count;
    let mut entries = vec![0u8; n * n];
    for &(u, v) in &g.edges {
        entries[u * n + v] = 1;
        entries[v * n + u] = 1;
    }
    AdjacencyMatrix { n, entries }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeVector(pub Vec<usize>);

impl DegreeVector {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Maps each degree value to the number of nodes having it.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for &d in &self.0 {
            *hist.entry(d).or_insert(0) += 1;
        }
        hist
    }
}

/// Column sums of `a` (equal to row sums, `a` being symmetric).
pub fn degrees(a: &AdjacencyMatrix) -> DegreeVector {
    let n = a.n;
    let mut d = vec![0usize; n];
    for i in 0..n {
        for (j, dj) in d.iter_mut().enumerate() {
            *dj += a.get(i, j) as usize;
        }
    }
    DegreeVector(d)
}

/// Row-stochastic Markov matrix, `P[i][j] = A[i][j] / d[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }
}

pub fn transition_matrix(a: &AdjacencyMatrix, d: &DegreeVector) -> Result<TransitionMatrix> {
    let n = a.n;
    if d.0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.0.len(),
        });
    }
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        let di = d.0[i];
        if di == 0 {
            return Err(Error::ZeroDegree { node: i });
        }
        let inv = 1.0 / di as f64;
        for j in 0..n {
            if a.get(i, j) == 1 {
                entries[i * n + j] = inv;
            }
        }
    }
    Ok(TransitionMatrix { n, entries })
}

/// Adjacency, degrees and transition matrix of a validated graph in one call.
pub fn markov_chain(g: &Graph) -> Result<(AdjacencyMatrix, DegreeVector, TransitionMatrix)> {
    g.ensure_valid()?;
    let a = adjacency_matrix(g);
    let d = degrees(&a);
    let p = transition_matrix(&a, &d)?;
    Ok((a, d, p))
}
