//! Projector, reflection, swap and walk operators on the arc space.
//!
//! One walk step swaps the two registers and then reflects about the span of
//! the projected node states:
//!
//! ```text
//! |i,j>  ->  (2/d_j - 1) |j,i>  +  (2/d_j) * sum_{k != i, k ~ j} |j,k>
//! ```
//!
//! The dense backend assembles this as the matrix product `(2Π - I) · S` from
//! outer products; the sparse backend writes the coefficients above directly.
//! The two routes are independent and are cross-checked in tests.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basis::{arc_basis, ArcBasis, ArcStateVector};
use crate::error::{Error, Result};
use crate::graph::{markov_chain, Graph, TransitionMatrix};
use crate::laws;
use crate::linalg::{DenseMatrix, SparseMatrix, C64};

/// Default arc-count ceiling for the dense backend.
pub const DEFAULT_DENSE_CAP: usize = 4096;

/// Tolerance of the construction-time unitarity check.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Projector,
    Reflection,
    Swap,
    Walk,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Projector => "projector",
            Self::Reflection => "reflection",
            Self::Swap => "swap",
            Self::Walk => "walk",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Dense,
    #[default]
    Sparse,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Dense => "dense",
            Self::Sparse => "sparse",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Self::Dense),
            "sparse" => Ok(Self::Sparse),
            other => Err(Error::InvalidInput(format!("unknown backend '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Matrix {
    Dense(DenseMatrix),
    Sparse(SparseMatrix),
}

/// A square operator on the arc space, tagged with what it represents.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    pub kind: OperatorKind,
    pub matrix: Matrix,
}

impl Operator {
    pub fn dim(&self) -> usize {
        match &self.matrix {
            Matrix::Dense(m) => m.dim(),
            Matrix::Sparse(m) => m.dim(),
        }
    }

    pub fn backend(&self) -> Backend {
        match self.matrix {
            Matrix::Dense(_) => Backend::Dense,
            Matrix::Sparse(_) => Backend::Sparse,
        }
    }

    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        match &self.matrix {
            Matrix::Dense(m) => m.apply(x),
            Matrix::Sparse(m) => m.apply(x),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match &self.matrix {
            Matrix::Dense(m) => m.clone(),
            Matrix::Sparse(m) => m.to_dense(),
        }
    }

    /// Sparse view; dense matrices drop their exact zeros.
    pub fn to_sparse(&self) -> SparseMatrix {
        match &self.matrix {
            Matrix::Dense(m) => m.to_sparse(),
            Matrix::Sparse(m) => m.clone(),
        }
    }
}

/// Coefficients `sqrt(P[i][j])` of the row state of node `i`, as
/// `(j, coefficient)` over neighbors `j` in ascending order.
pub fn phi_coefficients(p: &TransitionMatrix, i: usize) -> Result<Vec<(usize, f64)>> {
    if i >= p.size() {
        return Err(Error::NodeOutOfRange {
            node: i,
            node_count: p.size(),
        });
    }
    Ok(p.row(i)
        .iter()
        .enumerate()
        .filter(|(_, &pij)| pij > 0.0)
        .map(|(j, &pij)| (j, pij.sqrt()))
        .collect())
}

/// Projected state `psi_i = sum_j sqrt(P[i][j]) |i,j>`.
pub fn psi_state(basis: &ArcBasis, p: &TransitionMatrix, i: usize) -> Result<ArcStateVector> {
    let mut amps = vec![C64::new(0.0, 0.0); basis.len()];
    for (j, c) in phi_coefficients(p, i)? {
        let k = basis.index(i, j).ok_or_else(|| {
            Error::InvalidInput(format!("transition ({i},{j}) has no arc in the basis"))
        })?;
        amps[k] = C64::new(c, 0.0);
    }
    ArcStateVector::new(amps)
}

/// `Π = sum_i |psi_i><psi_i|`, dense, built from outer products.
pub fn projector(basis: &ArcBasis, p: &TransitionMatrix) -> Result<Operator> {
    let mut m = DenseMatrix::zeros(basis.len());
    for_each_psi_outer_product(basis, p, |r, c, v| m.add_to(r, c, v))?;
    Ok(Operator {
        kind: OperatorKind::Projector,
        matrix: Matrix::Dense(m),
    })
}

/// Sparse counterpart of [`projector`].
pub fn projector_sparse(basis: &ArcBasis, p: &TransitionMatrix) -> Result<Operator> {
    let mut triplets = Vec::new();
    for_each_psi_outer_product(basis, p, |r, c, v| triplets.push((r, c, v)))?;
    Ok(Operator {
        kind: OperatorKind::Projector,
        matrix: Matrix::Sparse(SparseMatrix::from_triplets(basis.len(), triplets)),
    })
}

fn for_each_psi_outer_product(
    basis: &ArcBasis,
    p: &TransitionMatrix,
    mut sink: impl FnMut(usize, usize, C64),
) -> Result<()> {
    for i in 0..basis.node_count() {
        let psi = psi_state(basis, p, i)?;
        let support: Vec<(usize, C64)> = basis
            .out_arcs(i)
            .map(|k| (k, psi.amplitudes()[k]))
            .collect();
        for &(r, a) in &support {
            for &(c, b) in &support {
                sink(r, c, a * b.conj());
            }
        }
    }
    Ok(())
}

/// `G = 2Π - I`.
pub fn grover_reflection(pi: &Operator) -> Result<Operator> {
    if pi.kind != OperatorKind::Projector {
        return Err(Error::KindMismatch {
            expected: OperatorKind::Projector,
            found: pi.kind,
        });
    }
    let matrix = match &pi.matrix {
        Matrix::Dense(m) => Matrix::Dense(m.clone().scale_shift(2.0, -1.0)),
        Matrix::Sparse(m) => Matrix::Sparse(m.combine(2.0, &SparseMatrix::identity(m.dim()), -1.0)),
    };
    Ok(Operator {
        kind: OperatorKind::Reflection,
        matrix,
    })
}

/// Permutation `S|i,j> = |j,i>`, sparse.
pub fn swap_operator(basis: &ArcBasis) -> Operator {
    let one = C64::new(1.0, 0.0);
    let triplets = (0..basis.len()).map(|k| (basis.reverse(k), k, one));
    Operator {
        kind: OperatorKind::Swap,
        matrix: Matrix::Sparse(SparseMatrix::from_triplets(basis.len(), triplets)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkOptions {
    pub dense_cap: usize,
    /// Run the unitarity check after construction.
    pub verify: bool,
}

impl Default for WalkOptions {
    fn default() -> Self {
        Self {
            dense_cap: DEFAULT_DENSE_CAP,
            verify: true,
        }
    }
}

/// The one-step walk unitary together with its basis.
#[derive(Debug, Clone)]
pub struct WalkOperator {
    operator: Operator,
    basis: ArcBasis,
}

impl WalkOperator {
    /// Wraps an operator without checking unitarity; see [`laws`] for that.
    pub fn from_operator(basis: ArcBasis, operator: Operator) -> Result<Self> {
        if operator.kind != OperatorKind::Walk {
            return Err(Error::KindMismatch {
                expected: OperatorKind::Walk,
                found: operator.kind,
            });
        }
        if operator.dim() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                found: operator.dim(),
            });
        }
        Ok(Self { operator, basis })
    }

    pub fn operator(&self) -> &Operator {
        &self.operator
    }

    pub fn basis(&self) -> &ArcBasis {
        &self.basis
    }

    pub fn backend(&self) -> Backend {
        self.operator.backend()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn into_parts(self) -> (ArcBasis, Operator) {
        (self.basis, self.operator)
    }
}

pub fn walk_operator(g: &Graph, backend: Backend) -> Result<WalkOperator> {
    walk_operator_with(g, backend, &WalkOptions::default())
}

pub fn walk_operator_with(g: &Graph, backend: Backend, opts: &WalkOptions) -> Result<WalkOperator> {
    let (_, _, p) = markov_chain(g)?;
    let basis = arc_basis(g);
    let matrix = match backend {
        Backend::Dense => Matrix::Dense(dense_walk_matrix(&basis, &p, opts.dense_cap)?),
        Backend::Sparse => Matrix::Sparse(sparse_walk_matrix(&basis)),
    };
    let op = WalkOperator::from_operator(
        basis,
        Operator {
            kind: OperatorKind::Walk,
            matrix,
        },
    )?;
    if opts.verify {
        let deviation = laws::unitarity_deviation(op.operator());
        if deviation.is_nan() || deviation > UNITARITY_TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
    }
    Ok(op)
}

/// Dense `(2Π - I) · S` from outer-product `Π` and permutation `S`.
pub fn dense_walk_matrix(basis: &ArcBasis, p: &TransitionMatrix, cap: usize) -> Result<DenseMatrix> {
    if basis.len() > cap {
        return Err(Error::DenseCapExceeded {
            arcs: basis.len(),
            cap,
        });
    }
    let reflection = grover_reflection(&projector(basis, p)?)?;
    let swap = swap_operator(basis).to_dense();
    Ok(reflection.to_dense().matmul(&swap))
}

/// Sparse walk matrix written straight from the per-arc scattering rule.
///
/// Column `(i,j)` holds `2/d_j - 1` at `(j,i)` and `2/d_j` at every other
/// `(j,k)`, so there are exactly `sum_j d_j^2` stored entries. Entries that
/// happen to be zero (the return arc when `d_j = 2`) are stored explicitly.
pub fn sparse_walk_matrix(basis: &ArcBasis) -> SparseMatrix {
    let mut triplets = Vec::new();
    for (col, &(i, j)) in basis.arcs().iter().enumerate() {
        let scatter = 2.0 / basis.degree(j) as f64;
        for row in basis.out_arcs(j) {
            let (_, k) = basis.arc(row);
            let value = if k == i { scatter - 1.0 } else { scatter };
            triplets.push((row, col, C64::new(value, 0.0)));
        }
    }
    SparseMatrix::from_triplets(basis.len(), triplets)
}

/// One walk step.
pub fn apply_step(u: &WalkOperator, s: &ArcStateVector) -> Result<ArcStateVector> {
    if s.len() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: s.len(),
        });
    }
    Ok(ArcStateVector::from_unchecked(u.operator.apply(s.amplitudes())))
}

/// Reference walk over the full `N^2`-dimensional pair space `|i,j>`, with
/// pair `(i,j)` at index `i*N + j`. Only meant for small cross-checks.
pub fn full_space_walk(g: &Graph) -> Result<DenseMatrix> {
    let (_, _, p) = markov_chain(g)?;
    let n = g.node_count();
    let dim = n * n;
    let mut pi = DenseMatrix::zeros(dim);
    for i in 0..n {
        for a in 0..n {
            for b in 0..n {
                let v = (p.get(i, a) * p.get(i, b)).sqrt();
                if v != 0.0 {
                    pi.add_to(i * n + a, i * n + b, C64::new(v, 0.0));
                }
            }
        }
    }
    let mut swap = DenseMatrix::zeros(dim);
    for i in 0..n {
        for j in 0..n {
            swap.set(j * n + i, i * n + j, C64::new(1.0, 0.0));
        }
    }
    Ok(pi.scale_shift(2.0, -1.0).matmul(&swap))
}

/// Serializable operator listing: arcs plus stored entries in column-major
/// order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorDump {
    pub kind: OperatorKind,
    pub arcs: Vec<(usize, usize)>,
    pub triplets: Vec<(usize, usize, f64, f64)>,
}

impl OperatorDump {
    pub fn new(basis: &ArcBasis, op: &Operator) -> Self {
        Self {
            kind: op.kind,
            arcs: basis.arcs().to_vec(),
            triplets: op
                .to_sparse()
                .triplets()
                .map(|(r, c, v)| (r, c, v.re, v.im))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::markov_chain;

    const EXACT: f64 = 1e-15;

    fn setup(g: &Graph) -> (ArcBasis, TransitionMatrix) {
        let (_, _, p) = markov_chain(g).unwrap();
        (arc_basis(g), p)
    }

    fn amp(s: &ArcStateVector, b: &ArcBasis, i: usize, j: usize) -> C64 {
        s.amplitudes()[b.index(i, j).unwrap()]
    }

    #[test]
    fn phi_examples() {
        let (_, p) = setup(&fixtures::path(3));
        let phi = phi_coefficients(&p, 1).unwrap();
        assert_eq!(phi, vec![(0, 0.5f64.sqrt()), (2, 0.5f64.sqrt())]);

        let (_, p) = setup(&fixtures::single_edge());
        assert_eq!(phi_coefficients(&p, 0).unwrap(), vec![(1, 1.0)]);

        let (_, p) = setup(&fixtures::star(3));
        let phi = phi_coefficients(&p, 0).unwrap();
        assert_eq!(phi.len(), 3);
        for (_, c) in &phi {
            assert!((c - 1.0 / 3f64.sqrt()).abs() < EXACT);
        }
        assert!((phi.iter().map(|(_, c)| c * c).sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(phi_coefficients(&p, 4).is_err());
    }

    #[test]
    fn psi_examples() {
        let g = fixtures::single_edge();
        let (b, p) = setup(&g);
        let psi = psi_state(&b, &p, 0).unwrap();
        assert_eq!(amp(&psi, &b, 0, 1), C64::new(1.0, 0.0));
        assert_eq!(amp(&psi, &b, 1, 0), C64::new(0.0, 0.0));

        let (b, p) = setup(&fixtures::cycle(4));
        let psi = psi_state(&b, &p, 0).unwrap();
        let h = 0.5f64.sqrt();
        assert!((amp(&psi, &b, 0, 1).re - h).abs() < EXACT);
        assert!((amp(&psi, &b, 0, 3).re - h).abs() < EXACT);
        assert_eq!(psi.amplitudes().iter().filter(|a| a.norm() > 0.0).count(), 2);

        let (b, p) = setup(&fixtures::star(3));
        let psi = psi_state(&b, &p, 1).unwrap();
        assert_eq!(amp(&psi, &b, 1, 0), C64::new(1.0, 0.0));
        assert!((psi.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projector_examples() {
        let (b, p) = setup(&fixtures::single_edge());
        let pi = projector(&b, &p).unwrap().to_dense();
        assert!(pi.max_abs_diff(&DenseMatrix::identity(2)) < EXACT);

        // arcs: (0,1) (1,0) (1,2) (2,1)
        let (b, p) = setup(&fixtures::path(3));
        let pi = projector(&b, &p).unwrap().to_dense();
        let mut expected = DenseMatrix::zeros(4);
        expected.set(0, 0, C64::new(1.0, 0.0));
        expected.set(3, 3, C64::new(1.0, 0.0));
        for r in 1..3 {
            for c in 1..3 {
                expected.set(r, c, C64::new(0.5, 0.0));
            }
        }
        assert!(pi.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn sparse_projector_matches_dense() {
        for (_, g) in fixtures::standard_set() {
            let (b, p) = setup(&g);
            let d = projector(&b, &p).unwrap().to_dense();
            let s = projector_sparse(&b, &p).unwrap().to_dense();
            assert!(d.max_abs_diff(&s) == 0.0);
        }
    }

    #[test]
    fn grover_examples() {
        let (b, p) = setup(&fixtures::single_edge());
        let g = grover_reflection(&projector(&b, &p).unwrap()).unwrap();
        assert_eq!(g.kind, OperatorKind::Reflection);
        assert!(g.to_dense().max_abs_diff(&DenseMatrix::identity(2)) < EXACT);

        let (b, p) = setup(&fixtures::path(3));
        let g = grover_reflection(&projector(&b, &p).unwrap()).unwrap().to_dense();
        let mut expected = DenseMatrix::zeros(4);
        expected.set(0, 0, C64::new(1.0, 0.0));
        expected.set(3, 3, C64::new(1.0, 0.0));
        expected.set(1, 2, C64::new(1.0, 0.0));
        expected.set(2, 1, C64::new(1.0, 0.0));
        assert!(g.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn grover_rejects_wrong_kind() {
        let (b, _) = setup(&fixtures::path(3));
        let s = swap_operator(&b);
        assert!(matches!(
            grover_reflection(&s),
            Err(Error::KindMismatch { expected: OperatorKind::Projector, found: OperatorKind::Swap })
        ));
    }

    #[test]
    fn swap_examples() {
        let (b, _) = setup(&fixtures::single_edge());
        let s = swap_operator(&b).to_dense();
        assert_eq!(s.get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(s.get(1, 0), C64::new(1.0, 0.0));
        assert_eq!(s.get(0, 0), C64::new(0.0, 0.0));

        let (b, _) = setup(&fixtures::path(3));
        let s = swap_operator(&b).to_dense();
        for (k, &(i, j)) in b.arcs().iter().enumerate() {
            let target = b.index(j, i).unwrap();
            assert_eq!(s.get(target, k), C64::new(1.0, 0.0));
        }
        assert_eq!(s.adjoint(), s);
        assert_eq!(s.matmul(&s), DenseMatrix::identity(4));
    }

    #[test]
    fn walk_examples() {
        let g = fixtures::single_edge();
        let (b, _) = setup(&g);
        for backend in [Backend::Dense, Backend::Sparse] {
            let u = walk_operator(&g, backend).unwrap();
            let s = swap_operator(&b).to_dense();
            assert!(u.operator().to_dense().max_abs_diff(&s) < EXACT);
        }

        let g = fixtures::cycle(4);
        for backend in [Backend::Dense, Backend::Sparse] {
            let u = walk_operator(&g, backend).unwrap();
            let b = u.basis();
            let col = u.operator().to_dense().column(b.index(0, 1).unwrap());
            for (k, v) in col.iter().enumerate() {
                let expected = if b.arc(k) == (1, 2) { 1.0 } else { 0.0 };
                assert!((v - C64::new(expected, 0.0)).norm() < EXACT, "{backend}");
            }
        }
    }

    #[test]
    fn star_column_for_leaf_arc() {
        let g = fixtures::star(3);
        for backend in [Backend::Dense, Backend::Sparse] {
            let u = walk_operator(&g, backend).unwrap();
            let b = u.basis();
            let col = u.operator().to_dense().column(b.index(1, 0).unwrap());
            let expect = |arc| match arc {
                (0, 1) => -1.0 / 3.0,
                (0, 2) | (0, 3) => 2.0 / 3.0,
                _ => 0.0,
            };
            for (k, v) in col.iter().enumerate() {
                assert!((v - C64::new(expect(b.arc(k)), 0.0)).norm() <= EXACT, "{backend}");
            }
        }
    }

    #[test]
    fn sparse_entry_count_is_sum_of_squared_degrees() {
        for (_, g) in fixtures::standard_set() {
            let b = arc_basis(&g);
            let expected: usize = (0..g.node_count()).map(|v| b.degree(v).pow(2)).sum();
            assert_eq!(sparse_walk_matrix(&b).nnz(), expected);
        }
    }

    #[test]
    fn apply_step_examples() {
        let g = fixtures::single_edge();
        let u = walk_operator(&g, Backend::Sparse).unwrap();
        let b = u.basis();
        let out = apply_step(&u, &ArcStateVector::basis_state(b, b.index(0, 1).unwrap())).unwrap();
        assert_eq!(amp(&out, b, 1, 0), C64::new(1.0, 0.0));

        let g = fixtures::cycle(4);
        let u = walk_operator(&g, Backend::Sparse).unwrap();
        let b = u.basis();
        let out = apply_step(&u, &ArcStateVector::basis_state(b, b.index(0, 1).unwrap())).unwrap();
        assert_eq!(amp(&out, b, 1, 2), C64::new(1.0, 0.0));
        assert!((out.norm() - 1.0).abs() < 1e-10);

        let g = fixtures::star(3);
        let u = walk_operator(&g, Backend::Sparse).unwrap();
        let b = u.basis();
        let out = apply_step(&u, &ArcStateVector::basis_state(b, b.index(1, 0).unwrap())).unwrap();
        assert!((amp(&out, b, 0, 1).re + 1.0 / 3.0).abs() < EXACT);
        assert!((amp(&out, b, 0, 2).re - 2.0 / 3.0).abs() < EXACT);
        assert!((amp(&out, b, 0, 3).re - 2.0 / 3.0).abs() < EXACT);
        let probs: f64 = out.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert!((probs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn apply_step_dimension_mismatch() {
        let u = walk_operator(&fixtures::cycle(4), Backend::Sparse).unwrap();
        let s = ArcStateVector::new(vec![C64::new(1.0, 0.0)]).unwrap();
        assert!(matches!(
            apply_step(&u, &s),
            Err(Error::DimensionMismatch { expected: 8, found: 1 })
        ));
    }

    #[test]
    fn dense_cap_enforced() {
        let g = fixtures::complete(4);
        let opts = WalkOptions {
            dense_cap: 11,
            verify: true,
        };
        assert!(matches!(
            walk_operator_with(&g, Backend::Dense, &opts),
            Err(Error::DenseCapExceeded { arcs: 12, cap: 11 })
        ));
        assert!(walk_operator_with(&g, Backend::Sparse, &opts).is_ok());
    }

    #[test]
    fn walk_rejects_invalid_graph() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(walk_operator(&g, Backend::Sparse), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn swap_then_reflect_equals_head_indexed_reflection_after_swap() {
        // (2Π - I) S == S (2 SΠS - I)
        for (_, g) in fixtures::standard_set() {
            let (b, p) = setup(&g);
            let pi = projector(&b, &p).unwrap().to_dense();
            let s = swap_operator(&b).to_dense();
            let lhs = dense_walk_matrix(&b, &p, usize::MAX).unwrap();
            let head_pi = s.matmul(&pi).matmul(&s);
            let rhs = s.matmul(&head_pi.scale_shift(2.0, -1.0));
            assert!(lhs.max_abs_diff(&rhs) < 1e-15);
        }
    }

    #[test]
    fn full_space_walk_restricts_to_arc_walk() {
        for g in [fixtures::path(3), fixtures::star(3), fixtures::cycle(4), fixtures::complete(4)] {
            let n = g.node_count();
            let full = full_space_walk(&g).unwrap();
            let b = arc_basis(&g);
            let sparse = sparse_walk_matrix(&b).to_dense();
            let is_arc = |idx: usize| b.index(idx / n, idx % n).is_some();
            for r in 0..n * n {
                for c in 0..n * n {
                    let v = full.get(r, c);
                    match (b.index(r / n, r % n), b.index(c / n, c % n)) {
                        (Some(rr), Some(cc)) => assert!((v - sparse.get(rr, cc)).norm() < 1e-12),
                        // arcs never leak into non-arcs and vice versa
                        _ if is_arc(r) != is_arc(c) => assert_eq!(v, C64::new(0.0, 0.0)),
                        _ => {}
                    }
                }
            }
        }
    }

    #[test]
    fn dump_is_deterministic() {
        let g = fixtures::path(3);
        let u = walk_operator(&g, Backend::Sparse).unwrap();
        let a = OperatorDump::new(u.basis(), u.operator()).to_json().unwrap();
        let b = OperatorDump::new(u.basis(), u.operator()).to_json().unwrap();
        assert_eq!(a, b);
        let parsed: OperatorDump = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed.arcs, vec![(0, 1), (1, 0), (1, 2), (2, 1)]);
        assert_eq!(parsed.kind, OperatorKind::Walk);
        assert!(a.contains("\"triplets\""));
    }
}
