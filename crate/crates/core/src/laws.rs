//! Algebraic law checks for the walk operators and a per-graph verification
//! report.

use serde::Serialize;

use crate::basis::{arc_basis, ArcBasis};
use crate::error::{Error, Result};
use crate::graph::{markov_chain, Graph};
use crate::linalg::SparseMatrix;
use crate::operator::{
    grover_reflection, projector, projector_sparse, swap_operator, walk_operator_with, Backend,
    Operator, OperatorKind, WalkOperator, WalkOptions,
};

/// Tolerance for unitarity, idempotency, hermiticity and involution laws.
pub const LAW_TOLERANCE: f64 = 1e-10;
/// Tolerance for `trace(Π) = N`.
pub const TRACE_TOLERANCE: f64 = 1e-9;
/// Tolerance for dense-vs-sparse walk agreement.
pub const AGREEMENT_TOLERANCE: f64 = 1e-12;

/// `max |A^dagger A - I|`.
pub fn unitarity_deviation(op: &Operator) -> f64 {
    let m = op.to_sparse();
    m.adjoint()
        .matmul(&m)
        .max_abs_diff(&SparseMatrix::identity(m.dim()))
}

/// `max |A - A^dagger|`.
pub fn hermiticity_deviation(op: &Operator) -> f64 {
    let m = op.to_sparse();
    m.max_abs_diff(&m.adjoint())
}

/// `max |A^2 - A|`.
pub fn idempotency_deviation(op: &Operator) -> f64 {
    let m = op.to_sparse();
    m.matmul(&m).max_abs_diff(&m)
}

/// `max |A^2 - I|`.
pub fn involution_deviation(op: &Operator) -> f64 {
    let m = op.to_sparse();
    m.matmul(&m).max_abs_diff(&SparseMatrix::identity(m.dim()))
}

pub fn max_difference(a: &Operator, b: &Operator) -> f64 {
    a.to_sparse().max_abs_diff(&b.to_sparse())
}

/// Every operator a graph's walk is built from, in whichever backends fit.
#[derive(Debug, Clone)]
pub struct LawInputs {
    pub node_count: usize,
    pub basis: ArcBasis,
    pub projector: Operator,
    pub reflection: Operator,
    pub swap: Operator,
    pub sparse_walk: WalkOperator,
    /// `None` when the arc count exceeds the dense cap.
    pub dense_walk: Option<WalkOperator>,
}

impl LawInputs {
    /// Builds all operators without running the construction-time check, so
    /// the report sees them as built.
    pub fn build(g: &Graph, dense_cap: usize) -> Result<Self> {
        let (_, _, p) = markov_chain(g)?;
        let basis = arc_basis(g);
        let opts = WalkOptions {
            dense_cap,
            verify: false,
        };
        let dense_fits = basis.len() <= dense_cap;
        let projector = if dense_fits {
            projector(&basis, &p)?
        } else {
            projector_sparse(&basis, &p)?
        };
        let reflection = grover_reflection(&projector)?;
        let dense_walk = match walk_operator_with(g, Backend::Dense, &opts) {
            Ok(u) => Some(u),
            Err(Error::DenseCapExceeded { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            node_count: g.node_count(),
            swap: swap_operator(&basis),
            sparse_walk: walk_operator_with(g, Backend::Sparse, &opts)?,
            basis,
            projector,
            reflection,
            dense_walk,
        })
    }

    pub fn report(&self) -> LawReport {
        debug_assert_eq!(self.projector.kind, OperatorKind::Projector);
        let mut unitarity = unitarity_deviation(self.sparse_walk.operator());
        if let Some(dense) = &self.dense_walk {
            unitarity = unitarity.max(unitarity_deviation(dense.operator()));
        }
        LawReport {
            node_count: self.node_count,
            arc_count: self.basis.len(),
            dense_checked: self.dense_walk.is_some(),
            walk_unitarity: unitarity,
            projector_hermiticity: hermiticity_deviation(&self.projector),
            projector_idempotency: idempotency_deviation(&self.projector),
            projector_trace: self.projector.to_sparse().trace().re,
            swap_involution: involution_deviation(&self.swap),
            reflection_involution: involution_deviation(&self.reflection),
            backend_agreement: self
                .dense_walk
                .as_ref()
                .map(|d| max_difference(d.operator(), self.sparse_walk.operator())),
        }
    }
}

/// Maximum deviations from each operator law.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawReport {
    pub node_count: usize,
    pub arc_count: usize,
    pub dense_checked: bool,
    pub walk_unitarity: f64,
    pub projector_hermiticity: f64,
    pub projector_idempotency: f64,
    pub projector_trace: f64,
    pub swap_involution: f64,
    pub reflection_involution: f64,
    pub backend_agreement: Option<f64>,
}

impl LawReport {
    /// Names of the laws that fail their tolerance. NaN counts as failure.
    pub fn violations(&self) -> Vec<&'static str> {
        let within = |x: f64, tol: f64| x <= tol;
        let mut failed = Vec::new();
        if !within(self.walk_unitarity, LAW_TOLERANCE) {
            failed.push("walk unitarity (U^dagger U = I)");
        }
        if !within(self.projector_hermiticity, LAW_TOLERANCE) {
            failed.push("projector hermiticity (Pi = Pi^dagger)");
        }
        if !within(self.projector_idempotency, LAW_TOLERANCE) {
            failed.push("projector idempotency (Pi^2 = Pi)");
        }
        if !within((self.projector_trace - self.node_count as f64).abs(), TRACE_TOLERANCE) {
            failed.push("projector trace (trace Pi = N)");
        }
        if self.swap_involution != 0.0 {
            failed.push("swap involution (S^2 = I)");
        }
        if !within(self.reflection_involution, LAW_TOLERANCE) {
            failed.push("reflection involution (G^2 = I)");
        }
        if let Some(diff) = self.backend_agreement {
            if !within(diff, AGREEMENT_TOLERANCE) {
                failed.push("dense/sparse agreement");
            }
        }
        failed
    }

    pub fn passes(&self) -> bool {
        self.violations().is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::C64;
    use crate::operator::Matrix;

    #[test]
    fn fixtures_satisfy_all_laws() {
        for (name, g) in fixtures::standard_set() {
            let report = LawInputs::build(&g, 4096).unwrap().report();
            assert!(report.passes(), "{name}: {:?}", report.violations());
            assert!(report.dense_checked);
            assert!((report.projector_trace - g.node_count() as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn star_trace_is_four() {
        let report = LawInputs::build(&fixtures::star(3), 4096).unwrap().report();
        assert!((report.projector_trace - 4.0).abs() < 1e-12);
    }

    #[test]
    fn dense_skipped_above_cap() {
        let report = LawInputs::build(&fixtures::complete(4), 4).unwrap().report();
        assert!(!report.dense_checked);
        assert_eq!(report.backend_agreement, None);
        assert!(report.passes());
    }

    #[test]
    fn corrupted_walk_is_flagged() {
        let mut inputs = LawInputs::build(&fixtures::cycle(4), 4096).unwrap();
        let (basis, mut op) = inputs.sparse_walk.clone().into_parts();
        if let Matrix::Sparse(m) = &mut op.matrix {
            m.values_mut()[1] *= C64::new(1.01, 0.0);
        }
        inputs.sparse_walk = WalkOperator::from_operator(basis, op).unwrap();
        let report = inputs.report();
        let v = report.violations();
        assert!(v.contains(&"walk unitarity (U^dagger U = I)"));
        assert!(v.contains(&"dense/sparse agreement"));
    }

    #[test]
    fn nan_is_a_violation() {
        let mut report = LawInputs::build(&fixtures::path(3), 4096).unwrap().report();
        report.walk_unitarity = f64::NAN;
        assert!(!report.passes());
    }
}
