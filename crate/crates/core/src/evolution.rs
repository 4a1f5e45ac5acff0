//! Iterated walk evolution and Born-rule node probabilities.

use serde::{Deserialize, Serialize};

use crate::basis::{ArcBasis, ArcStateVector};
use crate::error::{Error, Result};
use crate::graph::TransitionMatrix;
use crate::linalg::C64;
use crate::operator::{apply_step, WalkOperator};

pub const PROBABILITY_TOLERANCE: f64 = 1e-10;

/// Node-level probability distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    /// Requires nonnegative entries summing to 1 within
    /// [`PROBABILITY_TOLERANCE`].
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.iter().any(|&p| p.is_nan() || p < 0.0) {
            return Err(Error::InvalidInput("negative or NaN probability".into()));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(Error::InvalidInput(format!("probabilities sum to {total}")));
        }
        Ok(Self(probabilities))
    }

    pub(crate) fn from_unchecked(probabilities: Vec<f64>) -> Self {
        Self(probabilities)
    }

    pub fn one_hot(node: usize, n: usize) -> Result<Self> {
        if node >= n {
            return Err(Error::NodeOutOfRange {
                node,
                node_count: n,
            });
        }
        let mut p = vec![0.0; n];
        p[node] = 1.0;
        Ok(Self(p))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Half the L1 distance.
    pub fn total_variation(&self, other: &ProbabilityVector) -> f64 {
        0.5 * self
            .0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
    }

    /// Number of nodes with probability above `threshold`.
    pub fn support_size(&self, threshold: f64) -> usize {
        self.0.iter().filter(|&&p| p > threshold).count()
    }
}

/// Global initial state: amplitude `sqrt(P[i][j] / N)` on each arc `(i,j)`.
pub fn initial_global_state(basis: &ArcBasis, p: &TransitionMatrix) -> Result<ArcStateVector> {
    if p.size() != basis.node_count() {
        return Err(Error::DimensionMismatch {
            expected: basis.node_count(),
            found: p.size(),
        });
    }
    let n = basis.node_count() as f64;
    let amps = basis
        .arcs()
        .iter()
        .map(|&(i, j)| C64::new((p.get(i, j) / n).sqrt(), 0.0))
        .collect();
    ArcStateVector::new(amps)
}

/// Which intermediate states [`evolve_with`] keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Retention {
    #[default]
    All,
    FinalOnly,
}

/// States `s0, U s0, ..., U^t s0`, or just the last one under
/// [`Retention::FinalOnly`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    states: Vec<ArcStateVector>,
    step_count: usize,
}

impl Trajectory {
    pub fn step_count(&self) -> usize {
        self.step_count
    }

    pub fn states(&self) -> &[ArcStateVector] {
        &self.states
    }

    pub fn final_state(&self) -> &ArcStateVector {
        self.states.last().expect("trajectory holds at least one state")
    }

    pub fn into_final_state(mut self) -> ArcStateVector {
        self.states.pop().expect("trajectory holds at least one state")
    }

    /// JSON array of states, each a list of `[re, im]` pairs in arc order.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.states)?)
    }
}

pub fn evolve(u: &WalkOperator, s0: &ArcStateVector, t: usize) -> Result<Trajectory> {
    evolve_with(u, s0, t, Retention::All)
}

pub fn evolve_with(
    u: &WalkOperator,
    s0: &ArcStateVector,
    t: usize,
    retention: Retention,
) -> Result<Trajectory> {
    if s0.len() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: s0.len(),
        });
    }
    let mut states = vec![s0.clone()];
    for _ in 0..t {
        let next = apply_step(u, states.last().unwrap())?;
        if retention == Retention::FinalOnly {
            states.clear();
        }
        states.push(next);
    }
    Ok(Trajectory {
        states,
        step_count: t,
    })
}

/// Which end of an arc locates the walker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Marginal {
    /// The walker sits at the arc's tail: `|j,k>` places it at `j`.
    #[default]
    Tail,
    Head,
}

/// Probability of finding the walker at each node, walker at the arc tail.
pub fn occupancy_distribution(s: &ArcStateVector, basis: &ArcBasis) -> ProbabilityVector {
    occupancy_distribution_by(s, basis, Marginal::Tail)
}

pub fn occupancy_distribution_by(
    s: &ArcStateVector,
    basis: &ArcBasis,
    marginal: Marginal,
) -> ProbabilityVector {
    let mut probs = vec![0.0; basis.node_count()];
    for (&(tail, head), a) in basis.arcs().iter().zip(s.amplitudes()) {
        let node = match marginal {
            Marginal::Tail => tail,
            Marginal::Head => head,
        };
        probs[node] += a.norm_sqr();
    }
    for p in &mut probs {
        *p = p.max(0.0);
    }
    ProbabilityVector::from_unchecked(probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::arc_basis;
    use crate::fixtures;
    use crate::graph::markov_chain;
    use crate::operator::{psi_state, walk_operator, Backend};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn global_state_examples() {
        let g = fixtures::single_edge();
        let (_, _, p) = markov_chain(&g).unwrap();
        let s = initial_global_state(&arc_basis(&g), &p).unwrap();
        let h = 0.5f64.sqrt();
        assert!(s.amplitudes().iter().all(|a| (a.re - h).abs() < 1e-15 && a.im == 0.0));

        let g = fixtures::cycle(4);
        let (_, _, p) = markov_chain(&g).unwrap();
        let s = initial_global_state(&arc_basis(&g), &p).unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.amplitudes().iter().all(|a| (a.re - 0.125f64.sqrt()).abs() < 1e-15));

        let g = fixtures::star(3);
        let (_, _, p) = markov_chain(&g).unwrap();
        let b = arc_basis(&g);
        let s = initial_global_state(&b, &p).unwrap();
        for (k, &(i, _)) in b.arcs().iter().enumerate() {
            let expected = if i == 0 { (1.0f64 / 12.0).sqrt() } else { 0.5 };
            assert!((s.amplitudes()[k].re - expected).abs() < 1e-15);
        }
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_steps_returns_input() {
        let g = fixtures::random_connected(10, 5, 3);
        let u = walk_operator(&g, Backend::Sparse).unwrap();
        let (_, _, p) = markov_chain(&g).unwrap();
        let s0 = initial_global_state(u.basis(), &p).unwrap();
        let traj = evolve(&u, &s0, 0).unwrap();
        assert_eq!(traj.states(), &[s0]);
        assert_eq!(traj.step_count(), 0);
    }

    #[test]
    fn single_edge_returns_after_two_steps() {
        let u = walk_operator(&fixtures::single_edge(), Backend::Sparse).unwrap();
        let s0 = ArcStateVector::basis_state(u.basis(), 0);
        let traj = evolve(&u, &s0, 2).unwrap();
        assert_eq!(traj.final_state(), &s0);
        assert_eq!(traj.states().len(), 3);
    }

    #[test]
    fn cycle_transport() {
        let g = fixtures::cycle(4);
        let (_, _, p) = markov_chain(&g).unwrap();
        let u = walk_operator(&g, Backend::Sparse).unwrap();
        let b = u.basis();
        let psi0 = psi_state(b, &p, 0).unwrap();
        let traj = evolve(&u, &psi0, 2).unwrap();

        // after two steps the state sits on arcs leaving node 2
        let last = traj.final_state();
        for (k, &(tail, _)) in b.arcs().iter().enumerate() {
            if tail != 2 {
                assert!(last.amplitudes()[k].norm() < 1e-15);
            }
        }
        let p1 = occupancy_distribution(&traj.states()[1], b);
        assert!(close(p1.as_slice(), &[0.0, 0.5, 0.0, 0.5], 1e-12));
        let p2 = occupancy_distribution(last, b);
        assert!(close(p2.as_slice(), &[0.0, 0.0, 1.0, 0.0], 1e-12));
    }

    #[test]
    fn occupancy_single_arc() {
        let g = fixtures::single_edge();
        let b = arc_basis(&g);
        let s = ArcStateVector::basis_state(&b, b.index(1, 0).unwrap());
        assert_eq!(occupancy_distribution(&s, &b).as_slice(), &[0.0, 1.0]);
        assert_eq!(
            occupancy_distribution_by(&s, &b, Marginal::Head).as_slice(),
            &[1.0, 0.0]
        );
    }

    #[test]
    fn final_only_keeps_one_state() {
        let g = fixtures::cycle(6);
        let u = walk_operator(&g, Backend::Sparse).unwrap();
        let s0 = ArcStateVector::basis_state(u.basis(), 0);
        let full = evolve(&u, &s0, 7).unwrap();
        let lean = evolve_with(&u, &s0, 7, Retention::FinalOnly).unwrap();
        assert_eq!(lean.states().len(), 1);
        assert_eq!(lean.final_state(), full.final_state());
        assert_eq!(lean.step_count(), 7);
    }

    #[test]
    fn dimension_mismatch() {
        let u = walk_operator(&fixtures::cycle(4), Backend::Sparse).unwrap();
        let s = ArcStateVector::new(vec![C64::new(1.0, 0.0)]).unwrap();
        assert!(matches!(evolve(&u, &s, 3), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn trajectory_json_shape() {
        let u = walk_operator(&fixtures::single_edge(), Backend::Sparse).unwrap();
        let s0 = ArcStateVector::basis_state(u.basis(), 0);
        let json = evolve(&u, &s0, 1).unwrap().to_json().unwrap();
        assert_eq!(json, "[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]");
    }

    #[test]
    fn probability_vector_checks() {
        assert!(ProbabilityVector::new(vec![0.5, 0.5]).is_ok());
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![1.5, -0.5]).is_err());
        let a = ProbabilityVector::one_hot(0, 3).unwrap();
        let b = ProbabilityVector::new(vec![0.0, 0.5, 0.5]).unwrap();
        assert_eq!(a.total_variation(&b), 1.0);
        assert_eq!(b.support_size(1e-12), 2);
        assert!(ProbabilityVector::one_hot(3, 3).is_err());
    }
}
