//! Classical random walk on the same Markov chain, and side-by-side spread
//! statistics against the quantum walk.

use std::fmt::Write as _;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evolution::{evolve, occupancy_distribution, ProbabilityVector};
use crate::graph::{markov_chain, Graph, TransitionMatrix};
use crate::operator::{psi_state, walk_operator, Backend};

/// Probabilities below this count as outside the support.
pub const SUPPORT_THRESHOLD: f64 = 1e-12;

/// `out[j] = sum_i d[i] * P[i][j]`.
pub fn classical_step(p: &TransitionMatrix, d: &ProbabilityVector) -> Result<ProbabilityVector> {
    let n = p.size();
    if d.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.len(),
        });
    }
    let mut out = vec![0.0; n];
    for (i, &di) in d.as_slice().iter().enumerate() {
        if di == 0.0 {
            continue;
        }
        for (o, &pij) in out.iter_mut().zip(p.row(i)) {
            *o += di * pij;
        }
    }
    Ok(ProbabilityVector::from_unchecked(out))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalTrajectory {
    pub distributions: Vec<ProbabilityVector>,
}

pub fn classical_evolve(
    p: &TransitionMatrix,
    d0: &ProbabilityVector,
    t: usize,
) -> Result<ClassicalTrajectory> {
    let mut distributions = vec![d0.clone()];
    for _ in 0..t {
        let next = classical_step(p, distributions.last().unwrap())?;
        distributions.push(next);
    }
    Ok(ClassicalTrajectory { distributions })
}

/// Sampled classical walk of `t` hops from `start`. Demonstration output
/// only; comparisons use the exact distributions.
pub fn sample_walk(p: &TransitionMatrix, start: usize, t: usize, seed: u64) -> Result<Vec<usize>> {
    if start >= p.size() {
        return Err(Error::NodeOutOfRange {
            node: start,
            node_count: p.size(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut path = vec![start];
    let mut here = start;
    for _ in 0..t {
        let dist = WeightedIndex::new(p.row(here))
            .map_err(|e| Error::InvalidInput(format!("row {here}: {e}")))?;
        here = dist.sample(&mut rng);
        path.push(here);
    }
    Ok(path)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpreadRow {
    pub step: usize,
    pub quantum: Vec<f64>,
    pub classical: Vec<f64>,
    pub quantum_support: usize,
    pub classical_support: usize,
    /// Total-variation distance from the step-0 distribution.
    pub quantum_tv_from_start: f64,
    pub classical_tv_from_start: f64,
    pub quantum_vs_classical_tv: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpreadReport {
    pub source: usize,
    pub steps: usize,
    pub rows: Vec<SpreadRow>,
    pub quantum_max_support: usize,
    pub classical_max_support: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled_path: Option<Vec<usize>>,
}

/// Quantum walk from `psi_source` next to the classical walk from the
/// one-hot source distribution, step by step.
pub fn spread_comparison(g: &Graph, source: usize, t: usize) -> Result<SpreadReport> {
    let (_, _, p) = markov_chain(g)?;
    let n = g.node_count();
    let start = ProbabilityVector::one_hot(source, n)?;

    let u = walk_operator(g, Backend::Sparse)?;
    let psi = psi_state(u.basis(), &p, source)?;
    let quantum = evolve(&u, &psi, t)?;
    let classical = classical_evolve(&p, &start, t)?;

    let rows: Vec<SpreadRow> = quantum
        .states()
        .iter()
        .zip(&classical.distributions)
        .enumerate()
        .map(|(step, (state, c))| {
            let q = occupancy_distribution(state, u.basis());
            SpreadRow {
                step,
                quantum_support: q.support_size(SUPPORT_THRESHOLD),
                classical_support: c.support_size(SUPPORT_THRESHOLD),
                quantum_tv_from_start: q.total_variation(&start),
                classical_tv_from_start: c.total_variation(&start),
                quantum_vs_classical_tv: q.total_variation(c),
                quantum: q.into_vec(),
                classical: c.as_slice().to_vec(),
            }
        })
        .collect();

    Ok(SpreadReport {
        source,
        steps: t,
        quantum_max_support: rows.iter().map(|r| r.quantum_support).max().unwrap_or(0),
        classical_max_support: rows.iter().map(|r| r.classical_support).max().unwrap_or(0),
        rows,
        sampled_path: None,
    })
}

fn format_distribution(p: &[f64]) -> String {
    let cells: Vec<String> = p.iter().map(|v| format!("{v:.4}")).collect();
    format!("[{}]", cells.join(" "))
}

impl SpreadReport {
    /// Aligned plain-text table, one line per step.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# source {} steps {}", self.source, self.steps);
        let _ = writeln!(
            out,
            "{:>5} {:>9} {:>9} {:>10} {:>10} {:>10}  {:<w$}  classical",
            "step",
            "q_support",
            "c_support",
            "q_tv_start",
            "c_tv_start",
            "q_vs_c_tv",
            "quantum",
            w = 7 * self.rows.first().map_or(0, |r| r.quantum.len()) + 1,
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>5} {:>9} {:>9} {:>10.6} {:>10.6} {:>10.6}  {}  {}",
                r.step,
                r.quantum_support,
                r.classical_support,
                r.quantum_tv_from_start,
                r.classical_tv_from_start,
                r.quantum_vs_classical_tv,
                format_distribution(&r.quantum),
                format_distribution(&r.classical),
            );
        }
        if let Some(path) = &self.sampled_path {
            let hops: Vec<String> = path.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "# sampled classical path: {}", hops.join(" -> "));
        }
        out
    }
}
