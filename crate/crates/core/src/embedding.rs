//! Per-node embeddings read off evolved walk states, and their CSV/JSON
//! export.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{evolve_with, occupancy_distribution, Retention};
use crate::graph::{markov_chain, Graph, TransitionMatrix};
use crate::operator::{psi_state, walk_operator_with, Backend, WalkOperator, WalkOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingMode {
    /// Node occupancy of the final state.
    #[default]
    Occupancy,
    /// Final amplitudes as interleaved `(re, im)` in arc order.
    Amplitude,
    /// Mean occupancy over steps `0..=t`.
    TimeAveraged,
}

impl fmt::Display for EmbeddingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Occupancy => "occupancy",
            Self::Amplitude => "amplitude",
            Self::TimeAveraged => "time_averaged",
        })
    }
}

impl FromStr for EmbeddingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "occupancy" => Ok(Self::Occupancy),
            "amplitude" => Ok(Self::Amplitude),
            "time_averaged" | "time-averaged" => Ok(Self::TimeAveraged),
            other => Err(Error::InvalidInput(format!("unknown embedding mode '{other}'"))),
        }
    }
}

/// One embedding row per node, in node order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingMatrix {
    pub mode: EmbeddingMode,
    #[serde(rename = "t")]
    pub steps: usize,
    pub dimension: usize,
    pub rows: Vec<Vec<f64>>,
}

/// Walk operator and transition matrix of one graph, reused across nodes.
#[derive(Debug, Clone)]
pub struct Embedder {
    walk: WalkOperator,
    transition: TransitionMatrix,
}

impl Embedder {
    pub fn new(g: &Graph, backend: Backend, opts: &WalkOptions) -> Result<Self> {
        let (_, _, transition) = markov_chain(g)?;
        let walk = walk_operator_with(g, backend, opts)?;
        Ok(Self { walk, transition })
    }

    pub fn walk(&self) -> &WalkOperator {
        &self.walk
    }

    pub fn node_count(&self) -> usize {
        self.transition.size()
    }

    pub fn dimension(&self, mode: EmbeddingMode) -> usize {
        match mode {
            EmbeddingMode::Amplitude => 2 * self.walk.dim(),
            EmbeddingMode::Occupancy | EmbeddingMode::TimeAveraged => self.node_count(),
        }
    }

    /// Evolves `psi_i` for `t` steps and reads off the embedding.
    pub fn node(&self, i: usize, t: usize, mode: EmbeddingMode) -> Result<Vec<f64>> {
        let basis = self.walk.basis();
        let start = psi_state(basis, &self.transition, i)?;
        match mode {
            EmbeddingMode::Occupancy => {
                let last = evolve_with(&self.walk, &start, t, Retention::FinalOnly)?.into_final_state();
                Ok(occupancy_distribution(&last, basis).into_vec())
            }
            EmbeddingMode::Amplitude => {
                let last = evolve_with(&self.walk, &start, t, Retention::FinalOnly)?.into_final_state();
                Ok(last.amplitudes().iter().flat_map(|a| [a.re, a.im]).collect())
            }
            EmbeddingMode::TimeAveraged => {
                let traj = evolve_with(&self.walk, &start, t, Retention::All)?;
                let mut mean = vec![0.0; self.node_count()];
                for state in traj.states() {
                    for (m, p) in mean.iter_mut().zip(occupancy_distribution(state, basis).as_slice()) {
                        *m += p;
                    }
                }
                let count = traj.states().len() as f64;
                mean.iter_mut().for_each(|m| *m /= count);
                Ok(mean)
            }
        }
    }

    /// All node embeddings; rows are computed in parallel, ordered by node id.
    pub fn embed_all(&self, t: usize, mode: EmbeddingMode) -> Result<EmbeddingMatrix> {
        let rows = (0..self.node_count())
            .into_par_iter()
            .map(|i| self.node(i, t, mode))
            .collect::<Result<Vec<_>>>()?;
        Ok(EmbeddingMatrix {
            mode,
            steps: t,
            dimension: self.dimension(mode),
            rows,
        })
    }
}

/// Single-node embedding on the sparse backend.
pub fn node_embedding(g: &Graph, i: usize, t: usize, mode: EmbeddingMode) -> Result<Vec<f64>> {
    Embedder::new(g, Backend::Sparse, &WalkOptions::default())?.node(i, t, mode)
}

/// Embedding of every node on the sparse backend.
pub fn embed_all(g: &Graph, t: usize, mode: EmbeddingMode) -> Result<EmbeddingMatrix> {
    Embedder::new(g, Backend::Sparse, &WalkOptions::default())?.embed_all(t, mode)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

/// Shortest representation that parses back to the same bits. Plain decimal
/// unless that gets long, then exponent form.
fn format_float(v: f64) -> String {
    let plain = v.to_string();
    if plain.len() > 24 {
        format!("{v:e}")
    } else {
        plain
    }
}

pub fn export(m: &EmbeddingMatrix, format: ExportFormat, mut out: impl Write) -> Result<()> {
    if m.rows.is_empty() || m.dimension == 0 {
        return Err(Error::InvalidInput("cannot export an empty embedding".into()));
    }
    if let Some(bad) = m.rows.iter().position(|r| r.len() != m.dimension) {
        return Err(Error::InvalidInput(format!(
            "row {bad} has {} entries, expected {}",
            m.rows[bad].len(),
            m.dimension
        )));
    }
    match format {
        ExportFormat::Csv => {
            let mut header = String::from("node");
            for c in 0..m.dimension {
                header.push_str(&format!(",c{c}"));
            }
            writeln!(out, "{header}")?;
            for (node, row) in m.rows.iter().enumerate() {
                let mut line = node.to_string();
                for &v in row {
                    line.push(',');
                    line.push_str(&format_float(v));
                }
                writeln!(out, "{line}")?;
            }
        }
        ExportFormat::Json => {
            serde_json::to_writer(&mut out, m)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Reads the rows back from [`export`]'s CSV output.
pub fn import_csv(input: impl BufRead) -> Result<Vec<Vec<f64>>> {
    let mut lines = input.lines().enumerate();
    let header = match lines.next() {
        Some((_, line)) => line?,
        None => return Err(Error::InvalidInput("missing CSV header".into())),
    };
    let width = header.split(',').count();
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != width {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected {width} fields"),
            });
        }
        let row = fields[1..]
            .iter()
            .map(|f| {
                f.parse::<f64>().map_err(|_| Error::Parse {
                    line: idx + 1,
                    message: format!("invalid number '{f}'"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn import_json(input: impl std::io::Read) -> Result<EmbeddingMatrix> {
    Ok(serde_json::from_reader(input)?)
}
