//! `qwalk` command-line front end.
//!
//! Exit codes: 0 success, 1 usage/parse/validation error, 2 I/O failure,
//! 3 dense backend cap exceeded, 4 operator law violated.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use qwalk_core::baseline::{sample_walk, spread_comparison};
use qwalk_core::embedding::{export, EmbeddingMode, Embedder, ExportFormat};
use qwalk_core::laws::LawInputs;
use qwalk_core::operator::Matrix;
use qwalk_core::{
    arc_basis, degrees, adjacency_matrix, markov_chain, parse_edge_list, qubit_count, Backend,
    Error, Graph, WalkOperator, WalkOptions, DEFAULT_DENSE_CAP, C64,
};

pub const DENSE_CAP_ENV: &str = "QWALK_DENSE_CAP";

pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const IO: u8 = 2;
    pub const DENSE_CAP: u8 = 3;
    pub const LAW_VIOLATION: u8 = 4;
}

#[derive(Debug, Parser)]
#[command(name = "qwalk", version, about = "Scattering quantum walk simulator and graph embedder")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Embed every node and write the embedding matrix.
    Embed(Options),
    /// Verify the operator laws for a graph.
    Check(CheckArgs),
    /// Compare quantum and classical spreading from one source node.
    Compare(Options),
    /// Print graph statistics.
    Info(Options),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    Occupancy,
    Amplitude,
    #[value(alias = "time_averaged")]
    #[serde(alias = "time-averaged")]
    TimeAveraged,
}

impl From<ModeArg> for EmbeddingMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Occupancy => Self::Occupancy,
            ModeArg::Amplitude => Self::Amplitude,
            ModeArg::TimeAveraged => Self::TimeAveraged,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendArg {
    Dense,
    Sparse,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Dense => Self::Dense,
            BackendArg::Sparse => Self::Sparse,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Edge-list file.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Walk length; defaults to the node count.
    #[arg(long, value_name = "T")]
    pub steps: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    pub backend: Option<BackendArg>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Source node for `compare`.
    #[arg(long, value_name = "NODE")]
    pub source: Option<usize>,
    /// Largest arc count the dense backend accepts.
    #[arg(long, value_name = "ARCS")]
    pub dense_cap: Option<usize>,
    /// JSON file with default values for any of the flags above.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Seed for an extra sampled classical path in `compare` output.
    #[arg(long, value_name = "SEED")]
    pub sample_seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub options: Options,
    /// Perturb one walk-operator entry before checking (negative control).
    #[arg(long, hide = true)]
    pub corrupt_operator: bool,
}

/// Flag defaults loaded from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub input: Option<PathBuf>,
    pub steps: Option<usize>,
    pub mode: Option<ModeArg>,
    pub backend: Option<BackendArg>,
    pub format: Option<FormatArg>,
    pub output: Option<PathBuf>,
    pub source: Option<usize>,
    pub dense_cap: Option<usize>,
    pub sample_seed: Option<u64>,
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone)]
pub struct WalkConfig {
    pub input: PathBuf,
    pub steps: Option<usize>,
    pub mode: EmbeddingMode,
    pub backend: Backend,
    pub format: Option<FormatArg>,
    pub output: Option<PathBuf>,
    pub source: Option<usize>,
    pub dense_cap: usize,
    pub sample_seed: Option<u64>,
    pub corrupt_operator: bool,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: exit::USAGE,
            message: message.into(),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Self {
            code: exit::IO,
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) => exit::IO,
            Error::DenseCapExceeded { .. } => exit::DENSE_CAP,
            Error::NotUnitary { .. } => exit::LAW_VIOLATION,
            _ => exit::USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), CliError>;

impl WalkConfig {
    pub fn resolve(opts: Options, corrupt_operator: bool) -> Result<Self, CliError> {
        let file = match &opts.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                serde_json::from_str::<FileConfig>(&text)
                    .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let env_cap = match std::env::var(DENSE_CAP_ENV) {
            Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| {
                CliError::usage(format!("{DENSE_CAP_ENV}: invalid arc count '{v}'"))
            })?),
            Err(_) => None,
        };
        let input = opts
            .input
            .or(file.input)
            .ok_or_else(|| CliError::usage("missing --input"))?;
        Ok(Self {
            input,
            steps: opts.steps.or(file.steps),
            mode: opts.mode.or(file.mode).map_or(EmbeddingMode::Occupancy, Into::into),
            backend: opts.backend.or(file.backend).map_or(Backend::Sparse, Into::into),
            format: opts.format.or(file.format),
            output: opts.output.or(file.output),
            source: opts.source.or(file.source),
            dense_cap: opts
                .dense_cap
                .or(env_cap)
                .or(file.dense_cap)
                .unwrap_or(DEFAULT_DENSE_CAP),
            sample_seed: opts.sample_seed.or(file.sample_seed),
            corrupt_operator,
        })
    }

    fn walk_options(&self) -> WalkOptions {
        WalkOptions {
            dense_cap: self.dense_cap,
            verify: true,
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let g = parse_edge_list(&text)?;
    g.ensure_valid()?;
    Ok(g)
}

/// Runs `body` against the `--output` file or stdout.
fn with_output(
    output: Option<&Path>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> Result<(), Error>,
) -> CmdResult {
    match output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::io(path, e))?;
            let mut w = BufWriter::new(file);
            body(&mut w).map_err(|e| match e {
                Error::Io(io) => CliError::io(path, io),
                other => other.into(),
            })?;
            w.flush().map_err(|e| CliError::io(path, e))
        }
        None => body(stdout).map_err(CliError::from),
    }
}

pub fn cmd_embed(cfg: &WalkConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let format = match cfg.format.unwrap_or(FormatArg::Csv) {
        FormatArg::Csv => ExportFormat::Csv,
        FormatArg::Json => ExportFormat::Json,
        FormatArg::Text => return Err(Error::UnsupportedFormat("text".into()).into()),
    };
    let g = load_graph(&cfg.input)?;
    let t = cfg.steps.unwrap_or(g.node_count());
    let embedder = Embedder::new(&g, cfg.backend, &cfg.walk_options())?;
    let m = embedder.embed_all(t, cfg.mode)?;
    with_output(cfg.output.as_deref(), stdout, |w| export(&m, format, w))?;

    let summary = format!(
        "nodes={} edges={} arcs={} steps={} mode={} backend={}",
        g.node_count(),
        g.edge_count(),
        embedder.walk().dim(),
        t,
        cfg.mode,
        cfg.backend
    );
    // keep stdout pure data when the embedding went there
    let sink: &mut dyn Write = if cfg.output.is_some() { stdout } else { stderr };
    let _ = writeln!(sink, "{summary}");
    Ok(())
}

fn corrupt(u: WalkOperator) -> WalkOperator {
    let (basis, mut op) = u.into_parts();
    match &mut op.matrix {
        Matrix::Sparse(m) => {
            if let Some(v) = m.values_mut().first_mut() {
                *v += C64::new(0.01, 0.0);
            }
        }
        Matrix::Dense(m) => {
            let v = m.get(0, 0);
            m.set(0, 0, v + C64::new(0.01, 0.0));
        }
    }
    WalkOperator::from_operator(basis, op).expect("shape unchanged")
}

pub fn cmd_check(cfg: &WalkConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let g = load_graph(&cfg.input)?;
    let mut inputs = LawInputs::build(&g, cfg.dense_cap)?;
    if cfg.corrupt_operator {
        inputs.sparse_walk = corrupt(inputs.sparse_walk);
    }
    let report = inputs.report();

    let rendered = if cfg.format == Some(FormatArg::Json) {
        serde_json::to_string_pretty(&report).map_err(Error::from)? + "\n"
    } else {
        let mut s = String::new();
        s += &format!("nodes                  {}\n", report.node_count);
        s += &format!("arcs                   {}\n", report.arc_count);
        s += &format!("trace(Pi)              {}\n", report.projector_trace);
        s += &format!("max|U'U - I|           {:e}\n", report.walk_unitarity);
        s += &format!("max|Pi^2 - Pi|         {:e}\n", report.projector_idempotency);
        s += &format!("max|Pi - Pi'|          {:e}\n", report.projector_hermiticity);
        s += &format!("max|S^2 - I|           {:e}\n", report.swap_involution);
        s += &format!("max|G^2 - I|           {:e}\n", report.reflection_involution);
        match report.backend_agreement {
            Some(d) => s += &format!("max|U_dense - U_sparse| {d:e}\n"),
            None => s += "max|U_dense - U_sparse| skipped (arc count above dense cap)\n",
        }
        s += &format!("status                 {}\n", if report.passes() { "ok" } else { "FAILED" });
        s
    };
    with_output(cfg.output.as_deref(), stdout, |w| Ok(w.write_all(rendered.as_bytes())?))?;

    let violations = report.violations();
    if violations.is_empty() {
        Ok(())
    } else {
        for v in &violations {
            let _ = writeln!(stderr, "law violated: {v}");
        }
        Err(CliError {
            code: exit::LAW_VIOLATION,
            message: format!("{} operator law(s) violated", violations.len()),
        })
    }
}

pub fn cmd_compare(cfg: &WalkConfig, stdout: &mut dyn Write) -> CmdResult {
    let source = cfg.source.ok_or_else(|| CliError::usage("compare requires --source"))?;
    let g = load_graph(&cfg.input)?;
    let t = cfg.steps.unwrap_or(g.node_count());
    let mut report = spread_comparison(&g, source, t)?;
    if let Some(seed) = cfg.sample_seed {
        let (_, _, p) = markov_chain(&g)?;
        report.sampled_path = Some(sample_walk(&p, source, t, seed)?);
    }
    let rendered = match cfg.format {
        Some(FormatArg::Json) => serde_json::to_string_pretty(&report).map_err(Error::from)? + "\n",
        Some(FormatArg::Text) | None => report.to_table(),
        Some(FormatArg::Csv) => return Err(Error::UnsupportedFormat("csv".into()).into()),
    };
    with_output(cfg.output.as_deref(), stdout, |w| Ok(w.write_all(rendered.as_bytes())?))
}

pub fn cmd_info(cfg: &WalkConfig, stdout: &mut dyn Write) -> CmdResult {
    let g = load_graph(&cfg.input)?;
    let d = degrees(&adjacency_matrix(&g));
    let arcs = arc_basis(&g).len();
    let qubits = qubit_count(g.node_count());
    let hist = d.histogram();
    let rendered = match cfg.format {
        Some(FormatArg::Json) => {
            let value = serde_json::json!({
                "nodes": g.node_count(),
                "edges": g.edge_count(),
                "arcs": arcs,
                "qubits": qubits,
                "degree_histogram": hist,
            });
            serde_json::to_string_pretty(&value).map_err(Error::from)? + "\n"
        }
        _ => {
            let cells: Vec<String> = hist.iter().map(|(deg, count)| format!("{deg}:{count}")).collect();
            format!(
                "nodes {}\nedges {}\narcs {}\nqubits {}\ndegree_histogram {}\n",
                g.node_count(),
                g.edge_count(),
                arcs,
                qubits,
                cells.join(" ")
            )
        }
    };
    with_output(cfg.output.as_deref(), stdout, |w| Ok(w.write_all(rendered.as_bytes())?))
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Embed(o) => WalkConfig::resolve(o, false).and_then(|c| cmd_embed(&c, stdout, stderr)),
        Command::Check(a) => {
            WalkConfig::resolve(a.options, a.corrupt_operator).and_then(|c| cmd_check(&c, stdout, stderr))
        }
        Command::Compare(o) => WalkConfig::resolve(o, false).and_then(|c| cmd_compare(&c, stdout)),
        Command::Info(o) => WalkConfig::resolve(o, false).and_then(|c| cmd_info(&c, stdout)),
    };
    match result {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}
