use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcalab_core::engine::{Method, Problem};
use lcalab_core::graph::{generate, load_graph, GeneratorSpec, Graph};
use lcalab_core::ordering::{default_k, default_levels, parse_seed_hex, RankingFunction};
use lcalab_core::vicinity::DEFAULT_BUDGET;
use serde::Serialize;

use crate::exit::{CliError, CliResult};

/// Local computation algorithms from hash-induced rankings: generate graphs,
/// answer inquiries, check consistency and run the analysis experiments.
#[derive(Parser, Debug, Serialize)]
#[command(name = "lcalab", version)]
pub struct Cli {
    /// Worker threads for independent inquiries and trials (1 = sequential).
    #[arg(long, global = true, default_value_t = 0, hide_default_value = true)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generate a graph and save it in the text format.
    Gen(GenArgs),
    /// Answer inquiries, one JSON line each.
    Query(QueryArgs),
    /// Answer every inquiry and compare against the global online run.
    Verify(VerifyArgs),
    /// Vicinity size statistics over random seeds and centers.
    Stats(StatsArgs),
    /// Run one of the analysis experiments and write its report.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Gnp,
    Regular,
    Bipartite,
    Tree,
}

/// Generator parameters shared by every command that can build its own graph.
#[derive(Args, Debug, Clone, Serialize)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    /// Vertex count (consumers for bipartite).
    #[arg(long)]
    pub n: Option<usize>,
    /// Producer count for bipartite.
    #[arg(long)]
    pub m: Option<usize>,
    /// Average degree (gnp), degree (regular, bipartite consumers) or arity (tree).
    #[arg(long)]
    pub d: Option<f64>,
    /// Tree depth.
    #[arg(long)]
    pub depth: Option<usize>,
    /// Generator randomness, decimal or 0x-hex.
    #[arg(long, value_parser = parse_u64, default_value = "0")]
    pub rng_seed: u64,
}

fn need<T>(value: Option<T>, flag: &str, model: Model) -> CliResult<T> {
    value.ok_or_else(|| CliError::param(format!("--model {model:?} requires --{flag}").to_lowercase()))
}

fn whole(d: f64, model: Model) -> CliResult<usize> {
    if d < 0.0 || d.fract() != 0.0 {
        return Err(CliError::param(format!("--model {model:?}: --d must be a whole number, got {d}").to_lowercase()));
    }
    Ok(d as usize)
}

impl ModelArgs {
    pub fn spec(&self) -> CliResult<GeneratorSpec> {
        let model = self.model.ok_or_else(|| CliError::param("either --graph or --model is required"))?;
        let rng_seed = self.rng_seed;
        Ok(match model {
            Model::Gnp => GeneratorSpec::Gnp {
                n: need(self.n, "n", model)?,
                d: need(self.d, "d", model)?,
                rng_seed,
            },
            Model::Regular => GeneratorSpec::Regular {
                n: need(self.n, "n", model)?,
                d: whole(need(self.d, "d", model)?, model)?,
                rng_seed,
            },
            Model::Bipartite => GeneratorSpec::Bipartite {
                n: need(self.n, "n", model)?,
                m: need(self.m, "m", model)?,
                d: whole(need(self.d, "d", model)?, model)?,
                rng_seed,
            },
            Model::Tree => GeneratorSpec::Tree {
                d: whole(need(self.d, "d", model)?, model)?,
                depth: need(self.depth, "depth", model)?,
            },
        })
    }
}

/// A graph file, or generator parameters.
#[derive(Args, Debug, Clone, Serialize)]
pub struct GraphSource {
    /// Graph file in the text format.
    #[arg(long, conflicts_with = "model")]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub model: ModelArgs,
}

impl GraphSource {
    pub fn load(&self) -> CliResult<Graph> {
        match &self.graph {
            Some(path) => load_graph(path).map_err(|e| match e {
                lcalab_core::Error::Io(io) => CliError::new(crate::exit::IO, format!("{}: {io}", path.display())),
                other => other.into(),
            }),
            None => Ok(generate(&self.model.spec()?)?),
        }
    }

    /// The `d` behind the ranking defaults: `--d` if given, otherwise the
    /// graph's mean degree (at least 1).
    pub fn density(&self, graph: &Graph) -> f64 {
        self.model.d.unwrap_or_else(|| graph.mean_degree()).max(1.0)
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RankingArgs {
    /// Hash seed in hex, e.g. 0xBEEF.
    #[arg(long, default_value = "0x0", value_parser = check_seed)]
    pub seed: String,
    /// Number of levels (default: 4d rounded up to a power of two).
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub levels: Option<u32>,
    /// Independence of the hash family (default: ceil(6 d log2 n)).
    #[arg(long)]
    pub k: Option<usize>,
}

impl RankingArgs {
    pub fn build(&self, items: usize, d: f64) -> CliResult<RankingFunction> {
        let levels = self.levels.unwrap_or_else(|| default_levels(d));
        let k = self.k.unwrap_or_else(|| default_k(d, items.max(2), 1.0));
        let seed = parse_seed_hex(&self.seed)?;
        Ok(RankingFunction::sample(items.max(1), levels, k, &seed)?)
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BudgetArg {
    /// Exploration budget in vertices per inquiry.
    #[arg(long, env = "LCALAB_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemArg {
    Mis,
    Matching,
    Coloring,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Mis => Problem::Mis,
            ProblemArg::Matching => Problem::Matching,
            ProblemArg::Coloring => Problem::Coloring,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum MethodArg {
    #[value(name = "1")]
    #[serde(rename = "1")]
    One,
    #[value(name = "2")]
    #[serde(rename = "2")]
    Two,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::One => Method::One,
            MethodArg::Two => Method::Two,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct GenArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Destination file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
#[command(group(clap::ArgGroup::new("inquiries").required(true).args(["vertex", "all"])))]
pub struct QueryArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, value_enum)]
    pub problem: ProblemArg,
    #[arg(long, value_enum, default_value = "1")]
    pub method: MethodArg,
    #[command(flatten)]
    pub ranking: RankingArgs,
    /// Inquired item: a vertex id, or an edge id (line number in the graph
    /// file, from 0) for matching. Repeatable.
    #[arg(long, value_delimiter = ',')]
    pub vertex: Vec<usize>,
    /// Inquire every vertex (every edge for matching).
    #[arg(long)]
    pub all: bool,
    #[command(flatten)]
    pub budget: BudgetArg,
    /// Destination for JSON lines (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long, value_enum)]
    pub problem: ProblemArg,
    #[arg(long, value_enum, default_value = "1")]
    pub method: MethodArg,
    #[command(flatten)]
    pub ranking: RankingArgs,
    #[command(flatten)]
    pub budget: BudgetArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Test hook: corrupt the LCA answer for these items before comparing.
    #[arg(long, hide = true, value_delimiter = ',')]
    pub inject_fault: Vec<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct StatsArgs {
    #[command(flatten)]
    pub source: GraphSource,
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub levels: Option<u32>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Centers per ranking seed.
    #[arg(long, default_value_t = 100)]
    pub sample_size: usize,
    /// Ranking seeds.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    /// Master seed for ranking seeds and centers.
    #[arg(long = "stats-seed", value_parser = parse_u64, default_value = "1")]
    pub stats_seed: u64,
    #[command(flatten)]
    pub budget: BudgetArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Gnp,
    Regular,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    /// Vicinity sizes across a grid of n.
    Scaling(ScalingArgs),
    /// Mean t_e and t_e^2 across a grid of n.
    Moments(MomentsArgs),
    /// Root vicinity of a complete d-ary tree under random orders.
    Tightness(TightnessArgs),
    /// Exact stochastic dominance checks.
    Dominance(DominanceArgs),
    /// Exact legal-path combinatorics, optionally with simple-path counts.
    LegalPaths(LegalPathsArgs),
    /// Per-level load of the hash queries made by explorations.
    LevelBalance(LevelBalanceArgs),
    /// Edges touching adaptively exposed vertex sets.
    Exposure(ExposureArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct ScalingArgs {
    #[arg(long, value_enum, default_value = "gnp")]
    pub family: FamilyArg,
    #[arg(long, value_delimiter = ',', default_value = "1024,4096,16384,65536")]
    pub n_grid: Vec<usize>,
    #[arg(long, default_value_t = 3.0)]
    pub d: f64,
    /// Inquiries per n.
    #[arg(long, default_value_t = 2000)]
    pub inquiries: usize,
    /// Graph and ranking pairs per n; inquiries are split among them.
    #[arg(long, default_value_t = 20)]
    pub groups: usize,
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub levels: Option<u32>,
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub budget: BudgetArg,
    #[arg(long, value_parser = parse_u64, default_value = "1")]
    pub rng_seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct MomentsArgs {
    #[arg(long, value_enum, default_value = "gnp")]
    pub family: FamilyArg,
    #[arg(long, value_delimiter = ',', default_value = "1024,4096,16384,65536")]
    pub n_grid: Vec<usize>,
    #[arg(long, default_value_t = 3.0)]
    pub d: f64,
    /// Explorations per n.
    #[arg(long, default_value_t = 2000)]
    pub trials: usize,
    #[arg(long, value_parser = parse_u64, default_value = "1")]
    pub rng_seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct TightnessArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub depth: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, value_parser = parse_u64, default_value = "1")]
    pub rng_seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct DominanceArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct LegalPathsArgs {
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub levels: u64,
    #[arg(long)]
    pub t: u64,
    /// Also count simple length-t paths in this many G(n, d) graphs.
    #[arg(long, default_value_t = 0)]
    pub graphs: usize,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 3.0)]
    pub d: f64,
    #[arg(long, value_parser = parse_u64, default_value = "1")]
    pub rng_seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct LevelBalanceArgs {
    #[arg(long, default_value_t = 1 << 14)]
    pub n: usize,
    #[arg(long, default_value_t = 3.0)]
    pub d: f64,
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub levels: Option<u32>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Ranking seeds, one fresh graph each.
    #[arg(long, default_value_t = 100)]
    pub seeds: usize,
    #[arg(long, default_value_t = 512)]
    pub centers_per_seed: usize,
    /// Smallest exploration counted (default: L log2 n hashed ids).
    #[arg(long)]
    pub min_m: Option<usize>,
    #[command(flatten)]
    pub budget: BudgetArg,
    #[arg(long, value_parser = parse_u64, default_value = "1")]
    pub rng_seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct ExposureArgs {
    #[command(flatten)]
    pub source: GraphSource,
    /// Exposed set size.
    #[arg(long)]
    pub s: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Seed for the exposure starts.
    #[arg(long = "exposure-seed", value_parser = parse_u64, default_value = "1")]
    pub exposure_seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn parse_u64(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("{s:?}: {e}"))
}

fn check_seed(s: &str) -> Result<String, String> {
    parse_seed_hex(s).map_err(|e| e.to_string())?;
    Ok(s.to_string())
}
