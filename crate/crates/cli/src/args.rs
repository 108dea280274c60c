use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use depnet::{Direction, EntityKind};

#[derive(Parser, Debug)]
#[command(
    name = "depnet",
    version,
    about = "Dependency network analysis for proof corpora"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate node and edge tables and cache the graph as a binary snapshot.
    Ingest(IngestArgs),
    /// Entity and edge counts, optionally with source line counts.
    Stats(StatsArgs),
    /// Degree histogram as `deg,count` CSV.
    Degree(DegreeArgs),
    /// Discrete power-law fit of a degree distribution or a sample file.
    Fit(FitArgs),
    /// Random graphs and samples.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Per-node degree, clustering, betweenness and centrality.
    Metrics(MetricsArgs),
    /// Modularity communities compared with the declared structure.
    Communities(CommunityArgs),
    /// Entities whose community disagrees with their declared group.
    Recommend(RecommendArgs),
    /// Frequent premise sets, or association rules with --min-confidence.
    Mine(MineArgs),
    /// Rank premises likely to complete a partial premise set.
    Suggest(SuggestArgs),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write data here (atomically, with a `.meta.json` sidecar) instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Snapshot written by `ingest`.
    #[arg(long, conflicts_with_all = ["nodes", "edges"], required_unless_present_all = ["nodes", "edges"])]
    pub snapshot: Option<PathBuf>,
    /// Node table (`.tsv`, `.jsonl` or `.ndjson`).
    #[arg(long, requires = "edges")]
    pub nodes: Option<PathBuf>,
    /// Edge table (`.tsv`, `.jsonl` or `.ndjson`).
    #[arg(long, requires = "nodes")]
    pub edges: Option<PathBuf>,
    /// Map unknown entity kinds to `other`, skip unknown edge kinds and drop
    /// edges or parents that point at missing entities.
    #[arg(long)]
    pub lenient: bool,
}

#[derive(Args, Debug)]
pub struct IngestArgs {
    #[arg(long)]
    pub nodes: PathBuf,
    #[arg(long)]
    pub edges: PathBuf,
    /// Snapshot file to write.
    #[arg(long)]
    pub snapshot: PathBuf,
    #[arg(long)]
    pub lenient: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Directory whose `.thy` files are line-counted.
    #[arg(long)]
    pub sources: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionArg {
    In,
    Out,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::In => Direction::In,
            DirectionArg::Out => Direction::Out,
        }
    }
}

fn parse_kind(s: &str) -> Result<EntityKind, String> {
    s.parse::<EntityKind>()
        .map_err(|k| format!("unknown entity kind `{k}`"))
}

#[derive(Args, Debug)]
pub struct DegreeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value_t = DirectionArg::In)]
    pub direction: DirectionArg,
    /// Count only nodes of these kinds.
    #[arg(long, value_delimiter = ',', value_parser = parse_kind)]
    pub kinds: Vec<EntityKind>,
    /// Emit probabilities (`deg,pr`) instead of counts.
    #[arg(long)]
    pub normalized: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["snapshot", "nodes", "samples"]))]
pub struct FitArgs {
    #[arg(long, conflicts_with_all = ["nodes", "edges", "samples"])]
    pub snapshot: Option<PathBuf>,
    #[arg(long, requires = "edges", conflicts_with = "samples")]
    pub nodes: Option<PathBuf>,
    #[arg(long, requires = "nodes")]
    pub edges: Option<PathBuf>,
    #[arg(long)]
    pub lenient: bool,
    /// One non-negative integer per line, optional `value` header.
    #[arg(long)]
    pub samples: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = DirectionArg::In)]
    pub direction: DirectionArg,
    #[arg(long, value_delimiter = ',', value_parser = parse_kind)]
    pub kinds: Vec<EntityKind>,
    /// Fixed lower cutoff; selected by minimum KS distance when absent.
    #[arg(long)]
    pub xmin: Option<u64>,
    /// Smallest tail size for a candidate cutoff.
    #[arg(long, default_value_t = depnet::degree::DEFAULT_MIN_TAIL)]
    pub min_tail: usize,
    /// Number of bootstrap replicates for a goodness-of-fit p-value.
    #[arg(long)]
    pub bootstrap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Subcommand, Debug)]
pub enum GenerateCommand {
    /// Directed G(n, p).
    Er(ErArgs),
    /// Preferential attachment growth, m dependencies per new node.
    Pa(PaArgs),
    /// Samples from a discrete power law.
    Plsample(PlSampleArgs),
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("dest").required(true).args(["out_dir", "snapshot"]))]
pub struct GraphOut {
    /// Directory receiving `nodes.tsv` and `edges.tsv`.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Write a snapshot instead of tables.
    #[arg(long)]
    pub snapshot: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ErArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub dest: GraphOut,
}

#[derive(Args, Debug)]
pub struct PaArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub dest: GraphOut,
}

#[derive(Args, Debug)]
pub struct PlSampleArgs {
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1)]
    pub xmin: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct MetricsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// `exact` or `sampled:K` (K random sources).
    #[arg(long, default_value = "exact")]
    pub betweenness: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Theories and their imports, declared groups are sessions.
    Session,
    /// Facts, constants and types, declared groups are theories.
    Theory,
}

#[derive(Args, Debug)]
pub struct CommunityArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value_t = Level::Session)]
    pub level: Level,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Shuffled restarts and perturbation rounds; 0 keeps only the index-order pass and its refinement.
    #[arg(long, default_value_t = depnet::community::DEFAULT_RESTARTS)]
    pub restarts: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct RecommendArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value_t = Level::Session)]
    pub level: Level,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Shuffled restarts and perturbation rounds; 0 keeps only the index-order pass and its refinement.
    #[arg(long, default_value_t = depnet::community::DEFAULT_RESTARTS)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0.5)]
    pub min_confidence: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct MiningArgs {
    /// Absolute count, or a fraction of transactions when below 1.
    #[arg(long)]
    pub min_support: f64,
    /// Kinds treated as items.
    #[arg(long, value_delimiter = ',', value_parser = parse_kind, default_values = ["fact", "constant"])]
    pub item_kinds: Vec<EntityKind>,
}

#[derive(Args, Debug)]
pub struct MineArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub mining: MiningArgs,
    /// Emit association rules at this confidence instead of itemsets.
    #[arg(long)]
    pub min_confidence: Option<f64>,
    /// Also write the frequent itemsets here.
    #[arg(long)]
    pub itemsets: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SuggestArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub mining: MiningArgs,
    #[arg(long, default_value_t = 0.5)]
    pub min_confidence: f64,
    /// Premises already chosen.
    #[arg(long, value_delimiter = ',', required = true)]
    pub items: Vec<String>,
    #[arg(short, default_value_t = 10)]
    pub k: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
