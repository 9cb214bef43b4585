use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "burnoff",
    version,
    about = "Length distributions of burn-off chip-firing games"
)]
pub struct Cli {
    /// Worker threads for parallel counting (default: available parallelism).
    #[arg(long, global = true, env = "BURNOFF_THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact length distribution, |R| and the cone's spanning-tree count.
    Analyze(AnalyzeArgs),
    /// Run the random seeding chain and compare against the exact distribution.
    Simulate(SimulateArgs),
    /// Cross-check the counting formulas and the bijection by brute force.
    Verify(VerifyArgs),
    /// Map a configuration to its cone spanning tree or back.
    Bijection(BijectionArgs),
    /// List every relaxed legal configuration or every cone spanning tree.
    Enumerate(EnumerateArgs),
}

/// A graph given as an edge-list file or a built-in family.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct GraphArgs {
    /// Edge-list file: a `n m` header, then `m` lines `u v`.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,

    /// Built-in family: path N, cycle N, complete N, star N or k3_pendant.
    #[arg(long, num_args = 1..=2, value_names = ["NAME", "N"])]
    pub family: Option<Vec<String>>,
}

/// Same as [`GraphArgs`] but optional.
#[derive(Debug, Clone, Args)]
#[group(required = false, multiple = false)]
pub struct OptionalGraphArgs {
    /// Edge-list file: a `n m` header, then `m` lines `u v`.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,

    /// Built-in family: path N, cycle N, complete N, star N or k3_pendant.
    #[arg(long, num_args = 1..=2, value_names = ["NAME", "N"])]
    pub family: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnalyzeFormat {
    Table,
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[arg(long, value_enum, default_value_t = AnalyzeFormat::Table)]
    pub format: AnalyzeFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    /// Number of games to play.
    #[arg(short = 'm', long = "games", value_parser = parse_games)]
    pub games: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Significance level of the goodness-of-fit test.
    #[arg(long, default_value_t = 0.1, value_parser = parse_alpha)]
    pub alpha: f64,

    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,

    /// Also write an SVG bar chart of simulated and exact frequencies.
    #[arg(long, value_name = "PATH")]
    pub chart: Option<PathBuf>,

    /// Count visits to every configuration (small graphs only).
    #[arg(long)]
    pub visitation: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub graph: OptionalGraphArgs,

    /// Without a graph, check every connected graph up to isomorphism on
    /// 1..=N vertices.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(1..=6))]
    pub max_n: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    ToTree,
    ToConfig,
}

#[derive(Debug, Args)]
pub struct BijectionArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[arg(long, value_enum)]
    pub direction: Direction,

    /// Configuration or tree file; `-` reads standard input.
    #[arg(long, default_value = "-", value_name = "PATH")]
    pub input: String,

    /// Print the layer-by-layer construction as `#` comment lines.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Listing {
    Configs,
    Trees,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub graph: GraphArgs,

    #[arg(long, value_enum, default_value_t = Listing::Configs)]
    pub what: Listing,
}

fn parse_alpha(text: &str) -> Result<f64, String> {
    let alpha: f64 = text.parse().map_err(|_| format!("`{text}` is not a number"))?;
    if alpha > 0.0 && alpha < 1.0 {
        Ok(alpha)
    } else {
        Err("alpha must lie strictly between 0 and 1".into())
    }
}

fn parse_games(text: &str) -> Result<u64, String> {
    match text.parse::<u64>() {
        Ok(0) => Err("at least one game is needed".into()),
        Ok(m) => Ok(m),
        Err(_) => Err(format!("`{text}` is not a nonnegative integer")),
    }
}
