//! `widthlab` command line.
//!
//! Results go to standard output; diagnostics go to standard error. The exit
//! status is 0 when everything succeeded, 2 when some input graph failed,
//! and 1 for any other error.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "widthlab",
    version,
    about = "Exact rank-width / boolean-width and seeded random-graph experiments"
)]
struct Cli {
    /// Worker threads for trial and cut enumeration (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample graphs from G(n, 1/2).
    Gen(GenArgs),
    /// Exact width of each input graph.
    Width(WidthArgs),
    /// Balanced-cut lower bound of each input graph.
    Lb(LbArgs),
    /// Width of a given decomposition tree.
    Check(CheckArgs),
    /// Run a seeded experiment and write its report.
    Exp(ExpArgs),
    /// Exact reference tables.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    G6,
    Edges,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Measure {
    Rank,
    Bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    /// Master seed; graph `i` uses the seed derived from (seed, n, i).
    #[arg(long, env = "WIDTHLAB_SEED")]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, value_enum, default_value_t = GraphFormat::G6)]
    format: GraphFormat,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file, or `-` for standard input.
    #[arg(long)]
    input: String,
    /// Read blank-line separated edge lists instead of graph6 lines.
    #[arg(long)]
    edge_list: bool,
}

#[derive(Args, Debug)]
struct WidthArgs {
    #[arg(long, value_enum)]
    measure: Measure,
    #[command(flatten)]
    input: InputArgs,
    /// Print an optimal decomposition tree after each value.
    #[arg(long)]
    witness: bool,
    /// Largest vertex count accepted by the exact engine.
    #[arg(long, default_value_t = widthlab::widths::DEFAULT_EXACT_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct LbArgs {
    #[arg(long, value_enum, default_value_t = Measure::Rank)]
    measure: Measure,
    #[command(flatten)]
    input: InputArgs,
    /// Largest vertex count accepted by the balanced-cut enumeration.
    #[arg(long, default_value_t = widthlab::widths::DEFAULT_BALANCED_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, value_enum)]
    measure: Measure,
    #[command(flatten)]
    input: InputArgs,
    /// Index of the graph in the input to check against.
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Decomposition tree in `tree <n>` text form.
    #[arg(long)]
    tree: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Experiment {
    Lemma1,
    Scaling,
    #[value(name = "boolw-rw")]
    BoolwRw,
    Bell,
    Envelope,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormatArg {
    Csv,
    Jsonl,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Args, Debug)]
struct ExpArgs {
    #[arg(value_enum)]
    experiment: Experiment,
    /// Master seed.
    #[arg(long, env = "WIDTHLAB_SEED", default_value_t = 1)]
    seed: u64,
    /// Comma-separated sizes and inclusive ranges, e.g. `8,10` or `3..12`.
    /// Defaults: lemma1 6,9,12; scaling 8,10,12,14; boolw-rw 6..10; bell 3..30; envelope 3..12.
    #[arg(long)]
    n_list: Option<String>,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Report file, or a directory to hold `<experiment>-<seed>.<ext>`.
    #[arg(long, default_value = ".")]
    out: String,
    #[arg(long, value_enum, default_value_t = ReportFormatArg::Csv)]
    format: ReportFormatArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    /// Most submatrices enumerated for one exact minimum.
    #[arg(long, default_value_t = 1_000_000_000)]
    work_cap: u64,
    /// Random draws per sampled minimum.
    #[arg(long, default_value_t = 10_000)]
    draws: usize,
    /// Vertex cap of the exact width engine.
    #[arg(long, default_value_t = widthlab::widths::DEFAULT_EXACT_CAP)]
    exact_cap: usize,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Exact rank distribution of random m x n GF(2) matrices.
    Rankdist {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Bell number B_n.
    Bell {
        #[arg(long)]
        n: usize,
    },
    /// Number of subspaces of GF(2)^r.
    Galois {
        #[arg(long)]
        r: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    match pool.install(|| commands::run(cli.command, &mut std::io::stdout().lock())) {
        Ok(commands::Outcome::Success) => ExitCode::SUCCESS,
        Ok(commands::Outcome::GraphFailures) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
