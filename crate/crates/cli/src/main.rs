use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use shortness::longcycle::SubgraphMode;
use shortness::substitution::LinkingPolicy;
use shortness::Edge;
use shortness_cli::{self as cli, Common, ConstructArgs, LongCycleArgs, Report};

#[derive(Parser)]
#[command(name = "shortness", version, about = "Exact cycle and oddness analysis of cubic graphs and their substitutions")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Largest graph for the exact circumference search.
    #[arg(long, global = true, default_value_t = 60)]
    cap_circ: usize,
    /// Largest graph for 2-factor enumeration.
    #[arg(long, global = true, default_value_t = 40)]
    cap_odd: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    Canonical,
    Seeded,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    Cycle,
}

fn edge(s: &str) -> Result<Edge, String> {
    s.parse().map_err(|e: shortness::Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Classification, girth, cyclic connectivity, circumference and oddness.
    Analyze { path: PathBuf },
    /// Exact circumference with a witness cycle.
    Circ { path: PathBuf },
    /// Oddness, optionally with the forced odd count away from an edge.
    Oddness {
        path: PathBuf,
        #[arg(long, value_parser = edge)]
        edge: Option<Edge>,
    },
    /// Constrained cycle maxima and the resulting coefficient for (H, e).
    Bound {
        path: PathBuf,
        #[arg(long, value_parser = edge)]
        edge: Edge,
        /// Record to use from a multi-graph file.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Substitute a host into a 4-regular frame and write graph6 plus block map.
    Construct {
        host: PathBuf,
        frame: PathBuf,
        out: PathBuf,
        #[arg(long, value_parser = edge)]
        edge: Edge,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, value_enum)]
        policy: Option<Policy>,
        #[arg(long)]
        blockmap: Option<PathBuf>,
        /// Also verify cyclic 4-edge-connectivity exactly.
        #[arg(long)]
        check_cyclic: bool,
    },
    /// Build the long cycle in a substitution from its block map.
    Longcycle {
        graph: PathBuf,
        blockmap: PathBuf,
        frame: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
        #[arg(long)]
        compare_exact: bool,
    },
    /// List matchings of a given size that lie in no dominating cycle.
    Dominate {
        path: PathBuf,
        #[arg(long, default_value_t = 3)]
        matching_size: usize,
    },
    /// Scan every (host, edge) pair of a graph file against criteria.
    Scan {
        path: PathBuf,
        /// Inline JSON or a path to a JSON file.
        #[arg(long, default_value = "{}")]
        criteria: String,
        /// JSON-lines journal for resuming.
        #[arg(long)]
        journal: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> cli::Result<Report> {
    let common = Common { jobs: cli.common.jobs, cap_circ: cli.common.cap_circ, cap_odd: cli.common.cap_odd, seed: cli.common.seed };
    match cli.command {
        Command::Analyze { path } => cli::cmd_analyze(&path, &common),
        Command::Circ { path } => cli::cmd_circ(&path, &common),
        Command::Oddness { path, edge } => cli::cmd_oddness(&path, edge, &common),
        Command::Bound { path, edge, index } => cli::cmd_bound(&path, edge, index, &common),
        Command::Construct { host, frame, out, edge, index, policy, blockmap, check_cyclic } => {
            let policy = match (policy, common.seed) {
                (Some(Policy::Canonical), _) | (None, None) => LinkingPolicy::Canonical,
                (Some(Policy::Seeded) | None, Some(s)) => LinkingPolicy::Seeded(s),
                (Some(Policy::Seeded), None) => return Err(cli::CliError::Usage("--policy seeded needs --seed".into())),
            };
            let args = ConstructArgs { host, frame, out, blockmap, edge, index, policy, check_cyclic };
            cli::cmd_construct(&args, &common)
        }
        Command::Longcycle { graph, blockmap, frame, mode, compare_exact } => {
            let mode = match mode {
                Mode::Full => SubgraphMode::Full,
                Mode::Cycle => SubgraphMode::Cycle,
            };
            cli::cmd_longcycle(&LongCycleArgs { graph, blockmap, frame, mode, compare_exact }, &common)
        }
        Command::Dominate { path, matching_size } => cli::cmd_dominate(&path, matching_size, &common),
        Command::Scan { path, criteria, journal } => {
            let criteria = cli::parse_criteria(&criteria)?;
            cli::cmd_scan(&path, &criteria, journal.as_deref(), &common)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.common.json.clone();
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("report serialises");
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, format!("{text}\n")) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
            eprintln!("{}: {} skipped, {} errors, report in {}", report.command, report.skipped.len(), report.errors.len(), path.display());
        }
        None => println!("{text}"),
    }
    for s in report.skipped.iter().chain(&report.errors) {
        eprintln!("{s}");
    }
    ExitCode::from(report.exit_code() as u8)
}
