//! `ramsey`: build colouring towers, verify their claims, colour hypergraph
//! subsets, and print bound tables.

mod commands;
mod util;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "ramsey",
    about = "Lower-bound colourings for multicolour hypergraph Ramsey numbers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a colouring tower from a spec file and print its claims.
    Build(BuildArgs),
    /// Verify a tower's claim exhaustively, by sampling, or locally.
    Verify(VerifyArgs),
    /// Search, validate, and compose sum-free partition certificates.
    Schur(SchurArgs),
    /// Colour the r-subsets of a hypergraph so no large edge is monochromatic.
    Subsetcolour(SubsetArgs),
    /// Print lower-bound tables and literature comparisons.
    Bounds(BoundsArgs),
    /// Auxiliary reports: the eta audit and the repeated-step chain.
    Report(ReportArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Tower spec file: `base schur <cert>` then `step <rule>` lines.
    spec: PathBuf,
    /// Write the description here instead of stdout.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Evaluate a top-level subset, given as comma-separated hex/width
    /// vertices (e.g. `3/5,9/5,11/5`). Repeatable.
    #[arg(long = "eval")]
    eval: Vec<String>,
    /// Bit positions at or above this refuse to evaluate.
    #[arg(long, default_value_t = ramsey_core::tower::DEFAULT_WIDTH_CAP)]
    width_cap: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
    Local,
}

#[derive(Args)]
struct VerifyArgs {
    /// Tower spec file.
    spec: PathBuf,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Exhaustive: total subset evaluations. Sampled: draws per colour.
    #[arg(long, default_value_t = u64::MAX)]
    max_subsets: u64,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    max_seconds: Option<u64>,
    /// Local mode: number of random subsets to try.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Seed for every randomized path.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for exhaustive mode; 1 gives identical output.
    #[arg(long)]
    threads: Option<usize>,
    /// Testing aid: force every subset of the given vertices to a colour,
    /// as `colour:v1,v2,...` with vertices in hex/width form.
    #[arg(long)]
    plant: Option<String>,
    #[arg(long, default_value_t = ramsey_core::tower::DEFAULT_WIDTH_CAP)]
    width_cap: u64,
}

#[derive(Args)]
struct SchurArgs {
    #[command(subcommand)]
    action: SchurAction,
}

#[derive(Subcommand)]
enum SchurAction {
    /// Backtracking search for a sum-free partition.
    Search {
        #[arg(short = 'k', long)]
        classes: u32,
        #[arg(long)]
        span: u64,
        #[arg(long, default_value_t = 1 << 28)]
        max_nodes: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Validate a certificate file.
    Validate { cert: PathBuf },
    /// Compose two certificates into one with the classes of both.
    Compose {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SubsetArgs {
    /// Hypergraph file: `hypergraph <n>` then one edge per line.
    hypergraph: PathBuf,
    /// Subset size to colour.
    #[arg(short = 'r', long)]
    uniformity: u32,
    /// Optional vertex colouring file; computed greedily when absent.
    #[arg(long)]
    colours: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(short = 'r', long)]
    uniformity: u32,
    #[arg(long)]
    k_from: u32,
    #[arg(long)]
    k_to: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ReportArgs {
    #[command(subcommand)]
    action: ReportAction,
}

#[derive(Subcommand)]
enum ReportAction {
    /// Compare the stated and effective extra-colour counts per step.
    Eta {
        #[arg(long, default_value_t = 9)]
        max_r: u32,
    },
    /// The claims after repeated steps from a 3-uniform base.
    Chain {
        /// Base colour count minus two.
        #[arg(long)]
        colours: u32,
        /// Base target size.
        #[arg(long)]
        target: u32,
        /// Base ground size (the tower argument).
        #[arg(long)]
        ground: u64,
        /// Number of step pairs.
        #[arg(long)]
        steps: u32,
    },
    /// The two-sided bracket on the subset-colouring count for chromatic
    /// number n.
    Bracket {
        #[arg(long)]
        n: u64,
        #[arg(short = 'r', long)]
        uniformity: u32,
    },
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes under us (e.g. `ramsey ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(args) => {
            commands::build(&args.spec, args.out.as_ref(), &args.eval, args.width_cap)
        }
        Command::Verify(args) => commands::verify(&args),
        Command::Schur(args) => match args.action {
            SchurAction::Search {
                classes,
                span,
                max_nodes,
                out,
            } => commands::schur_search(classes, span, max_nodes, out.as_ref()),
            SchurAction::Validate { cert } => commands::schur_validate(&cert),
            SchurAction::Compose { left, right, out } => {
                commands::schur_compose(&left, &right, out.as_ref())
            }
        },
        Command::Subsetcolour(args) => {
            commands::subsetcolour(&args.hypergraph, args.uniformity, args.colours.as_ref())
        }
        Command::Bounds(args) => commands::bounds(
            args.uniformity,
            args.k_from,
            args.k_to,
            matches!(args.format, Format::Machine),
        ),
        Command::Report(args) => match args.action {
            ReportAction::Eta { max_r } => commands::report_eta(max_r),
            ReportAction::Chain {
                colours,
                target,
                ground,
                steps,
            } => commands::report_chain(colours, target, ground, steps),
            ReportAction::Bracket { n, uniformity } => commands::report_bracket(n, uniformity),
        },
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
