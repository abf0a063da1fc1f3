//! `schilling`, the batch front end for the dilation-problem toolbox.
//!
//! Exit codes, uniform across subcommands:
//!   0  success (all targets proven / all checks passed / residual in bound)
//!   1  bad arguments or I/O failure
//!   2  unresolved targets (budget ran out before the window closed)
//!   3  validation failure (a log did not re-check)

mod commands;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use schilling_core::FieldCase;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNRESOLVED: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Parser)]
#[command(
    name = "schilling",
    version,
    about = "Certified derivations and known solutions for the Schilling dilation problem",
    long_about = "Proves, with machine-checkable traces, that every solution of\n\
                  f(q x) = (1/4q)[f(x-1) + f(x+1) + 2 f(x)],  f = 0 outside [-Q, Q],\n\
                  vanishes on finite windows of the lattice Z + qZ for the four quadratic\n\
                  cases q = (sqrt(3)-1)/2, (3-sqrt(5))/2, sqrt(2)-1, (sqrt(5)-1)/2; and\n\
                  reconstructs the known nonzero solutions at q = 2^(-1/n).\n\n\
                  The environment variable SCHILLING_LOG_DIR overrides the default\n\
                  output directory for logs and CSV files."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prove every lattice point of a window zero and write a .slog.json log
    Certify(CertifyArgs),
    /// Prove a single point zero and print the narrated derivation
    Derive(DeriveArgs),
    /// Reconstruct the known solution at q = 2^(-1/n), write CSV, report residuals
    Solution(SolutionArgs),
    /// Check the per-case algebraic identities exactly
    Identities(IdentitiesArgs),
    /// Re-validate a previously written log file
    Validate(ValidateArgs),
}

fn parse_case(s: &str) -> Result<FieldCase, String> {
    FieldCase::from_cli_name(s)
        .ok_or_else(|| "expected one of: sqrt3, sqrt5half, sqrt2, golden".to_string())
}

#[derive(Args)]
struct CertifyArgs {
    /// Which q to certify: sqrt3, sqrt5half, sqrt2 or golden
    #[arg(long = "case", value_parser = parse_case, required_unless_present = "all")]
    case: Option<FieldCase>,
    /// Certify all four cases (in parallel, one log each)
    #[arg(long, conflicts_with = "case")]
    all: bool,
    /// Window half-width N: targets are m + n q with |m|, |n| <= N
    #[arg(long, short = 'w')]
    window: u32,
    /// Candidate strategy: auto, guided or grid
    #[arg(long, default_value = "auto")]
    strategy: String,
    /// Substitution budget
    #[arg(long = "max-subs", default_value_t = 100_000)]
    max_subs: usize,
    /// Relation budget
    #[arg(long = "max-rels", default_value_t = 1_000_000)]
    max_rels: usize,
    /// Output path (single case only; default <log dir>/certify-<case>-w<N>.slog.json)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DeriveArgs {
    #[arg(long = "case", value_parser = parse_case)]
    case: FieldCase,
    /// The point in the "u + v q" grammar, e.g. "1 - 1 q" or "1/2 + 3/4 q"
    #[arg(long)]
    point: String,
    #[arg(long = "max-subs", default_value_t = 100_000)]
    max_subs: usize,
    #[arg(long = "max-rels", default_value_t = 1_000_000)]
    max_rels: usize,
}

#[derive(Args)]
struct SolutionArgs {
    /// Solution order: q = 2^(-1/n)
    #[arg(long)]
    n: u32,
    /// Grid step, decimal or fraction (e.g. 0.001 or 1/1024)
    #[arg(long, default_value = "0.0009765625")]
    h: String,
    /// Half-width of the sampled domain; default Q + 1.6
    #[arg(long = "half-width", alias = "l")]
    half_width: Option<f64>,
    /// CSV output path (default <log dir>/solution-n<N>.csv)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IdentitiesArgs {
    #[arg(long = "case", value_parser = parse_case)]
    case: FieldCase,
}

#[derive(Args)]
struct ValidateArgs {
    /// A .slog.json file written by certify
    file: PathBuf,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let friendly = matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return if friendly { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match cli.command {
        Command::Certify(args) => commands::certify(args),
        Command::Derive(args) => commands::derive(args),
        Command::Solution(args) => commands::solution(args),
        Command::Identities(args) => commands::identities(args),
        Command::Validate(args) => commands::validate_file(args),
    }
}
