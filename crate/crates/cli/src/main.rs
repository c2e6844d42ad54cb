mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Exit status for a TRUE instance.
pub const EXIT_TRUE: u8 = 10;
/// Exit status for a FALSE instance.
pub const EXIT_FALSE: u8 = 20;
pub const EXIT_ERROR: u8 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "kqbf",
    version,
    about = "Solve, reduce and cross-check QBF with few existential variables"
)]
struct Cli {
    /// Write a JSON run manifest (command, seed, inputs, configuration, version).
    #[arg(long, global = true, value_name = "PATH")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
enum Command {
    /// Decide a ∀∃ QDIMACS instance with the hitting-set solver.
    Solve(SolveArgs),
    /// Decide any closed QDIMACS instance by exhaustive evaluation.
    Oracle(OracleArgs),
    /// Turn a DNF into a QBF with few existential variables.
    Reduce(ReduceArgs),
    /// Check a DNF against a QBF on every assignment of the DNF's variables.
    Verify(VerifyArgs),
    /// Generate a seeded random DNF or ∀∃ instance.
    Gen(GenArgs),
    /// Run solver and oracle over a directory of QDIMACS files.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Serialize)]
struct SolveArgs {
    path: PathBuf,
    /// Use this value instead of the computed X(k, d).
    #[arg(long)]
    threshold_override: Option<f64>,
    /// Explore branches in parallel.
    #[arg(long)]
    parallel: bool,
    /// Instances with at most this many existential variables go to the oracle.
    #[arg(long, default_value_t = 2)]
    small_k_cutoff: usize,
    /// Append one statistics row to this CSV (header written on creation).
    #[arg(long, value_name = "PATH")]
    stats_csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct OracleArgs {
    path: PathBuf,
    /// Refuse instances with more bound variables.
    #[arg(long, default_value_t = kqbf::OracleConfig::DEFAULT_MAX_VARS)]
    max_vars: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
enum Construction {
    /// Four quantifier blocks, 4-CNF, logarithmically many existentials.
    #[value(name = "1")]
    FourBlock,
    /// ∀x ∃y in d-CNF.
    #[value(name = "2")]
    TwoBlock,
}

#[derive(Args, Debug, Serialize)]
struct ReduceArgs {
    path: PathBuf,
    #[arg(long, value_enum)]
    theorem: Construction,
    /// Clause arity of the two-block construction.
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// DNFs with n + m at most this are brute-forced (four-block construction).
    #[arg(long, default_value_t = kqbf::reductions::DEFAULT_BASE_THRESHOLD)]
    base_threshold: usize,
    /// Read a DIMACS CNF and reduce its negation.
    #[arg(long)]
    negate_cnf: bool,
    /// QDIMACS output (stdout when absent).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Provenance sidecar: one "id role block" line per introduced variable.
    #[arg(long, value_name = "PATH")]
    provenance: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    dnf: PathBuf,
    qbf: PathBuf,
    /// Largest number of DNF variables to enumerate.
    #[arg(long, default_value_t = kqbf::OracleConfig::DEFAULT_MAX_VARS)]
    max_vars: usize,
    /// Write mismatches as CSV (sigma,dnf,qbf).
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum GenKind {
    Dnf,
    Feqbf,
}

#[derive(Args, Debug, Serialize)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    /// Variables of the DNF, or universal variables of the ∀∃ instance.
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Terms or clauses.
    #[arg(long, default_value_t = 8)]
    m: usize,
    /// Existential variables (feqbf).
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Clause arity (feqbf).
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Term width (dnf).
    #[arg(long, default_value_t = 3)]
    width: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Reject repeated terms or clauses.
    #[arg(long)]
    distinct: bool,
    /// Every clause gets at least one existential literal (feqbf).
    #[arg(long)]
    require_existential: bool,
    /// Output file (stdout when absent).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct BenchArgs {
    #[arg(long, value_name = "DIR")]
    corpus: PathBuf,
    #[arg(long, value_name = "PATH")]
    out: PathBuf,
    /// Oracle bound; instances above it get no oracle answer.
    #[arg(long, default_value_t = kqbf::OracleConfig::DEFAULT_MAX_VARS)]
    oracle_max_vars: usize,
    #[arg(long)]
    parallel: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    if let Some(path) = &cli.manifest {
        manifest::RunManifest::for_command(&cli.command)?.write(path)?;
    }
    match &cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Oracle(args) => commands::oracle(args),
        Command::Reduce(args) => commands::reduce(args),
        Command::Verify(args) => commands::verify(args),
        Command::Gen(args) => commands::gen(args),
        Command::Bench(args) => commands::bench(args),
    }
}
