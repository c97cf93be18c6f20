mod commands;
mod error;
mod json;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mwlattice::matroid::Field;

use crate::error::CliError;

/// Exact computations on the 28 minimal-vector pairs of E7*, the n_r census,
/// dihedral cover existence and plane quartic bitangents.
#[derive(Debug, Parser)]
#[command(name = "mwlattice", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the 28 pair representatives.
    Vectors {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run the signature census n_1..n_R.
    Classify(ClassifyArgs),
    /// Rank, independence and circuits of a subset.
    Matroid {
        /// Comma-separated pair indices in 1..=28.
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
        #[arg(long, default_value = "q", value_parser = parse_field)]
        field: Field,
    },
    /// Dihedral cover existence for signed sections.
    Dihedral(DihedralArgs),
    /// Quartic and 28 bitangents from an Aronhold set.
    Bitangents(BitangentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=28))]
    max_r: u32,
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: Field,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-level checkpoint directory; existing levels are reused.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Required for --max-r above 20.
    #[arg(long)]
    force_full: bool,
    /// Include per-level wall-clock seconds and peak memory in the JSON.
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("prime").required(true).args(["p", "p_max"])))]
struct DihedralArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    subset: Vec<usize>,
    /// One sign per section: `+`, `-`, `1` or `-1`. Defaults to all positive.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    signs: Option<Vec<String>>,
    #[arg(long)]
    p: Option<u64>,
    /// Scan all odd primes up to this bound.
    #[arg(long)]
    p_max: Option<u64>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["aronhold", "seed"])))]
struct BitangentArgs {
    /// JSON file `{"a": [[..],[..],[..]]}` of rational strings.
    #[arg(long)]
    aronhold: Option<PathBuf>,
    /// Draw a random nondegenerate input instead.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: mwlattice::matroid::MatroidError| e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Vectors { format } => commands::vectors(format == Format::Json),
        Command::Classify(a) => commands::classify(commands::ClassifyRequest {
            max_r: a.max_r as usize,
            field: a.field,
            out: a.out,
            checkpoint: a.checkpoint,
            threads: a.threads,
            force_full: a.force_full,
            timings: a.timings,
        }),
        Command::Matroid { subset, field } => commands::matroid(&subset, field),
        Command::Dihedral(a) => commands::dihedral(&a.subset, a.signs.as_deref(), a.p, a.p_max),
        Command::Bitangents(a) => commands::bitangents(a.aronhold.as_deref(), a.seed, a.out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
