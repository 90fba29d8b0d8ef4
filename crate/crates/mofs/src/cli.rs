//! The `mofs` command line.
//!
//! Exit status: 0 on success (including a computed "not maximal" verdict),
//! 1 when an input file or search fails validation, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mofs_core::construct::{construct_federer, construct_prime_power, hadamard};
use mofs_core::maximality::maximality_verdict;
use mofs_core::search::{
    grow_maximal, GreedyOrder, SearchConfig, SearchError, DEFAULT_ENUMERATION_CEILING,
};
use mofs_core::verify::upper_bound;
use mofs_core::{MofsSet, Params};

use crate::{format, parallel, report};

/// Environment variable overriding the enumeration ceiling.
pub const MAX_ENUM_VAR: &str = "MOFS_MAX_ENUM";

#[derive(Debug, Parser)]
#[command(
    name = "mofs",
    version,
    about = "Construct, verify and analyze mutually orthogonal frequency squares"
)]
struct Cli {
    /// Run enumerations even when the estimated size exceeds the ceiling.
    #[arg(long, global = true)]
    force: bool,
    /// Worker threads for searches (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a complete set and write it as a MOFS file.
    Construct(ConstructArgs),
    /// Validate a MOFS file: squares, pairwise orthogonality and size bound.
    Verify { file: PathBuf },
    /// Print the upper bound on the size of a set of type F(m*lambda; lambda).
    Bound { m: usize, lambda: usize },
    /// Structure, parity and maximality report for a MOFS file.
    Analyze { file: PathBuf },
    /// Count all F-squares of type F(m*lambda; lambda).
    Count { m: usize, lambda: usize },
    /// Decide maximality exhaustively or grow the set greedily.
    Extend(ExtendArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "method")]
struct ConstructMethod {
    /// Finite-field construction of type F(m^h; m^(h-1)).
    #[arg(long, num_args = 2, value_names = ["M", "H"])]
    prime_power: Option<Vec<usize>>,
    /// Hadamard-matrix construction of type F(4n; 2n).
    #[arg(long, value_name = "ORDER")]
    hadamard: Option<usize>,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[command(flatten)]
    method: ConstructMethod,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Order {
    FirstRowShuffle,
    UniformExtension,
}

#[derive(Debug, Args)]
struct ExtendArgs {
    file: PathBuf,
    /// Search every F-square for one orthogonal to the whole set.
    #[arg(long, conflicts_with = "greedy", required_unless_present = "greedy")]
    exhaustive: bool,
    /// Add extensions until none is left.
    #[arg(long, requires = "seed")]
    greedy: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// How greedy growth picks the next square.
    #[arg(long, value_enum, default_value = "first-row-shuffle")]
    order: Order,
    /// Write the grown set to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::InfeasibleSizeGuard { .. } => Failure::Invalid(format!(
                "{e}; pass --force or raise {MAX_ENUM_VAR} to run it anyway"
            )),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(()) => 0,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn search_config(cli: &Cli) -> Result<SearchConfig, Failure> {
    let ceiling = match std::env::var(MAX_ENUM_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "{MAX_ENUM_VAR} must be a non-negative integer, got `{v}`"
            ))
        })?,
        Err(_) => DEFAULT_ENUMERATION_CEILING,
    };
    Ok(SearchConfig {
        ceiling,
        force: cli.force,
        parallelism: cli.threads,
        ..SearchConfig::default()
    })
}

fn params(m: usize, lambda: usize) -> Result<Params, Failure> {
    Params::new(m, lambda).map_err(|e| Failure::Usage(e.to_string()))
}

fn read_set(path: &Path) -> Result<MofsSet, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    format::decode(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Invalid(e.to_string())),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let config = search_config(&cli)?;
    match cli.command {
        Command::Construct(args) => {
            let set = match (args.method.prime_power, args.method.hadamard) {
                (Some(mh), _) => construct_prime_power(mh[0], mh[1]),
                (None, Some(order)) => hadamard(order).and_then(|h| construct_federer(&h)),
                (None, None) => unreachable!("clap requires one method"),
            }
            .map_err(|e| Failure::Usage(e.to_string()))?;
            emit(&format::encode(&set), args.output.as_deref(), out)?;
            let _ = writeln!(
                err,
                "constructed {} squares of type {}",
                set.len(),
                set.params()
            );
        }
        Command::Verify { file } => {
            let set = read_set(&file)?;
            let _ = write!(out, "{}", report::verify_summary(&set));
        }
        Command::Bound { m, lambda } => {
            let b = upper_bound(params(m, lambda)?).map_err(|e| Failure::Usage(e.to_string()))?;
            let _ = writeln!(
                out,
                "{} {}",
                b.value,
                if b.exact { "exact" } else { "inexact" }
            );
        }
        Command::Analyze { file } => {
            let set = read_set(&file)?;
            let verdict = maximality_verdict(&set);
            let _ = write!(out, "{}", report::analyze(&set, &verdict));
        }
        Command::Count { m, lambda } => {
            let n = parallel::count_fsquares(params(m, lambda)?, &config)?;
            let _ = writeln!(out, "{n}");
        }
        Command::Extend(args) => {
            let set = read_set(&args.file)?;
            if args.exhaustive {
                match parallel::first_extension(&set, &config)? {
                    None => {
                        let _ = writeln!(
                            out,
                            "maximal: yes (source: exhaustive search of all squares of type {})",
                            set.params()
                        );
                    }
                    Some(square) => {
                        let _ = writeln!(
                            out,
                            "maximal: no (source: exhaustive search); first orthogonal square:"
                        );
                        let _ = write!(out, "{}", format::encode(&MofsSet::singleton(square)));
                    }
                }
            } else {
                let config = SearchConfig {
                    seed: args.seed.expect("clap requires --seed"),
                    greedy: match args.order {
                        Order::FirstRowShuffle => GreedyOrder::FirstRowShuffle,
                        Order::UniformExtension => GreedyOrder::UniformExtension,
                    },
                    ..config
                };
                let start = set.len();
                let grown = grow_maximal(set, &config)?;
                emit(&format::encode(&grown), args.output.as_deref(), out)?;
                let _ = writeln!(
                    err,
                    "grew from {start} to {} squares; maximal: yes (source: exhaustive search, no extension left)",
                    grown.len()
                );
            }
        }
    }
    Ok(())
}
