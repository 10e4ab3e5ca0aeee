//! Command-line parsing and run configuration.

use std::fmt;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, ValueEnum};
use simple_spectrum_core::{sieve_primes, PrimeSet};

/// Environment variable holding the default cache path.
pub const CACHE_ENV: &str = "SIMPLE_SPECTRUM_CACHE";

#[derive(Parser, Debug)]
#[command(
    name = "simple-spectrum",
    version,
    about = "Enumerates all non-abelian finite simple groups whose order has every prime divisor inside a given set of primes",
    group(ArgGroup::new("pi_source").required(true).multiple(false))
)]
pub struct Cli {
    /// Comma-separated list of primes forming the universe
    #[arg(long, value_name = "CSV", group = "pi_source")]
    pub pi: Option<String>,

    /// File containing the primes of the universe (comma- or whitespace-separated)
    #[arg(long, value_name = "PATH", group = "pi_source")]
    pub pi_file: Option<PathBuf>,

    /// Use all primes up to and including N
    #[arg(long, value_name = "N", group = "pi_source")]
    pub max_prime: Option<u64>,

    /// Report to emit
    #[arg(long, value_enum, default_value_t = ReportKind::Groups)]
    pub report: ReportKind,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads (default: all available cores)
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,

    /// Safety multiplier on the field-exponent bound k <= t_p
    #[arg(long, value_name = "N", default_value_t = 1,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub k_margin: u32,

    /// Result cache file (default: $SIMPLE_SPECTRUM_CACHE when set)
    #[arg(long, value_name = "PATH")]
    pub cache: Option<PathBuf>,

    /// Restrict per-prime reports to primes strictly between LO and HI
    #[arg(long, value_name = "LO,HI")]
    pub report_range: Option<String>,

    /// Audit mode: evaluate every rank instead of abandoning dead chains
    #[arg(long)]
    pub no_rank_early_exit: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportKind {
    Groups,
    ByMaxPrime,
    GenericPrimes,
    NongenericTable,
    KnTable,
    Extremes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
    Jsonl,
}

/// Errors with their process exit codes: 2 usage, 3 internal, 4 I/O.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Io(msg) | CliError::Internal(msg) => {
                f.write_str(msg)
            }
        }
    }
}

/// A fully validated run configuration.
#[derive(Debug)]
pub struct RunConfig {
    pub pi: PrimeSet,
    pub report: ReportKind,
    pub format: Format,
    /// Open interval restricting per-prime reports.
    pub report_range: (u64, u64),
    pub threads: Option<usize>,
    pub k_margin: u32,
    pub cache_path: Option<PathBuf>,
    pub rank_early_exit: bool,
}

pub fn parse_config(cli: Cli) -> Result<RunConfig, CliError> {
    let pi = if let Some(csv) = &cli.pi {
        parse_prime_text(csv)?
    } else if let Some(path) = &cli.pi_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        parse_prime_text(&text)?
    } else {
        let limit = cli.max_prime.expect("clap guarantees one pi source");
        sieve_primes(limit).map_err(|e| CliError::Usage(e.to_string()))?
    };
    let report_range = match &cli.report_range {
        None => (0, u64::MAX),
        Some(spec) => {
            let parts: Vec<&str> = spec.split(',').collect();
            let parse = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Usage(format!("invalid report range bound '{s}'")))
            };
            match parts.as_slice() {
                [lo, hi] => {
                    let (lo, hi) = (parse(lo)?, parse(hi)?);
                    if lo >= hi {
                        return Err(CliError::Usage(format!(
                            "report range must satisfy LO < HI, got {lo},{hi}"
                        )));
                    }
                    (lo, hi)
                }
                _ => {
                    return Err(CliError::Usage(format!(
                        "report range must be LO,HI, got '{spec}'"
                    )))
                }
            }
        }
    };
    let cache_path = cli
        .cache
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    Ok(RunConfig {
        pi,
        report: cli.report,
        format: cli.format,
        report_range,
        threads: cli.threads.map(|n| n as usize),
        k_margin: cli.k_margin,
        cache_path,
        rank_early_exit: !cli.no_rank_early_exit,
    })
}

fn parse_prime_text(text: &str) -> Result<PrimeSet, CliError> {
    let mut values = Vec::new();
    for (index, token) in text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .enumerate()
    {
        let value: u64 = token
            .parse()
            .map_err(|_| CliError::Usage(format!("'{token}' is not a number (entry {index})")))?;
        values.push(value);
    }
    if values.is_empty() {
        return Err(CliError::Usage("the prime list is empty".into()));
    }
    PrimeSet::from_primes(&values).map_err(|e| CliError::Usage(e.to_string()))
}
