//! Command-line front end: universe specification, run orchestration, result
//! cache and report emission.
//!
//! Exit codes: 0 success, 2 usage error, 3 internal assertion, 4 I/O error.

mod cache;
mod config;
mod report;

use std::io::Write;
use std::panic::{self, AssertUnwindSafe};

use clap::Parser;
use simple_spectrum_core::{enumerate_simple_groups, EnumerateOptions, GroupRecord};

use config::{parse_config, Cli, CliError, RunConfig};

fn main() {
    let cli = Cli::parse();
    match panic::catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => {}
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
        Err(_) => {
            // the panic message has already been printed by the hook
            eprintln!("error: internal assertion failure");
            std::process::exit(3);
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = parse_config(cli)?;
    let records = obtain_records(&config)?;
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    report::emit_report(&records, &config, &mut out)
        .and_then(|()| out.flush())
        .map_err(|e| CliError::Io(format!("output truncated: {e}")))
}

fn obtain_records(config: &RunConfig) -> Result<Vec<GroupRecord>, CliError> {
    let digest = cache::config_digest(&config.pi, env!("CARGO_PKG_VERSION"), config.k_margin);
    if let Some(path) = &config.cache_path {
        match cache::load(path, &digest) {
            cache::CacheOutcome::Hit(records) => return Ok(records),
            cache::CacheOutcome::NoFile => {}
            cache::CacheOutcome::Mismatch => eprintln!(
                "warning: cache at {} belongs to a different configuration; recomputing",
                path.display()
            ),
            cache::CacheOutcome::Corrupt(reason) => eprintln!(
                "warning: ignoring unreadable cache at {}: {reason}",
                path.display()
            ),
        }
    }
    let options = EnumerateOptions {
        k_margin: config.k_margin,
        rank_margin: 1,
        rank_early_exit: config.rank_early_exit,
    };
    let records = match config.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| CliError::Internal(format!("cannot build worker pool: {e}")))?;
            pool.install(|| enumerate_simple_groups(&config.pi, &options))
        }
        None => enumerate_simple_groups(&config.pi, &options),
    };
    if let Some(path) = &config.cache_path {
        if let Err(e) = cache::store(path, &digest, &records) {
            eprintln!("warning: could not write cache at {}: {e}", path.display());
        }
    }
    Ok(records)
}
