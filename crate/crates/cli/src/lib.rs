//! Batch front end for `remezkit`: argument handling, command runners and
//! the verification criteria.

pub mod args;
pub mod commands;
pub mod error;
pub mod verify;

pub use error::{CliError, CliResult};

/// Caps the global thread pool from `REMEZKIT_THREADS`, if set.
pub fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("REMEZKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::input("REMEZKIT_THREADS", format!("expected a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Numeric(e.to_string()))
}

/// Runs a full invocation and returns the report text.
pub fn execute(cli: args::Cli) -> CliResult<(String, Option<std::path::PathBuf>)> {
    let (kind, params) = args::resolve(cli)?;
    let out = params.out.clone();
    let text = commands::run(kind, &params)?;
    Ok((text, out))
}
