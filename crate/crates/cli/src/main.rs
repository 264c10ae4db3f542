use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use remezkit_cli::args::Cli;
use remezkit_cli::{configure_threads, execute, CliError};

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::input("out", format!("cannot write `{}`: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::input("out", e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.command.clone().and_then(|c| c.split().1.out);
    let result = configure_threads().and_then(|_| execute(cli)).and_then(|(text, out)| emit(&text, out.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let CliError::Verification { report, .. } = &e {
                let _ = emit(report, out.as_deref());
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
