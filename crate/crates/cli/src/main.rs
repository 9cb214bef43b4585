//! `burnoff`: exact and simulated length distributions of burn-off games.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a mismatch, 2 on bad
//! input (usage errors, unreadable or malformed files, unsupported graphs).

mod args;
mod commands;
mod error;
mod source;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(cli: Cli) -> Result<String, CliError> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads as usize)
            .build_global()
            .map_err(|e| CliError::input(format!("cannot start {threads} threads: {e}")))?;
    }
    match cli.command {
        Command::Analyze(a) => commands::analyze(a),
        Command::Simulate(a) => commands::simulate_cmd(a),
        Command::Verify(a) => commands::verify(a),
        Command::Bijection(a) => commands::bijection(a),
        Command::Enumerate(a) => commands::enumerate(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(output.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
