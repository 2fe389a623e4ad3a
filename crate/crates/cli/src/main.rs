mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Failures mapped onto the exit-code contract: 1 for domain/I/O errors,
/// 2 for usage errors.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(planar_array::Error),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<planar_array::Error> for CliError {
    fn from(e: planar_array::Error) -> Self {
        CliError::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // help/version exit 0, parse errors exit 2
        Err(e) => e.exit(),
    };
    let g = &cli.global;
    let result = match &cli.command {
        Command::Af(a) => commands::af(g, a),
        Command::Pattern(a) => commands::pattern(g, a),
        Command::Cut(a) => commands::cut(g, a),
        Command::Sweep(a) => commands::sweep(g, a),
        Command::Nulls(a) => commands::nulls(g, a),
        Command::Peaks(a) => commands::peaks(g, a),
        Command::Directivity(a) => commands::directivity(g, a),
        Command::Steer(a) => commands::steer(g, a),
        Command::Fig3(a) => commands::fig3(g, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
