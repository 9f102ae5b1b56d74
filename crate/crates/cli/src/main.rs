mod args;
mod commands;

use std::fmt;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    /// Validation ran and found a discrepancy (exit 1).
    Validation(String),
    /// Bad flags or parameters (exit 2).
    Config(String),
    /// Output could not be written (exit 3).
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation failed: {m}"),
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Io(m) => write!(f, "cannot write output: {m}"),
        }
    }
}

impl From<jcdamp::Error> for CliError {
    fn from(e: jcdamp::Error) -> Self {
        use jcdamp::Error::*;
        match e {
            InvalidParams(_) | InvalidArgument(_) | UnknownFamily(_) | UnknownAxis(_) | StepTooLarge { .. } => {
                CliError::Config(e.to_string())
            }
            // a numerical self-check tripped while evaluating
            NormGrowth { .. } | NotHermitian { .. } | NotPositive { .. } | NotXState { .. } | ZeroTrace(_) => {
                CliError::Validation(e.to_string())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let execution = cli.execution();
    let result = match &cli.command {
        Command::Evolve(a) => commands::evolve(a, execution),
        Command::Sweep(a) => commands::sweep(a, execution),
        Command::Sde(a) => commands::sde(a, execution),
        Command::Validate(a) => commands::validate(a, execution),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("jcdamp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
