//! Command-line front end: certificates for `SU(n)`, root-system tables and
//! finite-group oracles. Exit codes: 1 usage or I/O, 2 precondition, 3 a
//! check that ran and failed.

use std::io::{self, Write};

pub mod args;
mod decomp;
mod info;

pub use args::Cli;
pub use decomp::{run_trials, TrialEntry, TrialReport};

use args::Command;

#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let g = &cli.global;
    if !(g.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", g.tol)));
    }
    match &cli.command {
        Command::Bound { theta } => decomp::cmd_bound(*theta, g, out),
        Command::Decompose(a) => decomp::cmd_decompose(a, g, out),
        Command::Verify { file } => decomp::cmd_verify(file, g, out),
        Command::Trials(a) => decomp::cmd_trials(a, g, out),
        Command::Rootinfo { descriptor, minimal } => info::cmd_rootinfo(descriptor, *minimal, g, out),
        Command::Oracles(c) => info::cmd_oracles(c, g, out),
    }
}

/// Parses and runs a command line in-process; returns the exit code main
/// would use and everything written to stdout.
#[cfg(test)]
pub(crate) fn exec(args: &[&str]) -> (i32, String) {
    use clap::Parser;
    let cli = match Cli::try_parse_from(std::iter::once("conjwidth").chain(args.iter().copied())) {
        Ok(c) => c,
        Err(e) => {
            let ok = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            return (if ok { 0 } else { 1 }, e.to_string());
        }
    };
    let mut out = Vec::new();
    let code = match run(&cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            out.extend_from_slice(format!("error: {e}\n").as_bytes());
            e.code()
        }
    };
    (code, String::from_utf8(out).expect("utf-8 output"))
}
