//! `entrocone`: verification and exploration runs over four-variable
//! entropy cones.
//!
//! Exit codes: 0 success, 1 verification failure, 2 internal invariant
//! breach, 3 input error.

mod commands;
mod error;
mod inputs;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use entrocone::Base;

use crate::error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "entrocone", version, about = "Entropy cones of four random variables")]
struct Cli {
    /// Logarithm base for entropies: 2, 3, e, or a rational > 1.
    #[arg(long, global = true, default_value = "2")]
    base: String,

    /// Worker threads (default: logical cores).
    #[arg(long, global = true, env = "ENTROCONE_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the base-simplex chart of the non-Ingleton cone.
    #[command(name = "verify-table1")]
    VerifyTable1(commands::table1::Table1Args),
    /// Enumerate extremal rays of the Shannon or Abelian cone on Λ4.
    Rays(commands::rays::RaysArgs),
    /// Test a 15-coordinate vector for cone membership.
    Check(commands::check::CheckArgs),
    /// Intrinsic entropy distance between two diagrams.
    Ikd(commands::ikd::IkdArgs),
    /// Expand terminal spaces of a diagram by independent noise.
    Expand(commands::expand::ExpandArgs),
    /// Sample entropic points and tabulate the inner bound.
    Explore(commands::explore::ExploreArgs),
    /// Parse and validate a diagram, space, joint, group or category file.
    Validate(commands::validate::ValidateArgs),
}

/// Output options shared by commands.
#[derive(Args, Debug, Clone)]
pub struct OutArgs {
    /// Write the result here (a manifest is written alongside).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn configure_threads(threads: Option<usize>) -> CliResult<()> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Input("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads(cli.threads)?;
    let base: Base = cli.base.parse()?;
    match cli.command {
        Command::VerifyTable1(a) => commands::table1::run(a),
        Command::Rays(a) => commands::rays::run(a),
        Command::Check(a) => commands::check::run(a),
        Command::Ikd(a) => commands::ikd::run(a, &base),
        Command::Expand(a) => commands::expand::run(a, &base),
        Command::Explore(a) => commands::explore::run(a, &base),
        Command::Validate(a) => commands::validate::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
