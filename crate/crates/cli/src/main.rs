//! `copspace`: solve discrete games, build spaces, simulate and verify.
//!
//! Exit codes: 0 pass, 1 invariant failure or illegal move, 2 usage or bad
//! input, 3 solver budget exceeded.

mod build;
mod error;
mod simulate;
mod solve;
mod source;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "copspace", version, about = "Cops and Robber on metric graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the discrete game: cop number and strategy table.
    Solve(solve::SolveArgs),
    /// Build a space file.
    #[command(subcommand)]
    Build(build::BuildCommand),
    /// Play a game and write its trace as JSON lines.
    Simulate(simulate::SimulateArgs),
    /// Re-check invariants on a space and, optionally, a trace.
    Verify(verify::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve::run(a),
        Command::Build(c) => build::run(c),
        Command::Simulate(a) => simulate::run(a),
        Command::Verify(a) => verify::run(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(error::INVARIANT),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
