use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fracopt::cli::{run, Command};

#[derive(Parser)]
#[command(version, about = "Penalized optimal control of the fractional heat equation")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dump the stiffness and mass matrices
    Assemble(Common),
    /// Solve the state equation for f + z and report its norms
    SolveState(Common),
    /// Run the penalty path and fit the violation rate
    Sweep(Common),
    /// Run the invariant suite and print a pass/fail table
    Verify(Common),
}

#[derive(clap::Args)]
struct Common {
    config: PathBuf,
    #[arg(long)]
    output_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let (command, common) = match Args::parse().command {
        Cmd::Assemble(c) => (Command::Assemble, c),
        Cmd::SolveState(c) => (Command::SolveState, c),
        Cmd::Sweep(c) => (Command::Sweep, c),
        Cmd::Verify(c) => (Command::Verify, c),
    };
    let status = run(command, &common.config, common.output_dir);
    ExitCode::from(status.code() as u8)
}
