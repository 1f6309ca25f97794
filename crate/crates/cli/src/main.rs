mod args;
mod commands;
mod parse;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cannot write {0}: {1}")]
    Io(String, std::io::Error),
    #[error(transparent)]
    Core(#[from] heisenberg_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(heisenberg_core::Error::NoConvergence { .. }) => 1,
            CliError::Io(..) => 1,
            _ => 2,
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (report, output) = match &cli.command {
        Command::Distance(a) => (commands::distance_cmd(a)?, &a.output),
        Command::Geodesic(a) => (commands::geodesic_cmd(a)?, &a.output),
        Command::Integrate(a) => (commands::integrate_cmd(a)?, &a.output),
        Command::VerifyTheorem(a) => (commands::theorem_cmd(a)?, &a.output),
        Command::VerifyRiemannian(a) => (commands::riemannian_cmd(a)?, &a.output),
        Command::Spiral(a) => (commands::spiral_cmd(a)?, &a.output),
        Command::Isometry(a) => (commands::isometry_cmd(a)?, &a.output),
        Command::SeriesDump(a) => (commands::series_cmd(a)?, &a.output),
    };
    report.write(output.format, output.out.as_deref())?;
    for a in report.assertions.iter().filter(|a| !a.pass) {
        eprintln!("assertion failed: {}: {}", a.name, a.detail);
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
