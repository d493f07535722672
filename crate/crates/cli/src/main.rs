use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use ptlattice::{parse_with_overrides, resolve_workers, run, CliError, Command, WORKERS_ENV};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CommandArg {
    Spectrum,
    Threshold,
    PhaseDiagram,
    RingThreshold,
    Verify,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Self {
        match c {
            CommandArg::Spectrum => Command::Spectrum,
            CommandArg::Threshold => Command::Threshold,
            CommandArg::PhaseDiagram => Command::PhaseDiagram,
            CommandArg::RingThreshold => Command::RingThreshold,
            CommandArg::Verify => Command::Verify,
        }
    }
}

/// PT-symmetric pseudospin lattices: spectra, thresholds and phase diagrams.
#[derive(Debug, Parser)]
#[command(name = "ptlattice", version)]
struct Cli {
    command: CommandArg,

    /// TOML job file.
    #[arg(long)]
    config: PathBuf,

    /// Override a config key (N, m, t_d or gamma); repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Output directory, created if missing.
    #[arg(long)]
    out: PathBuf,
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&cli.config).map_err(|source| CliError::Io { path: cli.config.clone(), source })?;
    let job = parse_with_overrides(&text, Some(cli.command.into()), &cli.set)?;
    let workers = resolve_workers(&job, std::env::var(WORKERS_ENV).ok().as_deref())?;
    let outcome = run(&job, &cli.out, workers)?;
    for path in &outcome.files {
        println!("{}", path.display());
    }
    for message in &outcome.messages {
        eprintln!("ptlattice: {message}");
    }
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("ptlattice: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
