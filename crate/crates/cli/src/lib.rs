//! Command-line front end: TOML job files in, CSV and JSON out.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{parse_config, parse_with_overrides, Command, JobConfig};
pub use error::CliError;
pub use run::{resolve_workers, run, RunOutcome, WORKERS_ENV};
