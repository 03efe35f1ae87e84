//! Config-driven subcommands that emit versioned JSON reports.

mod cohomology;
pub mod config;
mod der_solve;
mod examples;
mod json;

use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub use config::{CohomologyConfig, CurveConfig, CurveKind, GradingConfig, RunConfig, WindowShape};
pub use examples::EXAMPLES;

use crate::error::Error;

pub const SCHEMA: &str = "fiberfield-report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    DerSolve,
    Cohomology,
    Example,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::DerSolve => "der-solve",
            Command::Cohomology => "cohomology",
            Command::Example => "example",
        }
    }
}

/// A failed run, classified by the exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("resource budget exhausted: {0}")]
    Budget(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    /// Errors raised while reading the config and building its inputs.
    pub fn config(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

/// Errors raised during computation. Poles come from evaluation points the
/// config should have avoided, so they count as config errors.
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            Error::Pole { .. } => CliError::Config(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What a subcommand produced: the payload plus findings worth shouting about.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub results: Value,
    pub alerts: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: Command,
    pub config: RunConfig,
    pub results: Value,
    /// Findings that contradict an expectation without failing the run.
    pub alerts: Vec<String>,
    pub timing_ms: u64,
}

impl Report {
    /// Everything except the timing, which is the part that may differ
    /// between identical runs.
    pub fn payload(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("timing_ms");
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Runs one subcommand. A budget override replaces the one in the config.
pub fn run(command: Command, mut config: RunConfig, budget: Option<u64>) -> CliResult<Report> {
    if let Some(b) = budget {
        config.budget = Some(b);
    }
    config.validate().map_err(CliError::config)?;
    let start = Instant::now();
    let outcome = match command {
        Command::DerSolve => der_solve::run(&config)?,
        Command::Cohomology => cohomology::run(&config)?,
        Command::Example => examples::run(&config)?,
    };
    Ok(Report {
        schema: SCHEMA,
        version: VERSION,
        command,
        config,
        results: outcome.results,
        alerts: outcome.alerts,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

/// Reads and runs a config file.
pub fn run_file(command: Command, path: &std::path::Path, budget: Option<u64>) -> CliResult<Report> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let config = RunConfig::from_json(&text).map_err(CliError::config)?;
    run(command, config, budget)
}
