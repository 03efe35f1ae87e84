use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fiberfield::cli::{run_file, CliError, Command, Report};

#[derive(Parser)]
#[command(name = "fiberfield", version, about = "Exact derivation algebras and Lie cohomology of curve families")]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(clap::Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Reduction-step budget, overriding the config.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve for the bounded derivation slice of a curve or family.
    DerSolve(Common),
    /// Chevalley-Eilenberg cohomology of Witt windows, punctured lines or tables.
    Cohomology(Common),
    /// Run a named example pipeline.
    Example {
        /// scaled-bracket, fs-elliptic or cusp-degeneration; overrides the config.
        name: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<(), CliError> {
    for alert in &report.alerts {
        eprintln!("ALERT: {alert}");
    }
    let text = report.to_json();
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Config(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (command, common, name) = match args.command {
        Cmd::DerSolve(c) => (Command::DerSolve, c, None),
        Cmd::Cohomology(c) => (Command::Cohomology, c, None),
        Cmd::Example { name, common } => (Command::Example, common, name),
    };
    let result = std::panic::catch_unwind(|| {
        let report = match name {
            Some(n) => {
                let text = std::fs::read_to_string(&common.config)
                    .map_err(|e| CliError::Config(format!("{}: {e}", common.config.display())))?;
                let mut cfg = fiberfield::cli::RunConfig::from_json(&text).map_err(CliError::config)?;
                cfg.example = Some(n);
                fiberfield::cli::run(command, cfg, common.budget)?
            }
            None => run_file(command, &common.config, common.budget)?,
        };
        let out = common.out.clone().or_else(|| report.config.output.clone().map(PathBuf::from));
        emit(&report, out.as_ref())
    });
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("fiberfield: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => {
            eprintln!("fiberfield: internal invariant violated");
            ExitCode::from(4)
        }
    }
}
