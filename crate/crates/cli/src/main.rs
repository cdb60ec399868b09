#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;

use config::{Config, Overrides};

type Handler = fn(&Config, &Overrides) -> Result<(), CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{0}")]
    Numerical(heavytail::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Domain errors come from bad parameters, so they are config errors for `section`.
    pub fn field(section: &str, e: heavytail::Error) -> Self {
        match e {
            heavytail::Error::Domain(msg) => CliError::Config(format!("{section}: {msg}")),
            other => CliError::Numerical(other),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<heavytail::Error> for CliError {
    fn from(e: heavytail::Error) -> Self {
        CliError::field("parameters", e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// Simulate and classify reflected Markov chains driven by heavy-tailed innovations.
#[derive(Debug, Parser)]
#[command(name = "heavytail", version)]
struct Cli {
    /// TOML file with [model], [innovation] and [run] sections; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print the effective configuration as TOML and exit.
    #[arg(long, global = true)]
    print_config: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the regime and moment threshold as JSON.
    Classify(Overrides),
    /// Tabulate K, L and the critical roots over grids.
    Constants(Overrides),
    /// Write one trajectory as CSV.
    Simulate(Overrides),
    /// Run a passage-time campaign; writes samples.csv and summary.json under --out.
    Passage(Overrides),
    /// Check a drift inequality on a grid of states.
    DriftCheck(Overrides),
    /// Classify over a (gamma, theta) grid as long-format CSV.
    PhaseSweep(Overrides),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let (o, cmd): (&Overrides, Handler) = match &cli.command {
        Command::Classify(o) => (o, commands::classify),
        Command::Constants(o) => (o, commands::constants),
        Command::Simulate(o) => (o, commands::simulate),
        Command::Passage(o) => (o, commands::passage),
        Command::DriftCheck(o) => (o, commands::drift_check),
        Command::PhaseSweep(o) => (o, commands::phase_sweep),
    };
    cfg.apply(o);
    if cli.print_config {
        print!("{}", cfg.to_toml());
        return Ok(());
    }
    cmd(&cfg, o)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("heavytail: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
