//! Command-line front end for the gwdk measurement-chain models.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::RunConfig;
pub use error::{CliError, Result};
pub use output::Format;

#[derive(Debug, Parser)]
#[command(name = "gwdk", version, about = "Graviton detection measurement-chain calculator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Run configuration (JSON, or TOML with a .toml extension).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides `output.dir` in the config.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// RNG seed; overrides `seed` in the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Output noise budget (interferometer) or position spectrum (bar).
    Spectrum,
    /// Detection efficiency for a detector and source, with optional distance sweep.
    Efficiency,
    /// Wave/particle response matrix for both transducers and both readouts.
    Table1,
    /// Seeded click stream from the counting rate.
    Clicks,
    /// Graviton flux carried by a field state.
    Flux,
}

/// Runs a parsed command line; returns the written paths.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::from_path(p)?,
        None => RunConfig::default(),
    };
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    let report = match cli.command {
        Command::Spectrum => commands::spectrum(&cfg, seed)?,
        Command::Efficiency => commands::efficiency(&cfg, seed)?,
        Command::Table1 => commands::table1(&cfg, seed)?,
        Command::Clicks => commands::clicks(&cfg, seed)?,
        Command::Flux => commands::flux(&cfg, seed)?,
    };
    let dir = cli
        .out
        .clone()
        .or_else(|| cfg.output.as_ref().map(|o| o.dir.clone()))
        .unwrap_or_else(|| PathBuf::from("."));
    output::emit(&report, &dir, cli.format)
}
