//! Command-line front end for the subthreshold photoemission and
//! absorption toolkit. Each subcommand is a function from a loaded
//! configuration to output artifacts, so it can be driven from tests.

pub mod commands;
pub mod config;
pub mod error;
pub mod provenance;

use clap::{Parser, Subcommand};
use std::path::{Path, PathBuf};

pub use config::{load, LoadedConfig, RunConfig};
pub use error::{CliError, Result};
pub use provenance::Provenance;

#[derive(Debug, Parser)]
#[command(name = "subthresh", version, about = "Subthreshold photoemission and absorption toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// TOML configuration file (built-in defaults when omitted).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output file, or directory for multi-file outputs; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Master seed for stochastic commands (same as `--set simulate.seed=N`).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Dotted configuration override, e.g. `--set curves.t_e_points=7`.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    pub set: Vec<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Entangled-two-photon count rate versus entanglement time (CSV).
    Curves,
    /// Weighted least-squares fit of the current model (JSON).
    Fit,
    /// Scaling-regime classification with closed-form extraction (JSON).
    Classify,
    /// Monte-Carlo pair-stream simulation (JSON; sweep CSV).
    Simulate,
    /// Entangled-two-photon absorption cross sections and rates (JSON).
    Absorb,
    /// Recomputed reference-table quantities with relative deviations.
    Tables {
        /// Restrict to these tables (e.g. `8 9`).
        #[arg(long, num_args = 1..)]
        only: Vec<String>,
    },
}

/// One output file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

/// Loaded configuration plus the echoed overrides.
#[derive(Debug, Clone)]
pub struct Context {
    pub loaded: LoadedConfig,
    pub overrides: Vec<String>,
}

impl Context {
    /// `seed`, when given, is applied as a final `simulate.seed` override.
    pub fn new(config: Option<&Path>, set: &[String], seed: Option<u64>) -> Result<Self> {
        let mut overrides = set.to_vec();
        if let Some(s) = seed {
            overrides.push(format!("simulate.seed={s}"));
        }
        let loaded = config::load(config, &overrides)?;
        Ok(Self { loaded, overrides })
    }

    pub fn config(&self) -> &RunConfig {
        &self.loaded.config
    }

    pub fn provenance(&self, command: &'static str) -> Provenance {
        Provenance::new(command, &self.loaded.document, &self.overrides)
    }
}

/// Runs one subcommand.
pub fn execute(ctx: &Context, command: &Command) -> Result<Vec<Artifact>> {
    match command {
        Command::Curves => commands::curves::run(ctx),
        Command::Fit => commands::fit::run(ctx),
        Command::Classify => commands::classify::run(ctx),
        Command::Simulate => commands::simulate::run(ctx),
        Command::Absorb => commands::absorb::run(ctx),
        Command::Tables { only } => {
            let mut ids = ctx.config().tables.only.clone();
            ids.extend(only.iter().cloned());
            commands::tables::run(ctx, &ids)
        }
    }
}

/// Writes artifacts to `out` (a file when there is exactly one and `out`
/// is not an existing directory; a directory otherwise) or concatenates
/// them on stdout.
pub fn emit(artifacts: &[Artifact], out: Option<&Path>) -> Result<()> {
    use std::io::Write;
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            for a in artifacts {
                stdout
                    .write_all(a.contents.as_bytes())
                    .map_err(|e| CliError::io("cannot write to stdout", e))?;
            }
            Ok(())
        }
        Some(p) if artifacts.len() == 1 && !p.is_dir() => write_file(p, &artifacts[0].contents),
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("cannot create {}", dir.display()), e))?;
            for a in artifacts {
                write_file(&dir.join(&a.name), &a.contents)?;
            }
            Ok(())
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(format!("cannot write {}", path.display()), e))
}

/// Serializes a report as pretty JSON with a trailing newline.
pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Numerical(format!("cannot serialize report: {e}")))
}
