//! Subcommand implementations.

pub mod absorb;
pub mod classify;
pub mod curves;
pub mod fit;
pub mod simulate;
pub mod tables;

use crate::config::{FixtureSeries, LoadedConfig, MetaConfig};
use crate::error::{CliError, Result};
use std::path::Path;
use subthresh_analysis::fixtures::{all_pairs, SeriesPair};
use subthresh_analysis::{Illumination, MeasurementSeries};

/// Names of the bundled series pairs.
pub fn fixture_names() -> Vec<&'static str> {
    all_pairs().map(|v| v.iter().map(|p| p.name).collect()).unwrap_or_default()
}

pub fn fixture(name: &str) -> Result<SeriesPair> {
    all_pairs()?
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| CliError::Validation(format!("unknown fixture `{name}`; available: {}", fixture_names().join(", "))))
}

/// Reads a measurement CSV; parse errors carry the file and line number.
pub fn read_series(loaded: &LoadedConfig, path: &Path, meta: &MetaConfig, illumination: Illumination) -> Result<MeasurementSeries> {
    let full = loaded.resolve(path);
    let file = std::fs::File::open(&full).map_err(|e| CliError::io(format!("cannot open {}", full.display()), e))?;
    MeasurementSeries::from_csv(file, meta.to_meta(illumination)?)
        .map_err(|e| CliError::Validation(format!("{}: {e}", full.display())))
}

pub(crate) fn fixture_series(pair: SeriesPair, which: FixtureSeries) -> Vec<MeasurementSeries> {
    match which {
        FixtureSeries::Entangled => vec![pair.entangled],
        FixtureSeries::Coherent => vec![pair.coherent],
        FixtureSeries::Both => vec![pair.entangled, pair.coherent],
    }
}
