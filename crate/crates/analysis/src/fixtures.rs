//! Bundled reference series: entangled-light measurements paired with a
//! coherent control, for the three scaling regimes.

use crate::error::Result;
use crate::series::{Illumination, MeasurementSeries, SeriesMeta};
use subthresh_core::SpectralPoint;
use subthresh_sources::OpticalPath;

/// Entangled series and its coherent control.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPair {
    pub name: &'static str,
    pub entangled: MeasurementSeries,
    pub coherent: MeasurementSeries,
}

fn pair(name: &'static str, nm: f64, path: OpticalPath, entangled: &str, coherent: &str) -> Result<SeriesPair> {
    let spectrum = SpectralPoint::from_wavelength_nm(nm).map_err(|e| crate::AnalysisError::Missing(e.to_string()))?;
    let meta = |illumination| SeriesMeta::new(spectrum, path, illumination);
    Ok(SeriesPair {
        name,
        entangled: MeasurementSeries::from_csv(entangled.as_bytes(), meta(Illumination::Entangled))?,
        coherent: MeasurementSeries::from_csv(coherent.as_bytes(), meta(Illumination::Coherent))?,
    })
}

/// 800 nm photon counting against incident power on a 1e-8 m² spot: the
/// entangled and coherent rates coincide and grow linearly (Fermi tail).
pub fn linear_pair() -> Result<SeriesPair> {
    pair(
        "linear-800nm",
        800.0,
        OpticalPath::direct(1e-8)?,
        include_str!("../fixtures/linear_800nm_entangled.csv"),
        include_str!("../fixtures/linear_800nm_coherent.csv"),
    )
}

/// Path used by the 1064 nm pairs: 𝒯 = 𝒯₀ = 0.7 onto A = 1.6e-9 m².
pub fn nir_path() -> Result<OpticalPath> {
    Ok(OpticalPath::new(0.7, 0.7, 1.6e-9, 1.0, 1.0)?)
}

/// 1064 nm at 50–230 W/m²: the entangled rate is linear and far above a
/// quadratic coherent control.
pub fn entangled_pair() -> Result<SeriesPair> {
    pair(
        "low-intensity-1064nm",
        1064.0,
        nir_path()?,
        include_str!("../fixtures/low_intensity_1064nm_entangled.csv"),
        include_str!("../fixtures/low_intensity_1064nm_coherent.csv"),
    )
}

/// 1064 nm at 500–20000 W/m²: both rates are quadratic and equal.
pub fn quadratic_pair() -> Result<SeriesPair> {
    pair(
        "high-intensity-1064nm",
        1064.0,
        nir_path()?,
        include_str!("../fixtures/high_intensity_1064nm_entangled.csv"),
        include_str!("../fixtures/high_intensity_1064nm_coherent.csv"),
    )
}

pub fn all_pairs() -> Result<Vec<SeriesPair>> {
    Ok(vec![linear_pair()?, entangled_pair()?, quadratic_pair()?])
}
