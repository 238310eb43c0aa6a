//! `fit`: weighted least-squares fit of the current model to one series,
//! or jointly to a series and its coherent control.

use super::{fixture, fixture_series, read_series};
use crate::config::FixtureSeries;
use crate::error::{CliError, Result};
use crate::{to_json, Artifact, Context};
use serde::Serialize;
use std::collections::BTreeMap;
use subthresh_analysis::{
    classify_scaling, fit_current_model, ExtractionResult, FitOptions, Illumination, MeasurementSeries, ModelStructure,
    ScalingLabel,
};
use subthresh_core::constants::E_CHARGE;

#[derive(Debug, Serialize)]
struct SeriesInfo {
    illumination: Illumination,
    wavelength_nm: f64,
    points: usize,
    drive_unit: &'static str,
    response_unit: &'static str,
}

#[derive(Debug, Serialize)]
struct Derived {
    /// η_E = R_E·hν/e with the first series' photon energy.
    eta_e: f64,
    eta_e_sigma: f64,
}

#[derive(Debug, Serialize)]
struct FitReport {
    provenance: crate::Provenance,
    source: String,
    series: Vec<SeriesInfo>,
    units: BTreeMap<&'static str, &'static str>,
    fit: ExtractionResult,
    chi2_reduced: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    derived: Option<Derived>,
}

pub fn units() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([("i_d", "A"), ("r_f", "A/W"), ("l_c", "A·m²/W²"), ("r_e", "A/W")])
}

/// Bundled pairs are dark-subtracted and each is dominated by one process,
/// so the full parameter set is degenerate on them; the scaling label picks
/// the terms the data can resolve.
fn fixture_free_set(name: &str, which: FixtureSeries) -> Result<Option<Vec<&'static str>>> {
    let pair = fixture(name)?;
    let label = classify_scaling(&pair.entangled, &pair.coherent, None)?.label;
    Ok(match (label, which) {
        (Some(ScalingLabel::Ftp), _) => Some(vec!["r_f"]),
        (Some(ScalingLabel::Etpp), FixtureSeries::Entangled) => Some(vec!["r_e"]),
        (Some(ScalingLabel::Etpp), FixtureSeries::Both) => Some(vec!["l_c", "r_e"]),
        (Some(ScalingLabel::Etpp | ScalingLabel::Tpp), _) => Some(vec!["l_c"]),
        _ => None,
    })
}

pub fn run(ctx: &Context) -> Result<Vec<Artifact>> {
    let c = &ctx.config().fit;
    let (source, series): (String, Vec<MeasurementSeries>) = match (&c.fixture, &c.data) {
        (Some(name), None) => (format!("fixture:{name}"), fixture_series(fixture(name)?, c.series)),
        (None, Some(data)) => {
            let mut v = vec![read_series(&ctx.loaded, data, &c.meta, c.meta.illumination)?];
            if let Some(ctrl) = &c.control {
                v.push(read_series(&ctx.loaded, ctrl, &c.meta, Illumination::Coherent)?);
            }
            (data.display().to_string(), v)
        }
        (Some(_), Some(_)) => return Err(CliError::Validation("fit: give either `fixture` or `data`, not both".into())),
        (None, None) => {
            return Err(CliError::Validation(
                "fit: no input; set `fit.data` to a measurement CSV or `fit.fixture` to a bundled pair".into(),
            ))
        }
    };
    let illumination = series[0].meta.illumination;
    let names: Option<Vec<&str>> = match (&c.free, &c.fixture) {
        (Some(names), _) => Some(names.iter().map(String::as_str).collect()),
        (None, Some(name)) => fixture_free_set(name, c.series)?,
        (None, None) => None,
    };
    let structure = match names {
        Some(names) => ModelStructure::new(&names, c.fixed.into())?,
        None => ModelStructure {
            fixed: c.fixed.into(),
            ..ModelStructure::default_for(illumination)
        },
    };
    let refs: Vec<&MeasurementSeries> = series.iter().collect();
    let options = FitOptions {
        residuals: c.residuals,
        initial: None,
    };
    let fit = fit_current_model(&refs, &structure, &options)?;
    for w in &fit.warnings {
        eprintln!("warning: {w}");
    }
    let derived = structure.free[3].then(|| {
        let k = series[0].meta.spectrum.photon_energy_j() / E_CHARGE;
        Derived {
            eta_e: fit.params.r_e * k,
            eta_e_sigma: fit.sigmas[3] * k,
        }
    });
    let report = FitReport {
        provenance: ctx.provenance("fit"),
        source,
        series: series
            .iter()
            .map(|s| SeriesInfo {
                illumination: s.meta.illumination,
                wavelength_nm: s.meta.spectrum.wavelength_nm(),
                points: s.samples.len(),
                drive_unit: s.drive_unit.tag(),
                response_unit: s.response_unit.tag(),
            })
            .collect(),
        units: units(),
        chi2_reduced: fit.chi2_reduced(),
        fit,
        derived,
    };
    Ok(vec![Artifact {
        name: "fit.json".into(),
        contents: to_json(&report)?,
    }])
}
