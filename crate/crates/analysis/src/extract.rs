//! Closed-form CW-equivalent extraction of R_F, 𝓛_C, and η_E.

use crate::error::{AnalysisError, Result};
use crate::model::{CurrentParams, SeriesModel};
use crate::segment::{loglog_fit, PowerLawFit};
use crate::series::{Illumination, MeasurementSeries};
use serde::Serialize;
use subthresh_core::constants::E_CHARGE;

/// Half-width of the slope band accepted by the extractors.
pub const SLOPE_BAND: f64 = 0.1;

/// Inverse-variance-weighted estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    /// Standard uncertainty, inflated by √χ²_red when χ²_red > 1.
    pub sigma: f64,
    pub chi2_red: f64,
    pub n: usize,
    /// Log–log slope of the isolated contribution, when measurable.
    pub slope: Option<f64>,
    pub warnings: Vec<String>,
}

/// Weighted mean of `(value, sigma)` pairs with reduced-χ² inflation.
pub fn aggregate(points: &[(f64, f64)]) -> Result<Estimate> {
    if points.is_empty() {
        return Err(AnalysisError::InvalidSeries("nothing to aggregate".into()));
    }
    let (mut sw, mut swx) = (0.0, 0.0);
    for &(x, s) in points {
        let w = 1.0 / (s * s);
        sw += w;
        swx += w * x;
    }
    let mean = swx / sw;
    let n = points.len();
    let chi2_red = if n > 1 {
        points.iter().map(|&(x, s)| ((x - mean) / s).powi(2)).sum::<f64>() / (n - 1) as f64
    } else {
        0.0
    };
    let mut sigma = 1.0 / sw.sqrt();
    if chi2_red > 1.0 {
        sigma *= chi2_red.sqrt();
    }
    let mut warnings = Vec::new();
    let value = if mean < 0.0 {
        warnings.push(format!("negative estimate {mean:e} clamped to 0"));
        0.0
    } else {
        mean
    };
    Ok(Estimate {
        value,
        sigma,
        chi2_red,
        n,
        slope: None,
        warnings,
    })
}

/// Isolates parameter `slot` by subtracting the known contributions,
/// checks the drive exponent, and aggregates per-point estimates.
fn extract_slot(
    series: &MeasurementSeries,
    knowns: &CurrentParams,
    slot: usize,
    regime: &'static str,
    exponent: f64,
) -> Result<Estimate> {
    let model = SeriesModel::of(series);
    let known = knowns.to_array();
    let mut points = Vec::with_capacity(series.samples.len());
    let mut xy = Vec::new();
    for s in &series.samples {
        let b = model.basis(s.drive);
        if b[slot] <= 0.0 {
            continue;
        }
        let others: f64 = (0..4).filter(|&k| k != slot).map(|k| known[k] * b[k]).sum();
        let signal = s.response - others;
        points.push((signal / b[slot], s.sigma / b[slot]));
        xy.push((s.drive, signal));
    }
    if points.is_empty() {
        return Err(AnalysisError::InvalidSeries(format!("no sample carries a {regime} contribution")));
    }
    let fit = slope_of(&xy);
    if let Some(f) = fit {
        if (f.slope - exponent).abs() > SLOPE_BAND {
            return Err(AnalysisError::Regime {
                regime,
                slope: f.slope,
                expected: exponent,
                band: SLOPE_BAND,
            });
        }
    }
    let mut est = aggregate(&points)?;
    est.slope = fit.map(|f| f.slope);
    if fit.is_none() {
        est.warnings.push("fewer than two positive points: drive exponent not verified".into());
    }
    Ok(est)
}

fn slope_of(xy: &[(f64, f64)]) -> Option<PowerLawFit> {
    let (x, y): (Vec<f64>, Vec<f64>) = xy.iter().filter(|p| p.0 > 0.0 && p.1 > 0.0).copied().unzip();
    if x.len() < 2 {
        return None;
    }
    loglog_fit(&x, &y)
}

/// CW-equivalent Fermi-tail responsivity `R_F = (ī − i_D)/(𝓕𝒯P₀)` (A/W);
/// the series must scale linearly (slope 1 ± 0.1). Known `L_C`, `R_E`
/// contributions in `knowns` are subtracted first.
pub fn extract_rf(series: &MeasurementSeries, knowns: &CurrentParams) -> Result<Estimate> {
    let k = CurrentParams {
        r_f: 0.0,
        r_e: if series.meta.illumination == Illumination::Entangled { knowns.r_e } else { 0.0 },
        ..*knowns
    };
    extract_slot(series, &k, 1, "linear", 1.0)
}

/// Two-photon responsivity coefficient `𝓛_C = (ī − i_D − linear)/(𝓕(𝒯P₀)²g₂Γ/A)`
/// (A·m²/W²); the isolated contribution must scale quadratically (2 ± 0.1).
pub fn extract_lc(series: &MeasurementSeries, knowns: &CurrentParams) -> Result<Estimate> {
    let k = CurrentParams {
        l_c: 0.0,
        r_e: if series.meta.illumination == Illumination::Entangled { knowns.r_e } else { 0.0 },
        ..*knowns
    };
    extract_slot(series, &k, 2, "quadratic", 2.0)
}

/// Entangled-two-photon quantum efficiency and responsivity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaEstimate {
    /// η_E (electrons per photon at the sample, before the 𝒯 correction).
    pub eta_e: Estimate,
    /// R_E (A/W).
    pub r_e: Estimate,
    /// Mean log ratio of the entangled response to the coherent control.
    pub log_ratio_to_control: f64,
}

/// `η_E = (1/𝒯₀)·μ/(P/hν)` from the linear region of an entangled series,
/// after subtracting the known `i_D`, `R_F`, `L_C` contributions. The series
/// must scale linearly and lie above the coherent control at the same drives.
pub fn extract_eta_e(
    series: &MeasurementSeries,
    control: Option<&MeasurementSeries>,
    knowns: &CurrentParams,
) -> Result<EtaEstimate> {
    if series.meta.illumination != Illumination::Entangled {
        return Err(AnalysisError::KindMismatch("η_E needs an entangled-light series".into()));
    }
    let control = control.ok_or_else(|| AnalysisError::Missing("η_E extraction needs a coherent control series".into()))?;
    let log_ratio = crate::classify::log_ratio_to_control(series, control)?;
    if log_ratio <= 0.0 {
        return Err(AnalysisError::Regime {
            regime: "entangled-above-control",
            slope: log_ratio,
            expected: 0.0,
            band: 0.0,
        });
    }
    let k = CurrentParams { r_e: 0.0, ..*knowns };
    let r_e = extract_slot(series, &k, 3, "linear", 1.0)?;
    let to_eta = series.meta.spectrum.photon_energy_j() / E_CHARGE;
    let eta_e = Estimate {
        value: r_e.value * to_eta,
        sigma: r_e.sigma * to_eta,
        ..r_e.clone()
    };
    Ok(EtaEstimate {
        eta_e,
        r_e,
        log_ratio_to_control: log_ratio,
    })
}

/// Two-photon responsivity at intensity `i` (W/m²): `R_C = 𝓛_C·I`.
pub fn two_photon_responsivity(l_c: f64, intensity: f64) -> f64 {
    l_c * intensity
}
