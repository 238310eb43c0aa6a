//! Scaling classification of an entangled-light series against a
//! coherent control: FTP, FTP+ETPP, ETPP, TPP, or dark.

use crate::error::{AnalysisError, Result};
use crate::segment::{loglog_fit, segment_loglog, slope_class, Segmentation};
use crate::series::MeasurementSeries;
use serde::Serialize;
use std::fmt;

/// Responses within this factor of the control count as the same magnitude.
pub const SAME_MAGNITUDE_FACTOR: f64 = 1.5;
/// Half-width of the band for the 𝒯-sweep exponent.
pub const TRANSMITTANCE_BAND: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScalingLabel {
    #[serde(rename = "FTP")]
    Ftp,
    #[serde(rename = "FTP+ETPP")]
    FtpEtpp,
    #[serde(rename = "ETPP")]
    Etpp,
    #[serde(rename = "TPP")]
    Tpp,
    #[serde(rename = "dark")]
    Dark,
}

impl fmt::Display for ScalingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ftp => "FTP",
            Self::FtpEtpp => "FTP+ETPP",
            Self::Etpp => "ETPP",
            Self::Tpp => "TPP",
            Self::Dark => "dark",
        })
    }
}

const ALL_LABELS: [ScalingLabel; 5] = [
    ScalingLabel::Ftp,
    ScalingLabel::FtpEtpp,
    ScalingLabel::Etpp,
    ScalingLabel::Tpp,
    ScalingLabel::Dark,
];

/// Responses of one series measured at several transmittances 𝒯 with
/// everything else fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmittanceSweep {
    pub transmittance: Vec<f64>,
    pub response: Vec<f64>,
}

impl TransmittanceSweep {
    /// Fitted exponent of response vs 𝒯.
    pub fn exponent(&self) -> Option<f64> {
        loglog_fit(&self.transmittance, &self.response).map(|f| f.slope)
    }
}

/// Label of one entangled-series segment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentLabel {
    pub x_min: f64,
    pub x_max: f64,
    pub slope: f64,
    pub control_slope: f64,
    pub log_ratio: f64,
    pub label: Option<ScalingLabel>,
    /// All labels ordered by mismatch score (lower is better).
    pub ranked: Vec<(ScalingLabel, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    /// Decided label; `None` when ambiguous.
    pub label: Option<ScalingLabel>,
    pub ambiguous: bool,
    /// Candidates ranked by mismatch score.
    pub candidates: Vec<(ScalingLabel, f64)>,
    /// Per-segment labels of the entangled series, in drive order.
    pub segments: Vec<SegmentLabel>,
    pub transmittance_exponent: Option<f64>,
}

/// Series points as (incident power W, current A, σ A).
fn physical(s: &MeasurementSeries) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let x = s.samples.iter().map(|p| s.incident_power(p.drive)).collect();
    let y = s.samples.iter().map(|p| s.to_current(p.response)).collect();
    let e = s.samples.iter().map(|p| s.to_current(p.sigma)).collect();
    (x, y, e)
}

fn segment(s: &MeasurementSeries) -> Result<Segmentation> {
    let (x, y, e) = physical(s);
    segment_loglog(&x, &y, &e)
        .ok_or_else(|| AnalysisError::InvalidSeries("fewer than two positive responses to segment".into()))
}

/// Entangled points inside the control's drive range, as (P, i).
fn overlap(entangled: &MeasurementSeries, control: &Segmentation) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = (control.segments[0].x_min, control.segments.last().expect("nonempty").x_max);
    let (x, y, _) = physical(entangled);
    let pts: Vec<(f64, f64)> = x
        .into_iter()
        .zip(y)
        .filter(|(p, i)| *p >= lo * (1.0 - 1e-9) && *p <= hi * (1.0 + 1e-9) && *i > 0.0)
        .collect();
    if pts.len() < 2 {
        return Err(AnalysisError::InsufficientOverlap(format!(
            "{} entangled points inside the control range [{lo:e}, {hi:e}] W",
            pts.len()
        )));
    }
    Ok(pts)
}

/// Mean of `ln(i_entangled/i_control)` over overlapping drives, with the
/// control evaluated from its piecewise power-law fit.
pub fn log_ratio_to_control(entangled: &MeasurementSeries, control: &MeasurementSeries) -> Result<f64> {
    let c = segment(control)?;
    let pts = overlap(entangled, &c)?;
    Ok(pts.iter().map(|(p, i)| (i / c.eval(*p)).ln()).sum::<f64>() / pts.len() as f64)
}

/// Mismatch of observed (slope, control slope, log ratio) against the
/// signature of `label`.
fn mismatch(label: ScalingLabel, slope: f64, control: f64, r: f64) -> f64 {
    let same = SAME_MAGNITUDE_FACTOR.ln();
    let about_equal = (r.abs() - same).max(0.0);
    let above = (same - r).max(0.0);
    match label {
        ScalingLabel::Ftp => (slope - 1.0).abs() + (control - 1.0).abs() + about_equal,
        ScalingLabel::FtpEtpp => (slope - 1.0).abs() + (control - 1.0).abs() + above,
        ScalingLabel::Etpp => (slope - 1.0).abs() + (control - 2.0).abs().min(control.abs()) + above,
        ScalingLabel::Tpp => (slope - 2.0).abs() + (control - 2.0).abs() + about_equal,
        ScalingLabel::Dark => slope.abs(),
    }
}

fn decide(slope: f64, control: f64, r: f64) -> Option<ScalingLabel> {
    let same = SAME_MAGNITUDE_FACTOR.ln();
    match (slope_class(slope)?, slope_class(control)) {
        (0, _) => Some(ScalingLabel::Dark),
        (1, Some(1)) if r.abs() <= same => Some(ScalingLabel::Ftp),
        (1, Some(1)) if r > same => Some(ScalingLabel::FtpEtpp),
        (1, Some(0 | 2)) if r > same => Some(ScalingLabel::Etpp),
        (2, Some(2)) if r.abs() <= same => Some(ScalingLabel::Tpp),
        _ => None,
    }
}

fn rank(slope: f64, control: f64, r: f64) -> Vec<(ScalingLabel, f64)> {
    let mut v: Vec<_> = ALL_LABELS.iter().map(|&l| (l, mismatch(l, slope, control, r))).collect();
    v.sort_by(|a, b| a.1.total_cmp(&b.1));
    v
}

/// Classifies the scaling of `entangled` against `coherent_control`.
///
/// Each log–log segment of the entangled series is labeled from its slope
/// class (0/1/2 within ±0.15), the control's slope at the same drives, and
/// the mean magnitude ratio. The overall label is that of the segment with
/// most points. An optional 𝒯 sweep (exponent 1 ⇒ singletons, 2 ⇒ twins,
/// ±0.2) breaks ties; otherwise ambiguous cases return ranked candidates.
pub fn classify_scaling(
    entangled: &MeasurementSeries,
    coherent_control: &MeasurementSeries,
    sweep: Option<&TransmittanceSweep>,
) -> Result<Classification> {
    let e = segment(entangled)?;
    let c = segment(coherent_control)?;
    let pts = overlap(entangled, &c)?;
    let mut segments = Vec::new();
    for s in &e.segments {
        let inside: Vec<&(f64, f64)> = pts
            .iter()
            .filter(|(p, _)| *p >= s.x_min * (1.0 - 1e-12) && *p <= s.x_max * (1.0 + 1e-12))
            .collect();
        if inside.is_empty() {
            continue;
        }
        let r = inside.iter().map(|(p, i)| (i / c.eval(*p)).ln()).sum::<f64>() / inside.len() as f64;
        let mid = inside[inside.len() / 2].0;
        let control_slope = c.segment_at(mid).fit.slope;
        segments.push((
            inside.len(),
            SegmentLabel {
                x_min: s.x_min,
                x_max: s.x_max,
                slope: s.fit.slope,
                control_slope,
                log_ratio: r,
                label: decide(s.fit.slope, control_slope, r),
                ranked: rank(s.fit.slope, control_slope, r),
            },
        ));
    }
    let main = segments
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then(b.0.cmp(&a.0)))
        .map(|(_, s)| s.1.clone())
        .ok_or_else(|| AnalysisError::InsufficientOverlap("no entangled segment overlaps the control".into()))?;
    let exponent = sweep.and_then(TransmittanceSweep::exponent);
    let mut label = main.label;
    let mut candidates = main.ranked.clone();
    if let Some(x) = exponent {
        let allowed: &[ScalingLabel] = if (x - 1.0).abs() <= TRANSMITTANCE_BAND {
            &[ScalingLabel::Ftp, ScalingLabel::Dark]
        } else if (x - 2.0).abs() <= TRANSMITTANCE_BAND {
            &[ScalingLabel::Etpp, ScalingLabel::FtpEtpp, ScalingLabel::Tpp]
        } else {
            &ALL_LABELS
        };
        if label.is_none() {
            candidates.retain(|(l, _)| allowed.contains(l));
            if let [(only, _)] | [(only, _), ..] = candidates.as_slice() {
                let runner_up = candidates.get(1).map_or(f64::INFINITY, |c| c.1);
                if runner_up > candidates[0].1 {
                    label = Some(*only);
                }
            }
        }
    }
    Ok(Classification {
        label,
        ambiguous: label.is_none(),
        candidates,
        segments: segments.into_iter().map(|s| s.1).collect(),
        transmittance_exponent: exponent,
    })
}
