//! Forward model of the measured mean current.

use crate::error::{check, AnalysisError, Result};
use crate::series::{DriveUnit, Illumination, MeasurementSeries, ResponseUnit, SeriesMeta};
use serde::{Deserialize, Serialize};

/// Dark current and CW-equivalent response coefficients.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CurrentParams {
    /// Dark current i_D (A).
    pub i_d: f64,
    /// One-photon (Fermi-tail) responsivity R_F (A/W).
    pub r_f: f64,
    /// Two-photon responsivity coefficient 𝓛_C (A·m²/W²).
    pub l_c: f64,
    /// Entangled-two-photon responsivity R_E (A/W), entangled light only.
    pub r_e: f64,
}

/// Parameter slots in the fixed order `i_D, R_F, L_C, R_E`.
pub const PARAM_NAMES: [&str; 4] = ["i_D", "R_F", "L_C", "R_E"];

impl CurrentParams {
    pub fn to_array(self) -> [f64; 4] {
        [self.i_d, self.r_f, self.l_c, self.r_e]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self {
            i_d: a[0],
            r_f: a[1],
            l_c: a[2],
            r_e: a[3],
        }
    }
}

/// The drive → response model of one series, without the samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesModel {
    pub drive_unit: DriveUnit,
    pub response_unit: ResponseUnit,
    pub meta: SeriesMeta,
}

impl SeriesModel {
    pub fn of(series: &MeasurementSeries) -> Self {
        Self {
            drive_unit: series.drive_unit,
            response_unit: series.response_unit,
            meta: series.meta,
        }
    }

    fn shell(&self) -> MeasurementSeries {
        MeasurementSeries {
            samples: Vec::new(),
            drive_unit: self.drive_unit,
            response_unit: self.response_unit,
            meta: self.meta,
        }
    }

    /// Response per unit of each parameter: the model is
    /// `response = Σ θ_j·basis_j(drive)`, in the series' response unit.
    pub fn basis(&self, drive: f64) -> [f64; 4] {
        let s = self.shell();
        let p = s.incident_power(drive);
        let path = &self.meta.path;
        let f = s.lockin_fraction();
        let twin = match self.meta.illumination {
            Illumination::Entangled => f * path.transmittance * p,
            _ => 0.0,
        };
        let quad = f * p * p * path.pulse_factor * self.meta.effective_g2() / path.area;
        [1.0, f * p, quad, twin].map(|b| s.from_current(b))
    }

    pub fn predict(&self, params: &CurrentParams, drive: f64) -> f64 {
        let b = self.basis(drive);
        params.to_array().iter().zip(b).map(|(t, b)| t * b).sum()
    }
}

/// Mean response at `drive` in the series' units:
/// `i = i_D + 𝓕[R_F·P + L_C·P²·g₂Γ/A] (+ 𝓕·R_E·𝒯·P for entangled light)`
/// with P the incident power; count-rate series use 𝓕 = 1 and divide by e.
pub fn predict_current(series: &MeasurementSeries, params: &CurrentParams, drive: f64) -> Result<f64> {
    check("drive", drive, drive >= 0.0, ">= 0")?;
    if params.r_e != 0.0 && series.meta.illumination != Illumination::Entangled {
        return Err(AnalysisError::KindMismatch(format!(
            "R_E = {:e} given for {:?} illumination",
            params.r_e, series.meta.illumination
        )));
    }
    Ok(SeriesModel::of(series).predict(params, drive))
}

/// Linear/quadratic crossover intensities (W/m²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossoverIntensities {
    /// Fermi-tail = two-photon.
    pub i_fc: f64,
    /// Fermi-tail + entangled = two-photon.
    pub i_ec: f64,
    /// `I_EC/I_FC = 1 + 𝒯R_E/R_F` (∞ when R_F = 0).
    pub ratio: f64,
}

/// `I_FC = R_F/(L_C·g₂Γ)`, `I_EC = (R_F + 𝒯R_E)/(L_C·g₂Γ)`; pass `g2 = 1`
/// for coherent light.
pub fn crossover_intensity(r_f: f64, r_e: f64, l_c: f64, t: f64, gamma: f64, g2: f64) -> Result<CrossoverIntensities> {
    check("L_C", l_c, l_c > 0.0, "> 0")?;
    check("R_F", r_f, r_f >= 0.0, ">= 0")?;
    check("R_E", r_e, r_e >= 0.0, ">= 0")?;
    check("transmittance", t, t > 0.0 && t <= 1.0, "(0, 1]")?;
    check("Gamma", gamma, gamma >= 1.0, ">= 1")?;
    check("g2", g2, g2 >= 1.0, ">= 1")?;
    let d = l_c * gamma * g2;
    Ok(CrossoverIntensities {
        i_fc: r_f / d,
        i_ec: (r_f + t * r_e) / d,
        ratio: if r_f > 0.0 { 1.0 + t * r_e / r_f } else { f64::INFINITY },
    })
}
