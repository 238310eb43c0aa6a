//! Volume two-photon photoemission in the free-electron (Bloch) picture.

use crate::error::{check, EmissionError, Result};
use std::f64::consts::PI;
use subthresh_core::constants::{C_LIGHT, E_CHARGE, HBAR, M_ELECTRON, R0_CLASSICAL};
use subthresh_core::{Material, SpectralPoint};

/// Surface-theory two-photon responsivity coefficient for thin Na at
/// 845 nm (A·m²/W²), kept as a literature constant for comparison output.
pub const NA_SURFACE_THEORY_LC: f64 = 2.40e-22;

/// Two-photon responsivity coefficient `𝓛_C` (A·m²/W²) such that
/// `i_C = 𝓛_C·P²/A` and `𝓡_C = 𝓛_C·I`.
///
/// Needs `E_F` and `k_F` (for semiconductors, the valence-band-top
/// equivalents stored in the same fields), `[M]`, β, and d.
pub fn tpp_coefficient(mat: &Material, spectrum: &SpectralPoint) -> Result<f64> {
    let beta = mat.require("beta", mat.beta)?;
    let d = mat.require("d", mat.d)?;
    let m_osc = mat.require("M_osc", mat.m_osc)?;
    let e_f = mat.require("E_F", mat.e_f)?;
    let k_f = mat.require("k_F", mat.k_f)?;
    let w = mat.threshold()?;
    let hw = spectrum.photon_energy_j();
    if 2.0 * hw <= w {
        return Err(EmissionError::Domain(format!(
            "2hν = {:.4} eV does not exceed the threshold {:.4} eV",
            2.0 * hw / E_CHARGE,
            w / E_CHARGE
        )));
    }
    let base = 1.0 + (w - 2.0 * hw) / e_f;
    if base <= 0.0 {
        return Err(EmissionError::Domain(format!(
            "2hν exceeds E_F + threshold; occupancy factor base {base} ≤ 0"
        )));
    }
    let pre = E_CHARGE * beta * beta * d * HBAR * R0_CLASSICAL * R0_CLASSICAL * M_ELECTRON * C_LIGHT * C_LIGHT
        / (4.0 * hw.powi(4));
    Ok(pre * m_osc * (4.0 * PI * k_f / 3.0) * (e_f / (2.0 * hw)) * base.powf(1.5))
}

/// Two-photon photocurrent `i_C` (A) for photon-flux density `phi`
/// (photons/m²·s) over area `area` (m²); exactly ∝ φ²A.
pub fn tpp_current(mat: &Material, spectrum: &SpectralPoint, phi: f64, area: f64) -> Result<f64> {
    check("photon-flux density", phi, phi >= 0.0, ">= 0")?;
    check("area", area, area > 0.0, "> 0")?;
    let hw = spectrum.photon_energy_j();
    Ok(tpp_coefficient(mat, spectrum)? * phi * phi * hw * hw * area)
}

/// Two-photon rates referred to the incident photon flux `φA`.
pub fn tpp_rates(mat: &Material, spectrum: &SpectralPoint, phi: f64, area: f64) -> Result<crate::EmissionRates> {
    let i = tpp_current(mat, spectrum, phi, area)?;
    Ok(crate::EmissionRates::from_rate(i / E_CHARGE, phi * area, spectrum.photon_energy_j()))
}
