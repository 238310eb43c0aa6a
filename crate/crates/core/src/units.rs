//! Boundary conversions between eV/nm and SI, and the responsivity ↔
//! quantum-efficiency relation `η = (hc/eλ)·R`.

use crate::constants::{C_LIGHT, E_CHARGE, H_PLANCK};
use crate::error::{ensure_positive, Result};
use std::f64::consts::PI;

/// `hc/e` in nm·eV.
pub const HC_EV_NM: f64 = H_PLANCK * C_LIGHT / E_CHARGE * 1e9;

pub fn ev_to_joule(ev: f64) -> f64 {
    ev * E_CHARGE
}

pub fn joule_to_ev(j: f64) -> f64 {
    j / E_CHARGE
}

/// Photon energy (eV) → wavelength (nm).
pub fn ev_to_wavelength(ev: f64) -> Result<f64> {
    Ok(HC_EV_NM / ensure_positive("photon energy", ev)?)
}

/// Wavelength (nm) → photon energy (eV).
pub fn wavelength_to_ev(nm: f64) -> Result<f64> {
    Ok(HC_EV_NM / ensure_positive("wavelength", nm)?)
}

/// Responsivity (A/W) → quantum efficiency (electrons/photon) at `wavelength_nm`.
pub fn responsivity_to_qe(r: f64, wavelength_nm: f64) -> Result<f64> {
    Ok(qe_factor(wavelength_nm)? * r)
}

/// Quantum efficiency → responsivity (A/W) at `wavelength_nm`.
pub fn qe_to_responsivity(eta: f64, wavelength_nm: f64) -> Result<f64> {
    Ok(eta / qe_factor(wavelength_nm)?)
}

/// The factor `hc/(eλ)` (W/A) linking `η` to `R`.
pub fn qe_factor(wavelength_nm: f64) -> Result<f64> {
    Ok(HC_EV_NM / ensure_positive("wavelength", wavelength_nm)?)
}

/// A monochromatic spectral point held in SI; the three views agree exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    wavelength_m: f64,
}

impl SpectralPoint {
    pub fn from_wavelength_m(wavelength_m: f64) -> Result<Self> {
        Ok(Self {
            wavelength_m: ensure_positive("wavelength", wavelength_m)?,
        })
    }

    pub fn from_wavelength_nm(nm: f64) -> Result<Self> {
        Self::from_wavelength_m(ensure_positive("wavelength", nm)? * 1e-9)
    }

    pub fn from_photon_energy_ev(ev: f64) -> Result<Self> {
        Self::from_wavelength_nm(ev_to_wavelength(ev)?)
    }

    pub fn from_photon_energy_j(j: f64) -> Result<Self> {
        Self::from_wavelength_m(H_PLANCK * C_LIGHT / ensure_positive("photon energy", j)?)
    }

    pub fn from_angular_frequency(omega: f64) -> Result<Self> {
        Self::from_wavelength_m(2.0 * PI * C_LIGHT / ensure_positive("angular frequency", omega)?)
    }

    pub fn wavelength_m(&self) -> f64 {
        self.wavelength_m
    }

    pub fn wavelength_nm(&self) -> f64 {
        self.wavelength_m * 1e9
    }

    /// `hν` (J).
    pub fn photon_energy_j(&self) -> f64 {
        H_PLANCK * C_LIGHT / self.wavelength_m
    }

    /// `hν` (eV).
    pub fn photon_energy_ev(&self) -> f64 {
        HC_EV_NM / self.wavelength_nm()
    }

    /// `ω = 2πc/λ` (rad/s).
    pub fn angular_frequency(&self) -> f64 {
        2.0 * PI * C_LIGHT / self.wavelength_m
    }
}
