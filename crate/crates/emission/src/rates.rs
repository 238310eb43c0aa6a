//! Photocurrent, count rate, quantum efficiency, and responsivity bundle.

use subthresh_core::constants::E_CHARGE;

/// `mu·e = i` and `eta = (hc/eλ)·r` hold by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmissionRates {
    /// Photocurrent (A).
    pub i: f64,
    /// Photoelectron rate (1/s).
    pub mu: f64,
    /// Quantum efficiency (electrons/photon).
    pub eta: f64,
    /// Responsivity (A/W).
    pub r: f64,
}

impl EmissionRates {
    /// From a photoelectron rate, the photon flux it is referred to
    /// (photons/s), and the energy per photon (J).
    pub fn from_rate(mu: f64, photon_flux: f64, photon_energy: f64) -> Self {
        let eta = if photon_flux > 0.0 { mu / photon_flux } else { 0.0 };
        Self {
            i: mu * E_CHARGE,
            mu,
            eta,
            r: eta * E_CHARGE / photon_energy,
        }
    }
}
