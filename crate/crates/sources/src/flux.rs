//! Pair/singleton photon bookkeeping under Bernoulli loss.

use crate::error::{check, Result};

/// Twin pairs and unpaired singletons crossing an area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxBreakdown {
    /// Intact twin pairs per second.
    pub pair_flux: f64,
    /// Unpaired photons per second.
    pub singleton_flux: f64,
    /// Beam area (m²) used for flux densities.
    pub area: f64,
}

impl FluxBreakdown {
    pub fn new(pair_flux: f64, singleton_flux: f64, area: f64) -> Result<Self> {
        check("pair flux", pair_flux, pair_flux >= 0.0, ">= 0")?;
        check("singleton flux", singleton_flux, singleton_flux >= 0.0, ">= 0")?;
        check("area", area, area > 0.0, "> 0")?;
        Ok(Self {
            pair_flux,
            singleton_flux,
            area,
        })
    }

    /// Φ = 2·pairs + singletons (photons/s).
    pub fn total_photon_flux(&self) -> f64 {
        2.0 * self.pair_flux + self.singleton_flux
    }

    /// φ = Φ/A (photons/m²·s).
    pub fn photon_flux_density(&self) -> f64 {
        self.total_photon_flux() / self.area
    }
}

/// Independent deletion of each photon with probability 1−𝒯: pairs survive
/// as 𝒯², half-deleted pairs become singletons, singletons survive as 𝒯.
pub fn apply_loss(fb: &FluxBreakdown, t: f64) -> Result<FluxBreakdown> {
    check("transmittance", t, (0.0..=1.0).contains(&t), "[0, 1]")?;
    Ok(FluxBreakdown {
        pair_flux: t * t * fb.pair_flux,
        singleton_flux: t * fb.singleton_flux + 2.0 * t * (1.0 - t) * fb.pair_flux,
        area: fb.area,
    })
}
