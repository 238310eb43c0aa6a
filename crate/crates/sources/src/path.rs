//! Optical path between source and sample.

use crate::error::{check, Result};

/// Transmittance, illumination area, lock-in fraction, and pulse factor.
///
/// `transmittance` is the total 𝒯 from source to sample (intrinsic optics
/// times any inserted attenuator); `intrinsic_transmittance` is 𝒯₀ alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalPath {
    pub transmittance: f64,
    pub intrinsic_transmittance: f64,
    /// A (m²).
    pub area: f64,
    pub lockin_fraction: f64,
    pub pulse_factor: f64,
}

impl OpticalPath {
    pub fn new(transmittance: f64, intrinsic_transmittance: f64, area: f64, lockin_fraction: f64, pulse_factor: f64) -> Result<Self> {
        let p = Self {
            transmittance,
            intrinsic_transmittance,
            area,
            lockin_fraction,
            pulse_factor,
        };
        p.validate()?;
        Ok(p)
    }

    /// Lossless, unmodulated, CW direct detection over `area`.
    pub fn direct(area: f64) -> Result<Self> {
        Self::new(1.0, 1.0, area, 1.0, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.transmittance;
        check("transmittance", t, t > 0.0 && t <= 1.0, "(0, 1]")?;
        let t0 = self.intrinsic_transmittance;
        check("intrinsic transmittance", t0, t0 > 0.0 && t0 <= 1.0, "(0, 1]")?;
        check("area", self.area, self.area > 0.0, "> 0")?;
        let f = self.lockin_fraction;
        check("lock-in fraction", f, f > 0.0 && f <= 1.0, "(0, 1]")?;
        check("pulse factor", self.pulse_factor, self.pulse_factor >= 1.0, ">= 1")?;
        Ok(())
    }
}
