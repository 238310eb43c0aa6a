//! SPDC entangled-photon-pair sources.

use crate::error::{check, Result, SourceError};
use crate::waveform::Waveform;
use subthresh_core::constants::HBAR;
use subthresh_core::SpectralPoint;

/// An SPDC pair source. Powers in W, times in s, areas in m².
#[derive(Debug, Clone, PartialEq)]
pub struct EntangledSource {
    /// Pump; `ω₁⁰ + ω₂⁰ = ω_p` holds exactly.
    pub pump: SpectralPoint,
    /// Nondegeneracy r = ω₁⁰/ω_p ∈ (0, 1).
    pub nondegeneracy: f64,
    pub t_e: f64,
    pub a_e: f64,
    /// Mean source power P_E (W).
    pub source_power: f64,
    pub pump_power: Option<f64>,
    pub spdc_efficiency: Option<f64>,
    pub waveform: Option<Waveform>,
}

impl EntangledSource {
    pub fn new(pump: SpectralPoint, nondegeneracy: f64, t_e: f64, a_e: f64, source_power: f64) -> Result<Self> {
        let s = Self {
            pump,
            nondegeneracy,
            t_e,
            a_e,
            source_power,
            pump_power: None,
            spdc_efficiency: None,
            waveform: None,
        };
        s.validate()?;
        Ok(s)
    }

    /// Source delivering photon-flux density `phi` (photons/m²·s) over `area`.
    pub fn from_flux_density(
        pump: SpectralPoint,
        nondegeneracy: f64,
        t_e: f64,
        a_e: f64,
        phi: f64,
        area: f64,
    ) -> Result<Self> {
        check("area", area, area > 0.0, "> 0")?;
        check("photon-flux density", phi, phi >= 0.0, ">= 0")?;
        // Two photons per pair, each pair carrying ħω_p.
        let power = phi * area * HBAR * pump.angular_frequency() / 2.0;
        Self::new(pump, nondegeneracy, t_e, a_e, power)
    }

    /// Records pump power and conversion efficiency, checking P_E = η·P_P to 1%.
    pub fn with_pump(mut self, pump_power: f64, efficiency: f64) -> Result<Self> {
        check("pump power", pump_power, pump_power >= 0.0, ">= 0")?;
        check("SPDC efficiency", efficiency, (0.0..=1.0).contains(&efficiency), "[0, 1]")?;
        let expect = pump_power * efficiency;
        if (expect - self.source_power).abs() > 0.01 * self.source_power.max(expect) {
            return Err(SourceError::Inconsistent(format!(
                "P_E = {} W but η_SPDC·P_P = {expect} W",
                self.source_power
            )));
        }
        self.pump_power = Some(pump_power);
        self.spdc_efficiency = Some(efficiency);
        Ok(self)
    }

    pub fn with_waveform(mut self, w: Waveform) -> Result<Self> {
        w.validate()?;
        self.waveform = Some(w);
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.nondegeneracy;
        check("nondegeneracy", r, r > 0.0 && r < 1.0, "0 < r < 1")?;
        check("T_E", self.t_e, self.t_e > 0.0, "> 0")?;
        check("A_E", self.a_e, self.a_e > 0.0, "> 0")?;
        check("source power", self.source_power, self.source_power >= 0.0, ">= 0")?;
        Ok(())
    }

    pub fn omega_p(&self) -> f64 {
        self.pump.angular_frequency()
    }

    /// ω₁⁰ = r·ω_p.
    pub fn omega1(&self) -> f64 {
        self.nondegeneracy * self.omega_p()
    }

    /// ω₂⁰ = ω_p − ω₁⁰.
    pub fn omega2(&self) -> f64 {
        self.omega_p() - self.omega1()
    }

    /// Intact pairs per second, P_E/ħω_p.
    pub fn pair_flux(&self) -> f64 {
        self.source_power / (HBAR * self.omega_p())
    }

    /// Photons per second, twice the pair flux.
    pub fn photon_flux(&self) -> f64 {
        2.0 * self.pair_flux()
    }

    /// Mean photon energy ħω_p/2 (J).
    pub fn mean_photon_energy(&self) -> f64 {
        HBAR * self.omega_p() / 2.0
    }
}

/// SPDC output for a given pump power and conversion efficiency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpdcOutput {
    /// P_E (W).
    pub source_power: f64,
    /// Pairs per second.
    pub pair_flux: f64,
}

/// `P_E = η_SPDC·P_P`, pair flux `P_E/ħω_p`.
pub fn spdc_output(pump_power: f64, efficiency: f64, pump: SpectralPoint) -> Result<SpdcOutput> {
    check("pump power", pump_power, pump_power >= 0.0, ">= 0")?;
    check("SPDC efficiency", efficiency, efficiency >= 0.0, ">= 0")?;
    let p = pump_power * efficiency;
    Ok(SpdcOutput {
        source_power: p,
        pair_flux: p / (HBAR * pump.angular_frequency()),
    })
}
