//! Periodic power waveforms and their moment statistics.

use crate::error::{check, Result, SourceError};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use subthresh_core::SpectralPoint;

/// Temporal shape of one period. Durations in seconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum Shape {
    Cw,
    /// Square pulses of width `tau0` every `tau1`.
    Rectangular { tau0: f64, tau1: f64 },
    /// Semicircular power pulses `P̂√(1 − (2t/τ0)²)`, whose squares are
    /// parabolic caps of base width `tau0`.
    Semicircular { tau0: f64, tau1: f64 },
    /// Uniform samples of one period of relative power.
    Sampled { period: f64, samples: Vec<f64> },
}

/// Exactly one of peak or mean power fixes the scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerLevel {
    Peak(f64),
    Mean(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Waveform {
    pub shape: Shape,
    pub level: PowerLevel,
}

/// Moments of a waveform over one period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveformStats {
    /// Duty cycle Δ (fraction of the period with nonzero power).
    pub duty_cycle: f64,
    pub peak_power: f64,
    /// P̄ (W).
    pub mean_power: f64,
    /// ⟨P²⟩ (W²).
    pub mean_square: f64,
    /// ⟨P⁴⟩ (W⁴).
    pub mean_fourth: f64,
    /// First cosine-harmonic amplitude of P²(t) (W²).
    pub first_harmonic: f64,
    /// Γ = ⟨P²⟩/P̄².
    pub gamma: f64,
    /// 𝓕₁ = a₁²/(2·Var[P²]); 1 by convention for unmodulated light.
    pub lockin_fraction: f64,
}

impl Waveform {
    pub fn cw(mean_power: f64) -> Self {
        Self {
            shape: Shape::Cw,
            level: PowerLevel::Mean(mean_power),
        }
    }

    pub fn new(shape: Shape, level: PowerLevel) -> Result<Self> {
        let w = Self { shape, level };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        match &self.shape {
            Shape::Cw => {}
            Shape::Rectangular { tau0, tau1 } | Shape::Semicircular { tau0, tau1 } => {
                check("tau0", *tau0, *tau0 > 0.0, "0 < tau0 <= tau1")?;
                check("tau1", *tau1, *tau1 >= *tau0, "0 < tau0 <= tau1")?;
            }
            Shape::Sampled { period, samples } => {
                check("period", *period, *period > 0.0, "> 0")?;
                if samples.len() < 3 {
                    return Err(SourceError::Inconsistent("sampled waveform needs at least 3 samples (fundamental below Nyquist)".into()));
                }
                for &s in samples {
                    check("sample", s, s >= 0.0, ">= 0")?;
                }
            }
        }
        let p = match self.level {
            PowerLevel::Peak(p) | PowerLevel::Mean(p) => p,
        };
        check("power level", p, p >= 0.0, ">= 0")?;
        Ok(())
    }

    /// Δ, P̄, ⟨P²⟩, Γ, and 𝓕₁ for this waveform.
    pub fn stats(&self) -> Result<WaveformStats> {
        self.validate()?;
        // Unit-peak moments: (duty, mean, mean², mean⁴, a1 of P²).
        let (duty, m1, m2, m4, a1) = match &self.shape {
            Shape::Cw => (1.0, 1.0, 1.0, 1.0, 0.0),
            Shape::Rectangular { tau0, tau1 } => {
                let d = tau0 / tau1;
                (d, d, d, d, 2.0 * (PI * d).sin() / PI)
            }
            Shape::Semicircular { tau0, tau1 } => {
                let d = tau0 / tau1;
                let x = PI * d;
                let a1 = if x < 1e-4 {
                    4.0 / PI * (x / 3.0 - x.powi(3) / 30.0)
                } else {
                    4.0 / PI * (x.sin() - x * x.cos()) / (x * x)
                };
                (d, PI / 4.0 * d, 2.0 / 3.0 * d, 8.0 / 15.0 * d, a1)
            }
            Shape::Sampled { samples, .. } => sampled_moments(samples)?,
        };
        if m1 <= 0.0 {
            return Err(SourceError::ZeroPower);
        }
        let peak = match self.level {
            PowerLevel::Peak(p) => p,
            PowerLevel::Mean(p) => p / m1,
        };
        if peak <= 0.0 {
            return Err(SourceError::ZeroPower);
        }
        let variance = m4 - m2 * m2;
        let lockin_fraction = if variance <= 1e-12 * m4 {
            1.0
        } else {
            a1 * a1 / (2.0 * variance)
        };
        Ok(WaveformStats {
            duty_cycle: duty,
            peak_power: peak,
            mean_power: peak * m1,
            mean_square: peak * peak * m2,
            mean_fourth: peak.powi(4) * m4,
            first_harmonic: peak * peak * a1,
            gamma: m2 / (m1 * m1),
            lockin_fraction,
        })
    }
}

/// Periodic-trapezoid moments of samples normalized to unit peak. The
/// first harmonic is taken as the modulus of the fundamental DFT bin of
/// P²(t), i.e. with the lock-in phase aligned to the signal.
fn sampled_moments(samples: &[f64]) -> Result<(f64, f64, f64, f64, f64)> {
    let peak = samples.iter().cloned().fold(0.0_f64, f64::max);
    if peak <= 0.0 {
        return Err(SourceError::ZeroPower);
    }
    let n = samples.len() as f64;
    let (mut m1, mut m2, mut m4, mut re, mut im, mut on) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for (k, &s) in samples.iter().enumerate() {
        let p = s / peak;
        let p2 = p * p;
        m1 += p;
        m2 += p2;
        m4 += p2 * p2;
        let th = 2.0 * PI * k as f64 / n;
        re += p2 * th.cos();
        im += p2 * th.sin();
        if p > 0.0 {
            on += 1.0;
        }
    }
    let a1 = 2.0 * (re * re + im * im).sqrt() / n;
    Ok((on / n, m1 / n, m2 / n, m4 / n, a1))
}

/// g₂ for 𝓜 independent equal-power random-phase modes, `(2𝓜−1)/𝓜`.
pub fn g2_modes(modes: u32) -> Result<f64> {
    if modes < 1 {
        return Err(SourceError::OutOfRange {
            what: "mode count",
            value: modes as f64,
            expected: ">= 1",
        });
    }
    let m = modes as f64;
    Ok((2.0 * m - 1.0) / m)
}

/// Either a mode count or a direct g₂ value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeSpec {
    Modes(u32),
    G2(f64),
}

/// Classical or coherent light of a single wavelength.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentSource {
    pub spectrum: SpectralPoint,
    pub waveform: Waveform,
    pub modes: ModeSpec,
}

impl CoherentSource {
    pub fn new(spectrum: SpectralPoint, waveform: Waveform, modes: ModeSpec) -> Result<Self> {
        waveform.validate()?;
        let s = Self {
            spectrum,
            waveform,
            modes,
        };
        s.g2()?;
        Ok(s)
    }

    pub fn g2(&self) -> Result<f64> {
        match self.modes {
            ModeSpec::Modes(m) => g2_modes(m),
            ModeSpec::G2(g) => check("g2", g, g >= 1.0, ">= 1"),
        }
    }
}
