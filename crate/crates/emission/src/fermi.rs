//! Fermi-tail (thermally assisted one-photon) photoemission.

use crate::error::{check, EmissionError, Result};
use subthresh_core::PhysicalConstants;

/// `i_F = R_F·P` (A).
pub fn ftp_current(r_f: f64, power: f64) -> Result<f64> {
    check("R_F", r_f, r_f >= 0.0, ">= 0")?;
    check("power", power, power >= 0.0, ">= 0")?;
    Ok(r_f * power)
}

/// Single-point Fowler estimate `𝒲 = hν + k_B𝖳·ln(a𝒜𝖳²/R_F)` (J).
pub fn fowler_work_function(r_f: f64, temperature: f64, photon_energy: f64, k: &PhysicalConstants) -> Result<f64> {
    check("R_F", r_f, r_f > 0.0, "> 0")?;
    check("temperature", temperature, temperature > 0.0, "> 0")?;
    check("photon energy", photon_energy, photon_energy > 0.0, "> 0")?;
    let arg = k.fowler_a * k.fowler_script_a * temperature * temperature / r_f;
    if !(arg > 0.0 && arg.is_finite()) {
        return Err(EmissionError::Domain(format!("Fowler log argument {arg} is not positive")));
    }
    Ok(photon_energy + k.k_b * temperature * arg.ln())
}

/// Inverse of [`fowler_work_function`]: the `R_F` implied by a work function.
pub fn fowler_responsivity(work_function: f64, temperature: f64, photon_energy: f64, k: &PhysicalConstants) -> Result<f64> {
    check("temperature", temperature, temperature > 0.0, "> 0")?;
    let pre = k.fowler_a * k.fowler_script_a * temperature * temperature;
    Ok(pre * (-(work_function - photon_energy) / (k.k_b * temperature)).exp())
}
