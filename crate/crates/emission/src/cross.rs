//! Cross sections per primitive cell and theory-to-experiment renormalization.

use crate::error::{check, Result};

/// Rescales a computed η_E to a new entanglement area–time product and
/// loss: `η_new = η_ref·(𝒯₀²_new/𝒯₀²_ref)·(AETE_ref/AETE_new)`.
pub fn renormalize_eta(eta_ref: f64, aete_ref: f64, t0sq_ref: f64, aete_new: f64, t0sq_new: f64) -> Result<f64> {
    check("eta_ref", eta_ref, eta_ref > 0.0, "> 0")?;
    check("A_E·T_E (reference)", aete_ref, aete_ref > 0.0, "> 0")?;
    check("T0² (reference)", t0sq_ref, t0sq_ref > 0.0, "> 0")?;
    check("A_E·T_E (new)", aete_new, aete_new > 0.0, "> 0")?;
    check("T0² (new)", t0sq_new, t0sq_new > 0.0, "> 0")?;
    Ok(eta_ref * (t0sq_new / t0sq_ref) * (aete_ref / aete_new))
}

/// Entangled-two-photon cross section and its normalized form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaE {
    /// σ_E (m²).
    pub sigma_e: f64,
    /// δ_E = σ_E·A_E·T_E (m⁴·s).
    pub delta_e: f64,
}

/// `σ_E = η_E/(β²Nd)`, `δ_E = σ_E·A_E·T_E`.
pub fn eta_to_sigma_e(eta_e: f64, beta: f64, n: f64, d: f64, a_e: f64, t_e: f64) -> Result<SigmaE> {
    for (what, v) in [("eta_E", eta_e), ("beta", beta), ("N", n), ("d", d), ("A_E", a_e), ("T_E", t_e)] {
        check(what, v, v > 0.0, "> 0")?;
    }
    let sigma_e = eta_e / (beta * beta * n * d);
    Ok(SigmaE {
        sigma_e,
        delta_e: sigma_e * a_e * t_e,
    })
}
