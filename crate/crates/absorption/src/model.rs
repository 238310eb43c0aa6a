//! Particle-model rates with loss, quantum prefactors, and crossovers.

use crate::error::{check, AbsorptionError, Result};
use crate::spec::AbsorberSpec;
use serde::{Deserialize, Serialize};

/// `γ_fg/B` below which the narrow-linewidth limit applies.
pub const NARROW_BELOW: f64 = 0.1;
/// `γ_fg/B` above which the broad-linewidth limit applies.
pub const BROAD_ABOVE: f64 = 10.0;

/// Linewidth regime selecting the prefactor α in `σ_E = α·σ⁽²⁾/(A_E T_E)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Chosen from `γ_fg/B`; α = 1 when either is unknown.
    Auto,
    /// `γ_fg ≫ B`: α = 1.
    Broad,
    /// `γ_fg ≪ B`: α = γ_fg/B.
    Narrow,
    /// `T_E < T_A`, `A_E < σ₁`: `σ_E = σ⁽²⁾/(σ₁T_A)`.
    Tight,
    /// Log-linear interpolation between the narrow and broad limits.
    Blend,
}

/// σ_E with the prefactor and regime actually used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaEstimate {
    pub sigma_e: f64,
    /// α (or the tight-regime ratio `A_E T_E/(σ₁T_A)`).
    pub alpha: f64,
    pub regime: Regime,
}

/// Prefactor α as a function of `x = γ_fg/B` under `auto`: `x` below
/// [`NARROW_BELOW`], 1 above [`BROAD_ABOVE`], `x^(1−w)` in between with
/// `w` linear in `log x`, so α is continuous everywhere.
pub fn auto_alpha(x: f64) -> (f64, Regime) {
    if x <= NARROW_BELOW {
        (x, Regime::Narrow)
    } else if x >= BROAD_ABOVE {
        (1.0, Regime::Broad)
    } else {
        let w = (x / NARROW_BELOW).ln() / (BROAD_ABOVE / NARROW_BELOW).ln();
        (x.powf(1.0 - w), Regime::Blend)
    }
}

/// Entangled-two-photon cross section σ_E (m²) from σ⁽²⁾ and the source's
/// entanglement area A_E (m²) and time T_E (s).
pub fn sigma_e_from_sigma2(ab: &AbsorberSpec, a_e: f64, t_e: f64, regime: Regime) -> Result<SigmaEstimate> {
    check("A_E", a_e, a_e > 0.0, "> 0")?;
    check("T_E", t_e, t_e > 0.0, "> 0")?;
    let s2 = ab.sigma2()?;
    let base = s2 / (a_e * t_e);
    let ratio = || -> Result<f64> {
        let g = ab.require("gamma_fg", ab.gamma_fg)?;
        let b = ab.require("B", ab.b)?;
        check("B", b, b > 0.0, "> 0")?;
        Ok(g / b)
    };
    let (alpha, used) = match regime {
        Regime::Broad => (1.0, Regime::Broad),
        Regime::Narrow => (ratio()?, Regime::Narrow),
        Regime::Blend => (auto_alpha(ratio()?).0, Regime::Blend),
        Regime::Auto => match (ab.gamma_fg, ab.b) {
            (Some(_), Some(_)) => auto_alpha(ratio()?),
            _ => (1.0, Regime::Broad),
        },
        Regime::Tight => {
            let s1 = ab.require("sigma_1", ab.sigma_1)?;
            let ta = ab.require("T_A", ab.t_a)?;
            check("sigma_1", s1, s1 > 0.0, "> 0")?;
            check("T_A", ta, ta > 0.0, "> 0")?;
            let sigma_e = s2 / (s1 * ta);
            return Ok(SigmaEstimate {
                sigma_e,
                alpha: sigma_e / base,
                regime: Regime::Tight,
            });
        }
    };
    Ok(SigmaEstimate {
        sigma_e: alpha * base,
        alpha,
        regime: used,
    })
}

/// Contributions to the total subthreshold absorption rate (1/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorptionBreakdown {
    pub r_b: f64,
    pub r_e: f64,
    pub r_c: f64,
    pub r_d: f64,
    pub total: f64,
    /// Regime that fixed σ_E, when known.
    pub regime: Option<Regime>,
}

/// Particle-model rates for source flux density `phi_e` (photons/m²·s)
/// through intrinsic transmittance `t0`, pulse factor `gamma`, and a
/// constant dark rate `r_d`.
pub fn particle_rates(ab: &AbsorberSpec, sigma_e: f64, phi_e: f64, t0: f64, gamma: f64, r_d: f64) -> Result<AbsorptionBreakdown> {
    check("photon-flux density", phi_e, phi_e >= 0.0, ">= 0")?;
    check("sigma_E", sigma_e, sigma_e >= 0.0, ">= 0")?;
    check("T0", t0, t0 > 0.0 && t0 <= 1.0, "(0, 1]")?;
    check("Gamma", gamma, gamma >= 1.0, ">= 1")?;
    check("R_D", r_d, r_d >= 0.0, ">= 0")?;
    let s2 = ab.sigma2()?;
    let phi = t0 * phi_e;
    let r_b = ab.sigma_b * phi;
    let r_e = sigma_e * t0 * phi;
    let r_c = s2 * gamma * phi * phi;
    Ok(AbsorptionBreakdown {
        r_b,
        r_e,
        r_c,
        r_d,
        total: r_b + r_e + r_c + r_d,
        regime: None,
    })
}

/// Crossover photon-flux densities (photons/m²·s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossovers {
    /// Linear (Boltzmann-tail + entangled) = quadratic.
    pub phi_ec: f64,
    /// Boltzmann-tail alone = quadratic.
    pub phi_bc: f64,
    /// `φ_EC/φ_BC = 1 + 𝒯₀σ_E/σ_B` (∞ when σ_B = 0).
    pub ratio: f64,
}

pub fn crossover_flux(ab: &AbsorberSpec, sigma_e: f64, t0: f64, gamma: f64) -> Result<Crossovers> {
    let s2 = ab.sigma2()?;
    check("sigma_2p", s2, s2 > 0.0, "> 0")?;
    check("T0", t0, t0 > 0.0 && t0 <= 1.0, "(0, 1]")?;
    check("Gamma", gamma, gamma >= 1.0, ">= 1")?;
    check("sigma_E", sigma_e, sigma_e >= 0.0, ">= 0")?;
    let denom = s2 * gamma;
    let ratio = if ab.sigma_b > 0.0 {
        1.0 + t0 * sigma_e / ab.sigma_b
    } else {
        f64::INFINITY
    };
    Ok(Crossovers {
        phi_ec: (ab.sigma_b + t0 * sigma_e) / denom,
        phi_bc: ab.sigma_b / denom,
        ratio,
    })
}

/// Entanglement time implied by a measured crossover: `T_E = 𝒯₀/(Γ·A_E·φ_EC)`.
pub fn entanglement_time_from_crossover(phi_ec: f64, a_e: f64, t0: f64, gamma: f64) -> Result<f64> {
    for (what, v) in [("phi_EC", phi_ec), ("A_E", a_e), ("T0", t0), ("Gamma", gamma)] {
        check(what, v, v > 0.0, "> 0")?;
    }
    Ok(t0 / (gamma * a_e * phi_ec))
}

/// Two-photon rate `g₂σ⁽²⁾Γφ²` for bright squeezed vacuum in the
/// broad-linewidth limit.
pub fn bsv_tpa_rate(g2: f64, sigma2: f64, gamma: f64, phi: f64) -> Result<f64> {
    check("g2", g2, g2 >= 1.0, ">= 1")?;
    check("sigma_2p", sigma2, sigma2 >= 0.0, ">= 0")?;
    check("Gamma", gamma, gamma >= 1.0, ">= 1")?;
    check("photon-flux density", phi, phi >= 0.0, ">= 0")?;
    Ok(g2 * sigma2 * gamma * phi * phi)
}

/// Absorption-equivalent cross sections of a photoemitter: `σ_E ≡ η_E` and
/// `σ⁽²⁾ ≡ 𝓛_C(hν)²/e`, with `photon_energy` in J.
pub fn photoemission_equivalent(eta_e: f64, l_c: f64, photon_energy: f64) -> Result<(f64, f64)> {
    check("eta_E", eta_e, eta_e >= 0.0, ">= 0")?;
    check("L_C", l_c, l_c > 0.0, "> 0")?;
    check("photon energy", photon_energy, photon_energy > 0.0, "> 0")?;
    Ok((eta_e, l_c * photon_energy * photon_energy / subthresh_core::constants::E_CHARGE))
}

/// Absorber with only σ_B and σ⁽²⁾, e.g. from [`photoemission_equivalent`].
pub fn equivalent_absorber(name: &str, sigma_b: f64, sigma2: f64) -> Result<AbsorberSpec> {
    if sigma2 <= 0.0 {
        return Err(AbsorptionError::Inconsistent(name.into(), "sigma_2p must be > 0".into()));
    }
    AbsorberSpec::simple(name, sigma_b, sigma2)
}
