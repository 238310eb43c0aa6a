//! `absorb`: entangled-two-photon cross section of an absorber for a given
//! source, its crossovers, and optional rate tables.

use crate::error::Result;
use crate::{to_json, Artifact, Context};
use serde::Serialize;
use subthresh_absorption::{crossover_flux, particle_rates, sigma_e_from_sigma2, AbsorberRecord, Regime};

#[derive(Debug, Serialize)]
struct RateRow {
    flux_density: f64,
    r_b: f64,
    r_e: f64,
    r_c: f64,
    r_d: f64,
    total: f64,
}

#[derive(Debug, Serialize)]
struct AbsorbReport {
    provenance: crate::Provenance,
    absorber: String,
    record: AbsorberRecord,
    a_e: f64,
    t_e: f64,
    a_e_t_e: f64,
    /// σ⁽²⁾ (m⁴·s).
    sigma_2p: f64,
    /// σ_E (m²).
    sigma_e: f64,
    /// δ_E = σ_E·A_E·T_E (m⁴·s).
    delta_e: f64,
    alpha: f64,
    regime: Regime,
    /// Sample-plane crossovers (photons/m²·s); `null` when infinite.
    phi_ec: f64,
    phi_bc: f64,
    rates: Vec<RateRow>,
}

pub fn run(ctx: &Context) -> Result<Vec<Artifact>> {
    let c = &ctx.config().absorb;
    let ab = ctx.loaded.absorbers()?.get(&c.absorber)?;
    let record = ab.to_record();
    let s2 = ab.sigma2()?;
    let est = sigma_e_from_sigma2(&ab, c.a_e, c.t_e, c.regime)?;
    let cross = crossover_flux(&ab, est.sigma_e, c.transmittance, c.gamma)?;
    let rates = c
        .flux_densities
        .iter()
        .map(|&phi| {
            let r = particle_rates(&ab, est.sigma_e, phi, c.transmittance, c.gamma, c.dark_rate)?;
            Ok(RateRow {
                flux_density: phi,
                r_b: r.r_b,
                r_e: r.r_e,
                r_c: r.r_c,
                r_d: r.r_d,
                total: r.total,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let record_toml = toml::to_string(&record).unwrap_or_default();
    let report = AbsorbReport {
        provenance: ctx.provenance("absorb").with_material(&c.absorber, &record_toml),
        absorber: c.absorber.clone(),
        record,
        a_e: c.a_e,
        t_e: c.t_e,
        a_e_t_e: c.a_e * c.t_e,
        sigma_2p: s2,
        sigma_e: est.sigma_e,
        delta_e: est.sigma_e * c.a_e * c.t_e,
        alpha: est.alpha,
        regime: est.regime,
        phi_ec: cross.phi_ec,
        phi_bc: cross.phi_bc,
        rates,
    };
    Ok(vec![Artifact {
        name: "absorb.json".into(),
        contents: to_json(&report)?,
    }])
}
