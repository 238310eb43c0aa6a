//! Entanglement-time sweeps and coherent comparison.

use crate::error::{check, Result};
use crate::etpp::{etpp_rate, EtppConfig};
use subthresh_core::constants::E_CHARGE;
use subthresh_core::Material;
use subthresh_sources::{EntangledSource, OpticalPath};

/// One row of a `μ_E(T_E)` sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub t_e: f64,
    pub mu_e: f64,
    pub eta_e: f64,
    pub nondegeneracy: f64,
}

/// `n` log-spaced values from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
                .collect()
        }
    }
}

/// Sweeps `T_E` for each nondegeneracy in `rs`, holding everything else
/// in `src` fixed. Rows are ordered by `r` then `T_E`.
pub fn etpp_curve(
    mat: &Material,
    src: &EntangledSource,
    path: &OpticalPath,
    cfg: &EtppConfig,
    t_values: &[f64],
    rs: &[f64],
) -> Result<Vec<CurvePoint>> {
    let mut out = Vec::with_capacity(t_values.len() * rs.len());
    for &r in rs {
        for &t_e in t_values {
            let s = EntangledSource {
                nondegeneracy: r,
                t_e,
                ..src.clone()
            };
            s.validate()?;
            let res = etpp_rate(mat, &s, path, cfg)?;
            out.push(CurvePoint {
                t_e,
                mu_e: res.rates.mu,
                eta_e: res.rates.eta,
                nondegeneracy: r,
            });
        }
    }
    Ok(out)
}

/// Photon-flux density at which a linear entangled current
/// `e·η_E·φA` equals the coherent `𝓛_C·(φ·hν)²·A`.
pub fn self_crossing_flux(eta_e: f64, l_c: f64, photon_energy: f64) -> Result<f64> {
    check("eta_E", eta_e, eta_e > 0.0, "> 0")?;
    check("L_C", l_c, l_c > 0.0, "> 0")?;
    check("photon energy", photon_energy, photon_energy > 0.0, "> 0")?;
    Ok(E_CHARGE * eta_e / (l_c * photon_energy * photon_energy))
}
