//! `curves`: μ_E(T_E) for several nondegeneracies, with the coherent
//! two-photon current at the same flux for comparison.

use crate::error::{CliError, Result};
use crate::{Artifact, Context};
use subthresh_core::constants::E_CHARGE;
use subthresh_core::SpectralPoint;
use subthresh_emission::{etpp_rate, log_space, tpp_current};
use subthresh_sources::{EntangledSource, OpticalPath};

pub const HEADER: &str = "T_E_s,mu_E_per_s,eta_E,r_nondegeneracy,i_E_A,i_C_A";

pub fn run(ctx: &Context) -> Result<Vec<Artifact>> {
    let c = &ctx.config().curves;
    if c.nondegeneracy.is_empty() {
        return Err(CliError::Validation(
            "curves.nondegeneracy is empty; give at least one ratio, e.g. --set 'curves.nondegeneracy=[0.5, 0.3333333333, 0.125]'".into(),
        ));
    }
    if c.t_e_points == 0 || !(c.t_e_min > 0.0 && c.t_e_max >= c.t_e_min) {
        return Err(CliError::Validation(format!(
            "T_E grid needs t_e_points >= 1 and 0 < t_e_min <= t_e_max (got {} points over [{:e}, {:e}])",
            c.t_e_points, c.t_e_min, c.t_e_max
        )));
    }
    let registry = ctx.loaded.materials()?;
    let mat = registry.get(&c.material)?;
    let record = toml::to_string(registry.record(&c.material).expect("present after get")).unwrap_or_default();
    let pump = SpectralPoint::from_wavelength_nm(c.pump_nm)?;
    let path = OpticalPath::new(c.transmittance, c.transmittance, c.area, 1.0, 1.0)?;

    let mut warnings = Vec::new();
    // Coherent light at the degenerate wavelength and the same sample flux.
    let degenerate = SpectralPoint::from_wavelength_nm(2.0 * c.pump_nm)?;
    let i_c = match tpp_current(&mat, &degenerate, c.transmittance * c.flux_density, c.area) {
        Ok(i) => Some(i),
        Err(e) => {
            warnings.push(format!("coherent comparison unavailable for {}: {e}", c.material));
            None
        }
    };

    let mut body = String::new();
    for &r in &c.nondegeneracy {
        for t_e in log_space(c.t_e_min, c.t_e_max, c.t_e_points) {
            let src = EntangledSource::from_flux_density(pump, r, t_e, c.a_e, c.flux_density, c.area)?;
            let res = etpp_rate(&mat, &src, &path, &c.etpp)?;
            for w in &res.warnings {
                warnings.push(format!("r = {r}, T_E = {t_e:e} s: {w}"));
            }
            let i_c = i_c.map(|v| format!("{v:e}")).unwrap_or_default();
            body += &format!(
                "{t_e:e},{:e},{:e},{r},{:e},{i_c}\n",
                res.rates.mu,
                res.rates.eta,
                res.rates.mu * E_CHARGE
            );
        }
    }

    let prov = ctx.provenance("curves").with_material(&c.material, &record);
    let mut out = prov.header();
    for w in warnings {
        out += &format!("# warning: {w}\n");
    }
    out += HEADER;
    out.push('\n');
    out += &body;
    Ok(vec![Artifact {
        name: "curves.csv".into(),
        contents: out,
    }])
}
