use approx::assert_relative_eq;
use subthresh_absorption::*;
use subthresh_core::constants::E_CHARGE;
use subthresh_core::SpectralPoint;

fn builtin(name: &str) -> AbsorberSpec {
    AbsorberRegistry::builtin().get(name).unwrap()
}

fn close(x: f64, target: f64, rel: f64) -> bool {
    ((x - target) / target).abs() <= rel
}

#[test]
fn rhodamine_row() {
    let s = sigma_e_from_sigma2(&builtin("R6G"), 1.0, 3.4e-24, Regime::Auto).unwrap();
    assert_eq!(s.regime, Regime::Broad);
    assert!(close(s.sigma_e, 1.5e-33, 0.05), "σ_E = {:e}", s.sigma_e);
    assert!(close(s.sigma_e * 3.4e-24, 5.1e-57, 1e-9));
}

#[test]
fn hydrogen_row() {
    let s = sigma_e_from_sigma2(&builtin("H1S2S"), 2e-12, 3e-12, Regime::Auto).unwrap();
    assert!(close(s.sigma_e, 3.0e-17, 0.01), "σ_E = {:e}", s.sigma_e);
    assert!(close(s.sigma_e * 6.0e-24, 1.8e-40, 1e-9));
}

#[test]
fn regimes() {
    let mut ab = AbsorberSpec::simple("x", 0.0, 1e-56).unwrap();
    let base = 1e-56 / 1e-24;
    // Broad α = 1 is the particle formula exactly.
    let s = sigma_e_from_sigma2(&ab, 1e-12, 1e-12, Regime::Broad).unwrap();
    assert_eq!(s.sigma_e, base);
    assert!(sigma_e_from_sigma2(&ab, 1e-12, 1e-12, Regime::Narrow).is_err());
    assert!(sigma_e_from_sigma2(&ab, 1e-12, 1e-12, Regime::Tight).is_err());
    ab.gamma_fg = Some(1e10);
    ab.b = Some(1e13);
    let s = sigma_e_from_sigma2(&ab, 1e-12, 1e-12, Regime::Narrow).unwrap();
    assert_relative_eq!(s.sigma_e, base * 1e-3, max_relative = 1e-12);
    let s = sigma_e_from_sigma2(&ab, 1e-12, 1e-12, Regime::Auto).unwrap();
    assert_eq!(s.regime, Regime::Narrow);
    ab.gamma_fg = Some(1e15);
    let s = sigma_e_from_sigma2(&ab, 1e-12, 1e-12, Regime::Auto).unwrap();
    assert_eq!((s.regime, s.alpha), (Regime::Broad, 1.0));
    ab.gamma_fg = Some(1e13);
    let s = sigma_e_from_sigma2(&ab, 1e-12, 1e-12, Regime::Auto).unwrap();
    assert_eq!(s.regime, Regime::Blend);
    assert_relative_eq!(s.alpha, 1.0, max_relative = 1e-12);
    // Tight: σ_E = σ⁽²⁾/(σ₁T_A).
    ab.sigma_1 = Some(1e-20);
    ab.t_a = Some(1e-16);
    let s = sigma_e_from_sigma2(&ab, 1e-21, 1e-17, Regime::Tight).unwrap();
    assert_relative_eq!(s.sigma_e, 1e-56 / 1e-36, max_relative = 1e-12);
}

#[test]
fn sigma2_consistency_check() {
    let rec = AbsorberRecord {
        sigma_1: Some(1e-20),
        t_a: Some(1e-16),
        sigma_2p: Some(1.4e-56),
        ..Default::default()
    };
    assert!(AbsorberSpec::from_record("ok", &rec).is_ok());
    let bad = AbsorberRecord { sigma_2p: Some(3e-56), ..rec };
    assert!(matches!(AbsorberSpec::from_record("bad", &bad), Err(AbsorptionError::Inconsistent(..))));
}

#[test]
fn zero_flux_zero_rates() {
    let r = particle_rates(&builtin("R6G"), 1.5e-33, 0.0, 0.7, 2.0, 0.0).unwrap();
    assert_eq!((r.r_b, r.r_e, r.r_c, r.total), (0.0, 0.0, 0.0, 0.0));
    let r = particle_rates(&builtin("R6G"), 1.5e-33, 0.0, 0.7, 2.0, 3.0).unwrap();
    assert_eq!(r.total, 3.0);
    assert!(particle_rates(&builtin("R6G"), 1.5e-33, -1.0, 0.7, 2.0, 0.0).is_err());
}

#[test]
fn crossover_balances_rates() {
    let ab = AbsorberSpec::simple("x", 2e-25, 5.1e-57).unwrap();
    let (sigma_e, t0, gamma) = (1.5e-33, 0.6, 3.0);
    let c = crossover_flux(&ab, sigma_e, t0, gamma).unwrap();
    // Crossovers are stated in sample-plane flux 𝒯₀φ.
    let r = particle_rates(&ab, sigma_e, c.phi_ec / t0, t0, gamma, 0.0).unwrap();
    assert_relative_eq!(r.r_b + r.r_e, r.r_c, max_relative = 1e-9);
    assert!(c.phi_ec >= c.phi_bc);
    assert_relative_eq!(c.ratio, c.phi_ec / c.phi_bc, max_relative = 1e-12);
    let c2 = crossover_flux(&ab, sigma_e, t0, 2.0 * gamma).unwrap();
    assert_relative_eq!(c2.phi_ec, c.phi_ec / 2.0, max_relative = 1e-15);
    assert_relative_eq!(c2.phi_bc, c.phi_bc / 2.0, max_relative = 1e-15);
    assert!(crossover_flux(&AbsorberSpec::simple("z", 0.0, 0.0).unwrap(), sigma_e, t0, gamma).is_err());
}

#[test]
fn no_boltzmann_tail() {
    let ab = AbsorberSpec::simple("x", 0.0, 5.1e-57).unwrap();
    let c = crossover_flux(&ab, 1.5e-33, 0.7, 1.0).unwrap();
    assert_relative_eq!(c.phi_ec, 0.7 * 1.5e-33 / 5.1e-57, max_relative = 1e-15);
    assert_eq!(c.phi_bc, 0.0);
    assert!(c.ratio.is_infinite());
}

#[test]
fn photoemitter_equivalent_crossover() {
    let hv = SpectralPoint::from_wavelength_nm(1064.0).unwrap().photon_energy_j();
    let (sigma_e, sigma2) = photoemission_equivalent(2.3e-13, 5.8e-16, hv).unwrap();
    assert_relative_eq!(sigma2, 5.8e-16 * hv * hv / E_CHARGE, max_relative = 1e-15);
    let ab = equivalent_absorber("CsK2Sb-ETPP", 0.0, sigma2).unwrap();
    let c = crossover_flux(&ab, sigma_e, 0.7, 1.0).unwrap();
    assert!(close(c.phi_ec, 1.3e21, 0.05), "φ_EC = {:e}", c.phi_ec);
}

#[test]
fn entanglement_time_from_measured_crossover() {
    let t = entanglement_time_from_crossover(1.3e21, 1.6e-9, 0.7, 1.0).unwrap();
    assert!(close(t, 3.4e-13, 0.02), "T_E = {t:e}");
    let t2 = entanglement_time_from_crossover(1.3e21, 3.2e-9, 0.7, 1.0).unwrap();
    assert_relative_eq!(t2, t / 2.0, max_relative = 1e-15);
    assert!(entanglement_time_from_crossover(0.0, 1.6e-9, 0.7, 1.0).is_err());

    // Round trip through the σ_B = 0 crossover with σ_E = σ⁽²⁾/(A_E T_E).
    let ab = AbsorberSpec::simple("x", 0.0, 5.1e-57).unwrap();
    let (a_e, t_e, t0, g) = (1.6e-9, 3.4e-13, 0.7, 1.3);
    let s = sigma_e_from_sigma2(&ab, a_e, t_e, Regime::Broad).unwrap();
    let c = crossover_flux(&ab, s.sigma_e, t0, g).unwrap();
    let back = entanglement_time_from_crossover(c.phi_ec, a_e, t0, g).unwrap();
    assert_relative_eq!(back, t_e, max_relative = 1e-12);
}

#[test]
fn bsv_rate() {
    let ab = builtin("R6G");
    let s2 = ab.sigma2().unwrap();
    let r = particle_rates(&ab, 0.0, 1e24, 1.0, 1.7, 0.0).unwrap();
    assert_relative_eq!(bsv_tpa_rate(1.0, s2, 1.7, 1e24).unwrap(), r.r_c, max_relative = 1e-15);
    let one = bsv_tpa_rate(1.0, s2, 1.7, 1e24).unwrap();
    assert_relative_eq!(bsv_tpa_rate(2.0, s2, 1.7, 1e24).unwrap(), 2.0 * one, max_relative = 1e-15);
    assert_relative_eq!(bsv_tpa_rate(3.0, s2, 1.7, 1e24).unwrap(), 3.0 * one, max_relative = 1e-15);
    assert!(bsv_tpa_rate(0.5, s2, 1.7, 1e24).is_err());
}

#[test]
fn registry_parse_and_round_trip() {
    let text = r#"
[material.Foo]
kind = "metal"

[absorber.Dye]
sigma_B = 1e-26
sigma_2p_gm = 100.0
gamma_fg = 1e13
B = 1e14
"#;
    let reg = AbsorberRegistry::load(text).unwrap();
    let dye = reg.get("Dye").unwrap();
    assert_relative_eq!(dye.sigma2().unwrap(), 1e-56, max_relative = 1e-15);
    assert!(reg.get("R6G").is_ok());
    let again = AbsorberRegistry::parse(&reg.to_toml()).unwrap();
    assert_eq!(again.get("Dye").unwrap(), dye);
    assert!(AbsorberRegistry::parse("[absorber.X]\nsigma_2p = 1.0\nsigma_2p_gm = 1.0\n").is_err());
    assert!(AbsorberRegistry::parse("[absorber.X]\nbogus = 1.0\n").is_err());
    assert!(AbsorberRegistry::parse("[other]\n").is_err());
    assert!(matches!(reg.get("nope"), Err(AbsorptionError::NotFound(_))));
}
