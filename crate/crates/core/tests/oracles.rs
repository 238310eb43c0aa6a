use approx::assert_relative_eq;
use subthresh_core::constants::{self, classical_electron_radius, fowler_script_a};
use subthresh_core::units::{ev_to_joule, ev_to_wavelength, joule_to_ev, qe_factor, wavelength_to_ev, HC_EV_NM};
use subthresh_core::{max_kinetic_energy, responsivity_to_qe, CoreError, Material, MaterialRegistry, PhysicalConstants, SpectralPoint};

#[test]
fn classical_radius_matches_first_principles() {
    assert_relative_eq!(classical_electron_radius(), constants::R0_CLASSICAL, max_relative = 1e-6);
}

#[test]
fn fowler_prefactor_recomputes() {
    let k = PhysicalConstants::codata();
    let again = fowler_script_a(k.m, k.k_b, k.h);
    assert_relative_eq!(again, k.fowler_script_a, max_relative = 1e-9);
    assert_eq!(k.with_fowler_a(1e-35).fowler_a, 1e-35);
}

#[test]
fn hc_over_e_is_the_convenient_value() {
    assert_relative_eq!(HC_EV_NM, 1239.84, max_relative = 1e-4);
    assert_relative_eq!(PhysicalConstants::codata().hc_ev_nm(), HC_EV_NM, max_relative = 1e-15);
}

#[test]
fn ev_to_wavelength_examples() {
    assert_relative_eq!(ev_to_wavelength(2.1).unwrap(), 590.4, max_relative = 2e-4);
    assert_relative_eq!(ev_to_wavelength(1.0).unwrap(), 1239.8, max_relative = 1e-4);
    for nm in [243.0, 406.0, 812.0, 1064.0] {
        let back = ev_to_wavelength(wavelength_to_ev(nm).unwrap()).unwrap();
        assert_relative_eq!(back, nm, max_relative = 1e-12);
    }
    assert!(matches!(ev_to_wavelength(0.0), Err(CoreError::NonPositive { .. })));
    assert!(ev_to_wavelength(-1.0).is_err());
}

#[test]
fn responsivity_to_qe_examples() {
    // Two-photon responsivity coefficients convert with the same factor.
    assert_relative_eq!(responsivity_to_qe(5.8e-16, 1064.0).unwrap(), 6.76e-16, max_relative = 1e-3);
    assert_relative_eq!(responsivity_to_qe(5.65e-19, 845.0).unwrap(), 8.29e-19, max_relative = 1e-3);
    assert_relative_eq!(responsivity_to_qe(3.7, HC_EV_NM).unwrap(), 3.7, max_relative = 1e-15);
    assert!(responsivity_to_qe(1.0, 0.0).is_err());
}

#[test]
fn qe_factor_at_1064_nm() {
    let f = qe_factor(1064.0).unwrap();
    assert!((f - 1.165).abs() / 1.165 < 5e-3, "factor {f}");
    let table_ratio = 6.7e-16 / 5.8e-16;
    assert!((f - table_ratio).abs() / table_ratio < 1e-2);
}

#[test]
fn spectral_point_views_agree() {
    let p = SpectralPoint::from_wavelength_nm(812.0).unwrap();
    assert_relative_eq!(p.wavelength_nm() * p.photon_energy_ev(), HC_EV_NM, max_relative = 1e-12);
    let c = constants::C_LIGHT;
    assert_relative_eq!(p.angular_frequency(), 2.0 * std::f64::consts::PI * c / p.wavelength_m(), max_relative = 1e-15);
    let q = SpectralPoint::from_angular_frequency(p.angular_frequency()).unwrap();
    assert_relative_eq!(q.wavelength_nm(), 812.0, max_relative = 1e-12);
    let r = SpectralPoint::from_photon_energy_j(p.photon_energy_j()).unwrap();
    assert_relative_eq!(r.wavelength_nm(), 812.0, max_relative = 1e-12);
    assert_relative_eq!(joule_to_ev(ev_to_joule(3.054)), 3.054, max_relative = 1e-15);
}

#[test]
fn max_kinetic_energy_examples() {
    let reg = MaterialRegistry::builtin();
    let cs = reg.get("CsK2Sb").unwrap();
    let hv = ev_to_joule(1.55);
    assert_relative_eq!(joule_to_ev(max_kinetic_energy(2, hv, &cs).unwrap()), 1.0, max_relative = 1e-9);
    assert_relative_eq!(joule_to_ev(max_kinetic_energy(1, hv, &cs).unwrap()), -0.55, max_relative = 1e-9);
    assert!(max_kinetic_energy(3, hv, &cs).is_err());
    // Window 1.0 eV < hν < 2.1 eV < 2hν admits two-photon but not one-photon emission.
    for hv_ev in [1.06, 1.17, 1.5, 2.0] {
        let hv = ev_to_joule(hv_ev);
        assert!(max_kinetic_energy(1, hv, &cs).unwrap() < 0.0);
        assert!(max_kinetic_energy(2, hv, &cs).unwrap() > 0.0);
    }
}

#[test]
fn builtin_lookups() {
    let reg = MaterialRegistry::builtin();
    let cs = reg.get("CsK2Sb").unwrap();
    assert_relative_eq!(joule_to_ev(cs.w_ion.unwrap()), 2.1, max_relative = 1e-12);
    assert_eq!(cs.xi, Some(4.5e-52));
    assert_eq!(cs.k_f, None);
    assert!(matches!(cs.require("k_F", cs.k_f), Err(CoreError::MissingParameter { field: "k_F", .. })));
    assert!(matches!(reg.get("Unobtainium"), Err(CoreError::NotFound(_))));
    for name in ["CsK2Sb", "Na", "Na2KSb", "Cs3Sb"] {
        let m = reg.get(name).unwrap();
        assert!(m.threshold().is_ok());
    }
    let na2 = reg.get("Na2KSb").unwrap();
    assert_relative_eq!(joule_to_ev(na2.w_ion.unwrap()), 2.0, max_relative = 1e-12);
    let cs3 = reg.get("Cs3Sb").unwrap();
    assert_relative_eq!(joule_to_ev(cs3.e_g.unwrap() + cs3.chi.unwrap()), 2.0, max_relative = 1e-12);
}

// Tabulated E_F = 3.12 eV gives k_F = 9.05e9 1/m, 2.7% below the tabulated
// 9.3e9: the 2% invariant cannot hold with the tabulated pair. Run with
// `--ignored`; the acceptance target reports it as a failing invariant.
#[test]
#[ignore = "tabulated Na E_F and k_F disagree by 2.7% (> 2% invariant); see acceptance"]
fn sodium_fermi_wavenumber_consistent() {
    let na = MaterialRegistry::builtin().get("Na").unwrap();
    let k = Material::wavenumber_of(na.e_f.unwrap());
    assert!((k - 9.3e9).abs() / 9.3e9 < 0.02, "k_F from E_F = {k}, table 9.3e9");
}

#[test]
fn reference_edges_default_by_kind() {
    let reg = MaterialRegistry::builtin();
    assert_eq!(reg.get("Na").unwrap().e_c().unwrap(), 0.0);
    let cs = reg.get("CsK2Sb").unwrap();
    assert_eq!(cs.e_c().unwrap(), cs.e_g.unwrap());
}

#[test]
fn round_trip_is_identical() {
    let reg = MaterialRegistry::builtin();
    let again = MaterialRegistry::parse(&reg.to_toml()).unwrap();
    assert_eq!(reg, again);
    let mut reg2 = MaterialRegistry::default();
    reg2.insert(&reg.get("Na").unwrap()).unwrap();
    assert_eq!(reg2.len(), 1);
}

#[test]
fn parse_errors_name_the_field() {
    let bad_w = "[material.X]\nkind = \"semiconductor\"\nE_g = 1.0\nchi = 1.1\nW_ion = 2.5\n";
    match MaterialRegistry::parse(bad_w) {
        Err(CoreError::InvalidField { field, .. }) => assert_eq!(field, "W_ion"),
        other => panic!("unexpected {other:?}"),
    }
    let bad_beta = "[material.X]\nkind = \"metal\"\nW_work = 2.0\nbeta = 1.5\n";
    assert!(matches!(MaterialRegistry::parse(bad_beta), Err(CoreError::InvalidField { field, .. }) if field == "beta"));
    let unknown = "[material.X]\nkind = \"metal\"\nW_work = 2.0\nflavour = 1.0\n";
    assert!(matches!(MaterialRegistry::parse(unknown), Err(CoreError::Parse(msg)) if msg.contains("flavour")));
    let life = "[material.X]\nkind = \"metal\"\nW_work = 2.0\ntau_j = 1e-14\nkappa_j = 5e14\n";
    assert!(matches!(MaterialRegistry::parse(life), Err(CoreError::InvalidField { field, .. }) if field == "kappa_j"));
    let band = "[material.X]\nkind = \"metal\"\nW_work = 2.0\nE_j_min = 3.0\nE_j_max = 2.0\n";
    assert!(MaterialRegistry::parse(band).is_err());
    assert!(MaterialRegistry::parse("[material.X\n").is_err());
    assert!(MaterialRegistry::parse("[widget.X]\na = 1\n").is_err());
}

#[test]
fn load_overlays_builtins_and_tolerates_absorbers() {
    let text = "[material.Na]\nkind = \"metal\"\nW_work = 2.3\n\n[absorber.R6G]\nsigma_2p_gm = 51.0\n";
    let reg = MaterialRegistry::load(text).unwrap();
    assert_eq!(reg.len(), 4);
    assert_relative_eq!(joule_to_ev(reg.get("Na").unwrap().w_work.unwrap()), 2.3, max_relative = 1e-12);
}
