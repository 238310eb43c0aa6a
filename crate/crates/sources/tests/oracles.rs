use approx::assert_relative_eq;
use std::f64::consts::PI;
use subthresh_core::SpectralPoint;
use subthresh_sources::*;

fn semicircular_train() -> Waveform {
    Waveform::new(
        Shape::Semicircular { tau0: 35e-6, tau1: 454.5e-6 },
        PowerLevel::Peak(0.160),
    )
    .unwrap()
}

#[test]
fn semicircular_pulse_train_statistics() {
    let s = semicircular_train().stats().unwrap();
    assert!((s.duty_cycle - 0.0770).abs() < 1e-4, "Δ = {}", s.duty_cycle);
    assert!((s.mean_power - 9.68e-3).abs() / 9.68e-3 < 0.01, "P̄ = {}", s.mean_power);
    assert!((s.mean_square - 1.31e-3).abs() / 1.31e-3 < 0.01, "⟨P²⟩ = {}", s.mean_square);
    assert!((s.gamma - 14.0).abs() / 14.0 < 0.02, "Γ = {}", s.gamma);
    assert!((s.lockin_fraction - 0.136).abs() / 0.136 < 0.10, "𝓕₁ = {}", s.lockin_fraction);
    assert_relative_eq!(s.gamma * s.duty_cycle, 32.0 / (3.0 * PI * PI), max_relative = 1e-9);
}

#[test]
fn semicircular_lockin_small_duty_limit() {
    // a₁ → 2⟨P²⟩ and Var[P²] → ⟨P⁴⟩ as Δ → 0, so 𝓕₁ → (5/3)Δ.
    let w = Waveform::new(Shape::Semicircular { tau0: 1e-9, tau1: 1e-3 }, PowerLevel::Peak(1.0)).unwrap();
    let s = w.stats().unwrap();
    assert_relative_eq!(s.lockin_fraction, 5.0 / 3.0 * 1e-6, max_relative = 1e-5);
}

#[test]
fn cw_conventions() {
    let s = Waveform::cw(1.0).stats().unwrap();
    assert_eq!(s.gamma, 1.0);
    assert_eq!(s.lockin_fraction, 1.0);
    assert_eq!(s.mean_power, 1.0);
    assert_eq!(s.duty_cycle, 1.0);
}

#[test]
fn rectangular_gamma_is_inverse_duty() {
    let w = Waveform::new(Shape::Rectangular { tau0: 1.0, tau1: 2.0 }, PowerLevel::Mean(0.5)).unwrap();
    let s = w.stats().unwrap();
    assert_relative_eq!(s.gamma, 2.0, max_relative = 1e-12);
    assert_relative_eq!(s.peak_power, 1.0, max_relative = 1e-12);
    // Square wave: fundamental carries 8/π² of the AC power.
    assert_relative_eq!(s.lockin_fraction, 8.0 / (PI * PI), max_relative = 1e-12);
}

#[test]
fn sampled_matches_analytic_semicircle() {
    let (tau0, tau1, n) = (35e-6, 454.5e-6, 200_000usize);
    let samples: Vec<f64> = (0..n)
        .map(|k| {
            let mut t = k as f64 * tau1 / n as f64;
            if t > tau1 / 2.0 {
                t -= tau1;
            }
            let x = 2.0 * t / tau0;
            if x.abs() < 1.0 { (1.0 - x * x).sqrt() } else { 0.0 }
        })
        .collect();
    let sampled = Waveform::new(Shape::Sampled { period: tau1, samples }, PowerLevel::Peak(0.16))
        .unwrap()
        .stats()
        .unwrap();
    let exact = semicircular_train().stats().unwrap();
    assert_relative_eq!(sampled.mean_power, exact.mean_power, max_relative = 1e-4);
    assert_relative_eq!(sampled.gamma, exact.gamma, max_relative = 1e-4);
    assert_relative_eq!(sampled.lockin_fraction, exact.lockin_fraction, max_relative = 1e-3);
    assert_relative_eq!(sampled.duty_cycle, exact.duty_cycle, max_relative = 1e-3);
}

#[test]
fn waveform_validation() {
    assert!(Waveform::new(Shape::Rectangular { tau0: 2.0, tau1: 1.0 }, PowerLevel::Peak(1.0)).is_err());
    assert!(Waveform::new(Shape::Semicircular { tau0: 0.0, tau1: 1.0 }, PowerLevel::Peak(1.0)).is_err());
    assert!(Waveform::new(Shape::Sampled { period: 1.0, samples: vec![1.0, -0.1, 0.0] }, PowerLevel::Peak(1.0)).is_err());
    let zero = Waveform::new(Shape::Sampled { period: 1.0, samples: vec![0.0, 0.0, 0.0] }, PowerLevel::Peak(1.0)).unwrap();
    assert_eq!(zero.stats(), Err(SourceError::ZeroPower));
    assert_eq!(Waveform::cw(0.0).stats(), Err(SourceError::ZeroPower));
}

#[test]
fn g2_mode_examples() {
    assert_eq!(g2_modes(1).unwrap(), 1.0);
    assert_eq!(g2_modes(2).unwrap(), 1.5);
    assert!(g2_modes(1_000_000).unwrap() > 1.999);
    assert!(g2_modes(0).is_err());
    let src = CoherentSource::new(SpectralPoint::from_wavelength_nm(845.0).unwrap(), Waveform::cw(1.0), ModeSpec::Modes(10)).unwrap();
    assert_relative_eq!(src.g2().unwrap(), 1.9, max_relative = 1e-12);
    assert!(CoherentSource::new(SpectralPoint::from_wavelength_nm(845.0).unwrap(), Waveform::cw(1.0), ModeSpec::G2(0.5)).is_err());
}

#[test]
fn spdc_output_examples() {
    let pump532 = SpectralPoint::from_wavelength_nm(532.0).unwrap();
    let out = spdc_output(0.175, 5.1e-6, pump532).unwrap();
    assert!((out.source_power - 900e-9).abs() / 900e-9 < 0.01, "P_E = {}", out.source_power);
    let pump400 = SpectralPoint::from_wavelength_nm(400.0).unwrap();
    let out = spdc_output(0.750, 1.8e-7, pump400).unwrap();
    assert_relative_eq!(out.source_power, 135e-9, max_relative = 1e-9);
    assert_relative_eq!(out.pair_flux, 135e-9 / pump400.photon_energy_j(), max_relative = 1e-12);
    let zero = spdc_output(0.0, 5.1e-6, pump532).unwrap();
    assert_eq!(zero.source_power, 0.0);
    assert_eq!(zero.pair_flux, 0.0);
}

#[test]
fn entangled_source_frequencies_and_pump_check() {
    let pump = SpectralPoint::from_wavelength_nm(406.0).unwrap();
    let s = EntangledSource::from_flux_density(pump, 1.0 / 3.0, 10e-15, 1e-10, 5e23, 1e-10).unwrap();
    assert_eq!(s.omega1() + s.omega2(), s.omega_p());
    assert_relative_eq!(s.photon_flux(), 5e13, max_relative = 1e-12);
    assert!(EntangledSource::new(pump, 1.0, 1e-14, 1e-10, 1e-6).is_err());
    assert!(EntangledSource::new(pump, 0.5, 0.0, 1e-10, 1e-6).is_err());
    let p532 = SpectralPoint::from_wavelength_nm(532.0).unwrap();
    let ok = EntangledSource::new(p532, 0.5, 340e-15, 1.6e-9, 900e-9).unwrap().with_pump(0.175, 5.1e-6);
    assert!(ok.is_ok());
    let bad = EntangledSource::new(p532, 0.5, 340e-15, 1.6e-9, 900e-9).unwrap().with_pump(0.175, 6e-6);
    assert!(matches!(bad, Err(SourceError::Inconsistent(_))));
}

#[test]
fn apply_loss_examples() {
    let fb = FluxBreakdown::new(1000.0, 0.0, 1e-9).unwrap();
    assert_eq!(apply_loss(&fb, 1.0).unwrap(), fb);
    let lossy = apply_loss(&fb, 0.7).unwrap();
    assert_relative_eq!(lossy.pair_flux / fb.pair_flux, 0.49, max_relative = 1e-12);
    assert_relative_eq!(lossy.total_photon_flux() / fb.total_photon_flux(), 0.70, max_relative = 1e-12);
    assert!(apply_loss(&fb, 1.2).is_err());
    assert!(apply_loss(&fb, -0.1).is_err());
}

#[test]
fn pair_exponent_is_exactly_two() {
    let fb = FluxBreakdown::new(1e6, 3e5, 1e-9).unwrap();
    let ts = [0.2, 0.4, 0.6, 0.8, 1.0];
    let xs: Vec<f64> = ts.iter().map(|t: &f64| t.ln()).collect();
    let ys: Vec<f64> = ts.iter().map(|&t| apply_loss(&fb, t).unwrap().pair_flux.ln()).collect();
    let zs: Vec<f64> = ts.iter().map(|&t| apply_loss(&fb, t).unwrap().total_photon_flux().ln()).collect();
    let slope = |ys: &[f64]| {
        let n = xs.len() as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
        let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        sxy / sxx
    };
    assert!((slope(&ys) - 2.0).abs() < 1e-9);
    assert!((slope(&zs) - 1.0).abs() < 1e-9);
}

#[test]
fn optical_path_validation() {
    assert!(OpticalPath::direct(1e-9).is_ok());
    assert!(OpticalPath::new(1.2, 1.0, 1e-9, 1.0, 1.0).is_err());
    assert!(OpticalPath::new(0.5, 0.7, 0.0, 1.0, 1.0).is_err());
    assert!(OpticalPath::new(0.5, 0.7, 1e-9, 0.0, 1.0).is_err());
    assert!(OpticalPath::new(0.5, 0.7, 1e-9, 0.5, 0.9).is_err());
}
