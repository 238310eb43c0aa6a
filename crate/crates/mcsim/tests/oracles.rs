use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subthresh_absorption::{crossover_flux, sigma_e_from_sigma2, AbsorberSpec, Regime};
use subthresh_mcsim::*;

/// Twin coincidence probability per pair 𝒯²·(2T_A/T_E)·(σ₁/A_E) = 0.02;
/// crossover at A/(2T_E·A_E) = 5e12 pairs/s.
fn base() -> SimConfig {
    SimConfig {
        pair_rate: 5e12,
        duration: 5e-8,
        transmittance: 1.0,
        area: 1e-10,
        a_e: 1e-11,
        sigma_1: 1e-12,
        t_a: 1e-13,
        t_e: 1e-12,
        envelope: None,
        seed: 20240619,
        trials: 4,
    }
}

const R_CROSS: f64 = 5e12;

/// Configuration delivering `pairs` pairs in total at `rate`.
fn with_pairs(cfg: SimConfig, rate: f64, pairs: f64) -> SimConfig {
    SimConfig {
        pair_rate: rate,
        duration: pairs / rate / cfg.trials as f64,
        ..cfg
    }
}

fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = (x.iter().map(|v| v.ln()).collect(), y.iter().map(|v| v.ln()).collect());
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Sample-plane crossover flux from the analytic particle model for the
/// absorber equivalent to `cfg` (σ⁽²⁾ = σ₁²T_A, broad pump).
fn analytic_crossover(cfg: &SimConfig) -> f64 {
    let ab = AbsorberSpec::simple("sim", 0.0, cfg.sigma_1 * cfg.sigma_1 * cfg.t_a).unwrap();
    let se = sigma_e_from_sigma2(&ab, cfg.a_e, cfg.t_e, Regime::Broad).unwrap();
    crossover_flux(&ab, se.sigma_e, cfg.transmittance, cfg.gamma()).unwrap().phi_ec
}

fn sweep_rates(center: f64) -> Vec<f64> {
    [0.1, 0.316, 1.0, 3.16, 10.0].iter().map(|k| k * center).collect()
}

fn run_sweep(cfg: SimConfig, center: f64) -> CrossoverMc {
    estimate_crossover_mc(&cfg, &sweep_rates(center), Some(1e6)).unwrap()
}

#[test]
fn crossover_matches_particle_model() {
    let cfg = base();
    let mc = run_sweep(cfg, R_CROSS);
    let analytic = analytic_crossover(&cfg);
    let rel = (mc.phi_ec / analytic - 1.0).abs();
    assert!(rel < 0.10, "MC {:e} ± {:e} vs analytic {analytic:e}", mc.phi_ec, mc.phi_ec_err);
    assert!(!mc.above_range);
    assert!(mc.points.windows(2).all(|w| w[1].flux_density > w[0].flux_density));
}

#[test]
fn fixed_duration_sweep() {
    let cfg = with_pairs(base(), R_CROSS, 2e5);
    let mc = estimate_crossover_mc(&cfg, &sweep_rates(R_CROSS), None).unwrap();
    let analytic = analytic_crossover(&cfg);
    assert!((mc.phi_ec / analytic - 1.0).abs() < 3.0 * mc.phi_ec_err / mc.phi_ec + 0.02);
}

#[test]
fn pulsed_envelope_lowers_crossover_by_gamma() {
    let steady = base();
    let pulsed = SimConfig {
        envelope: Some(Envelope { period: 1e-10, duty: 0.25 }),
        ..steady
    };
    let s = run_sweep(steady, R_CROSS);
    let p = run_sweep(pulsed, R_CROSS / 4.0);
    let shift = p.phi_ec / s.phi_ec;
    assert!((shift / 0.25 - 1.0).abs() < 0.15, "shift {shift}");
    let analytic = analytic_crossover(&pulsed);
    assert!((p.phi_ec / analytic - 1.0).abs() < 0.15);
}

#[test]
fn no_quadratic_signal_gives_above_range_sentinel() {
    // Pair rates a million times below the crossover: accidentals ≈ 0.
    let cfg = with_pairs(base(), R_CROSS * 1e-6, 2e5);
    let mc = estimate_crossover_mc(&cfg, &[R_CROSS * 1e-6, R_CROSS * 2e-6], None).unwrap();
    assert!(mc.above_range, "{mc:?}");
    assert!(mc.points.iter().all(|p| p.linear_rate > 0.0));
}

#[test]
fn loss_exponents() {
    // ≥ 1e6 pairs per point, far below the crossover.
    let ts = [1.0, 0.8, 0.6, 0.4, 0.2];
    let (mut twin, mut singles) = (Vec::new(), Vec::new());
    for (i, &t) in ts.iter().enumerate() {
        let cfg = SimConfig {
            transmittance: t,
            seed: 7 + i as u64,
            ..with_pairs(base(), R_CROSS * 1e-2, 1e6)
        };
        let out = simulate_stream(&cfg).unwrap();
        twin.push(out.twin_events as f64);
        singles.push(out.single_absorptions as f64);
    }
    let k2 = slope(&ts, &twin);
    let k1 = slope(&ts, &singles);
    assert!((k2 - 2.0).abs() < 0.05, "twin exponent {k2}");
    assert!((k1 - 1.0).abs() < 0.02, "single exponent {k1}");
}

#[test]
fn twin_linear_and_accidental_quadratic_in_rate() {
    let rates = [R_CROSS * 0.1, R_CROSS * 0.3, R_CROSS];
    let (mut tw, mut acc) = (Vec::new(), Vec::new());
    for (i, &r) in rates.iter().enumerate() {
        let out = simulate_stream(&SimConfig {
            seed: 99 + i as u64,
            ..with_pairs(base(), r, 1e6)
        })
        .unwrap();
        tw.push(out.twin_rate.value);
        acc.push(out.accidental_rate.value);
    }
    let (s1, s2) = (slope(&rates, &tw), slope(&rates, &acc));
    assert!((s1 - 1.0).abs() < 0.05, "twin slope {s1}");
    assert!((s2 - 2.0).abs() < 0.05, "accidental slope {s2}");
}

#[test]
fn counts_match_window_probabilities() {
    // 1e6 pairs at the crossover; 3σ Poisson bands.
    let cfg = with_pairs(base(), R_CROSS, 1e6);
    let out = simulate_stream(&cfg).unwrap();
    for (seen, expected) in [
        (out.twin_rate, cfg.expected_twin_rate()),
        (out.accidental_rate, cfg.expected_accidental_rate()),
    ] {
        assert!((seen.value - expected).abs() < 3.0 * seen.error + 0.01 * expected, "{seen:?} vs {expected:e}");
    }
}

#[test]
fn zero_lifetime_gives_no_two_photon_events() {
    let out = simulate_stream(&SimConfig { t_a: 0.0, ..with_pairs(base(), R_CROSS, 1e5) }).unwrap();
    assert_eq!(out.twin_events + out.accidental_events, 0);
    assert!(out.single_absorptions > 0);
}

#[test]
fn identical_seed_identical_outcome() {
    let cfg = with_pairs(base(), R_CROSS, 1e5);
    let a = simulate_stream(&cfg).unwrap();
    let b = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| simulate_stream(&cfg).unwrap());
    assert_eq!(a, b);
    let c = simulate_stream(&SimConfig { seed: cfg.seed + 1, ..cfg }).unwrap();
    assert_ne!(a.trial_seeds, c.trial_seeds);
}

#[test]
fn counting_ignores_event_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let side = 1.0;
    let mut photons: Vec<Photon> = (0..4000u32)
        .map(|i| Photon {
            t: (i / 2) as f64 * 1e-3 + if i % 2 == 1 { 2e-4 } else { 0.0 },
            x: rand::Rng::random::<f64>(&mut rng),
            y: rand::Rng::random::<f64>(&mut rng),
            parent: i / 2,
            slot: (i % 2) as u8,
        })
        .collect();
    let reference = count_events(&mut photons.clone(), 5e-3, 0.05, side);
    for _ in 0..5 {
        photons.shuffle(&mut rng);
        assert_eq!(count_events(&mut photons, 5e-3, 0.05, side), reference);
    }
    assert!(reference.accidental > 0);
}

#[test]
fn invalid_configs_are_rejected() {
    let cfg = base();
    for bad in [
        SimConfig { transmittance: 1.2, ..cfg },
        SimConfig { duration: 0.0, ..cfg },
        SimConfig { area: -1.0, ..cfg },
        SimConfig { trials: 0, ..cfg },
        SimConfig { envelope: Some(Envelope { period: 1e-9, duty: 0.0 }), ..cfg },
    ] {
        assert!(matches!(simulate_stream(&bad), Err(SimError::OutOfRange { .. })), "{bad:?}");
    }
    assert!(matches!(
        simulate_stream(&SimConfig { duration: 1.0, ..cfg }),
        Err(SimError::TooLarge(_))
    ));
}

#[test]
fn standard_errors_are_poissonian() {
    let cfg = with_pairs(base(), R_CROSS, 1e5);
    let out = simulate_stream(&cfg).unwrap();
    let e = (out.twin_events as f64).sqrt() / out.exposure;
    assert_eq!(out.twin_rate.error, e);
    assert_eq!(out.per_trial.iter().map(|c| c.twin).sum::<u64>(), out.twin_events);
}

// ---- g₂ ----

#[test]
fn coherent_g2() {
    let g = sample_g2(FieldModel::Coherent, 100_000, 1).unwrap();
    assert!((g.g2 - 1.0).abs() <= 0.01);
}

#[test]
fn random_phase_g2() {
    // (2M − 1)/M = 1.9 for M = 10.
    let g = sample_g2(FieldModel::RandomPhase { modes: 10 }, 200_000, 2).unwrap();
    assert!((g.g2 - 1.9).abs() <= 0.04, "{g:?}");
    assert!((g.g2 - 1.9).abs() <= 3.0 * g.error + 1e-3, "{g:?}");
}

#[test]
fn thermal_g2() {
    let g = sample_g2(FieldModel::Thermal, 200_000, 3).unwrap();
    assert!((g.g2 - 2.0).abs() <= 0.05, "{g:?}");
    assert!((g.g2 - 2.0).abs() <= 3.0 * g.error, "{g:?}");
}

#[test]
fn too_few_g2_samples() {
    assert!(sample_g2(FieldModel::Thermal, 100, 0).is_err());
}
