use proptest::prelude::*;
use subthresh_sources::*;

proptest! {
    #[test]
    fn gamma_at_least_one(samples in prop::collection::vec(0.0f64..10.0, 3..64)) {
        prop_assume!(samples.iter().any(|&s| s > 0.0));
        let w = Waveform::new(Shape::Sampled { period: 1.0, samples: samples.clone() }, PowerLevel::Mean(1.0)).unwrap();
        let s = w.stats().unwrap();
        prop_assert!(s.gamma >= 1.0 - 1e-12);
        let constant = samples.iter().all(|&x| (x - samples[0]).abs() < 1e-15);
        if constant {
            prop_assert!((s.gamma - 1.0).abs() < 1e-12);
        }
        prop_assert!(s.lockin_fraction >= 0.0 && s.lockin_fraction <= 1.0 + 1e-9);
    }

    #[test]
    fn semicircle_gamma_duty_product(d in 1e-4f64..1.0) {
        let w = Waveform::new(Shape::Semicircular { tau0: d, tau1: 1.0 }, PowerLevel::Peak(2.0)).unwrap();
        let s = w.stats().unwrap();
        let target = 32.0 / (3.0 * std::f64::consts::PI.powi(2));
        prop_assert!((s.gamma * s.duty_cycle - target).abs() < 1e-9);
    }

    #[test]
    fn g2_monotone_and_bounded(m in 1u32..100_000) {
        let a = g2_modes(m).unwrap();
        let b = g2_modes(m + 1).unwrap();
        prop_assert!(b >= a);
        prop_assert!((1.0..2.0).contains(&a));
    }

    #[test]
    fn loss_laws(pairs in 0.0f64..1e9, singles in 0.0f64..1e9, t in 0.0f64..=1.0) {
        let fb = FluxBreakdown::new(pairs, singles, 1e-9).unwrap();
        let out = apply_loss(&fb, t).unwrap();
        let tot = fb.total_photon_flux();
        prop_assert!((out.total_photon_flux() - t * tot).abs() <= 1e-9 * tot.max(1.0));
        prop_assert!((out.pair_flux - t * t * pairs).abs() <= 1e-12 * pairs.max(1.0));
        prop_assert!(out.pair_flux >= 0.0 && out.singleton_flux >= 0.0);
    }
}
