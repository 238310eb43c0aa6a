use proptest::prelude::*;
use subthresh_mcsim::*;

fn cfg(rate: f64, t: f64, seed: u64) -> SimConfig {
    SimConfig {
        pair_rate: rate,
        duration: 2e4 / rate,
        transmittance: t,
        area: 1e-10,
        a_e: 1e-11,
        sigma_1: 1e-12,
        t_a: 1e-13,
        t_e: 1e-12,
        envelope: None,
        seed,
        trials: 2,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn outcome_is_a_function_of_config(rate in 1e11f64..1e13, t in 0.0f64..=1.0, seed in any::<u64>()) {
        let c = cfg(rate, t, seed);
        let a = simulate_stream(&c).unwrap();
        let b = simulate_stream(&c).unwrap();
        prop_assert_eq!(&a, &b);
        // Twins need both photons of a pair: at most half the photons.
        prop_assert!(2 * a.twin_events <= a.single_absorptions);
        prop_assert_eq!(a.trial_seeds.len(), 2);
    }

    #[test]
    fn counting_is_order_free(seed in any::<u64>(), rot in 0usize..500) {
        // A seed-dependent photon list compared against permuted copies.
        let mut photons: Vec<Photon> = (0..500u32)
            .map(|i| Photon {
                t: ((i as u64).wrapping_mul(seed | 1) % 997) as f64 * 1e-3,
                x: (i % 23) as f64 / 23.0,
                y: (i % 29) as f64 / 29.0,
                parent: i / 2,
                slot: (i % 2) as u8,
            })
            .collect();
        let a = count_events(&mut photons.clone(), 2e-3, 0.01, 1.0);
        photons.rotate_left(rot);
        photons.reverse();
        prop_assert_eq!(count_events(&mut photons, 2e-3, 0.01, 1.0), a);
    }
}
