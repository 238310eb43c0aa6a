use proptest::prelude::*;
use subthresh_analysis::fixtures::all_pairs;
use subthresh_analysis::*;
use subthresh_core::SpectralPoint;
use subthresh_sources::OpticalPath;

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn model(illumination: Illumination, response_unit: ResponseUnit) -> SeriesModel {
    let path = OpticalPath::new(0.6, 0.8, 2e-9, 0.5, 3.0).unwrap();
    let mut meta = SeriesMeta::new(SpectralPoint::from_wavelength_nm(900.0).unwrap(), path, illumination);
    meta.g2 = 2.0;
    SeriesModel {
        drive_unit: DriveUnit::SourcePower,
        response_unit,
        meta,
    }
}

fn series_from(m: &SeriesModel, p: &CurrentParams, drives: &[f64]) -> MeasurementSeries {
    let samples = drives
        .iter()
        .map(|&d| {
            let y = m.predict(p, d);
            Sample { drive: d, response: y, sigma: 0.02 * y }
        })
        .collect();
    MeasurementSeries::new(samples, m.drive_unit, m.response_unit, m.meta).unwrap()
}

proptest! {
    #[test]
    fn slope_of_exact_power_law(k in -3.0f64..3.0, c in -30.0f64..30.0, x0 in -12.0f64..0.0) {
        let x = log_space(10f64.powf(x0), 10f64.powf(x0 + 3.0), 9);
        let y: Vec<f64> = x.iter().map(|v| c.exp() * v.powf(k)).collect();
        let fit = loglog_fit(&x, &y).unwrap();
        prop_assert!((fit.slope - k).abs() < 1e-9);
    }

    #[test]
    fn prediction_is_additive(
        i_d in 0.0f64..1e-12, r_f in 0.0f64..1e-8, l_c in 0.0f64..1e-15, r_e in 0.0f64..1e-8,
        drive in 1e-9f64..1e-2,
    ) {
        let m = model(Illumination::Entangled, ResponseUnit::Current);
        let whole = m.predict(&CurrentParams { i_d, r_f, l_c, r_e }, drive);
        let parts: f64 = [
            CurrentParams { i_d, ..Default::default() },
            CurrentParams { r_f, ..Default::default() },
            CurrentParams { l_c, ..Default::default() },
            CurrentParams { r_e, ..Default::default() },
        ]
        .iter()
        .map(|p| m.predict(p, drive))
        .sum();
        prop_assert!((whole - parts).abs() <= 1e-14 * whole.abs().max(f64::MIN_POSITIVE));
    }

    #[test]
    fn extraction_round_trips(r_f in 1e-12f64..1e-8, l_c in 1e-19f64..1e-14, counting in any::<bool>()) {
        let ru = if counting { ResponseUnit::CountRate } else { ResponseUnit::Current };
        let m = model(Illumination::Classical, ru);
        let lin = series_from(&m, &CurrentParams { r_f, ..Default::default() }, &log_space(1e-8, 1e-4, 6));
        let est = extract_rf(&lin, &CurrentParams::default()).unwrap();
        prop_assert!((est.value / r_f - 1.0).abs() < 1e-9);
        let both = CurrentParams { r_f, l_c, ..Default::default() };
        let quad = series_from(&m, &both, &log_space(1e-4, 1e-1, 6));
        let est = extract_lc(&quad, &CurrentParams { r_f, ..Default::default() }).unwrap();
        prop_assert!((est.value / l_c - 1.0).abs() < 1e-9);
    }

    #[test]
    fn classification_ignores_common_scale(log_c in -12.0f64..12.0) {
        let c = 10f64.powf(log_c);
        for pair in all_pairs().unwrap() {
            let base = classify_scaling(&pair.entangled, &pair.coherent, None).unwrap();
            let scaled = classify_scaling(&pair.entangled.scaled(c), &pair.coherent.scaled(c), None).unwrap();
            prop_assert_eq!(base.label, scaled.label, "{}", pair.name);
        }
    }
}

/// On the expected counts with Poisson sigmas, the fitted covariance is the
/// inverse Fisher information.
#[test]
fn fitted_covariance_matches_bound_at_expectation() {
    let path = OpticalPath::direct(1e-9).unwrap();
    let m = SeriesModel {
        drive_unit: DriveUnit::IncidentPower,
        response_unit: ResponseUnit::CountRate,
        meta: SeriesMeta::new(SpectralPoint::from_wavelength_nm(800.0).unwrap(), path, Illumination::Coherent),
    };
    let p = CurrentParams { i_d: 1e-18, r_f: 3e-10, l_c: 6e-16, r_e: 0.0 };
    let drives = log_space(1e-9, 1e-2, 12);
    let tau = 100.0;
    let samples = drives
        .iter()
        .map(|&d| {
            let mu = m.predict(&p, d);
            Sample { drive: d, response: mu, sigma: (mu / tau).sqrt() }
        })
        .collect();
    let s = MeasurementSeries::new(samples, m.drive_unit, m.response_unit, m.meta).unwrap();
    let st = ModelStructure::default_for(Illumination::Coherent);
    let fit = fit_current_model(&[&s], &st, &FitOptions { residuals: Residuals::Linear, initial: None }).unwrap();
    let crb = fisher_crb(&st, &p, &m, &drives, tau).unwrap();
    for (k, name) in PARAM_NAMES.iter().enumerate().take(3) {
        let ratio = fit.sigmas[k] / crb.sigmas[k];
        assert!((ratio - 1.0).abs() < 1e-6, "{name}: {ratio}");
    }
}

#[test]
fn more_points_never_loosen_the_bound() {
    let path = OpticalPath::direct(1e-9).unwrap();
    let m = SeriesModel {
        drive_unit: DriveUnit::IncidentPower,
        response_unit: ResponseUnit::Current,
        meta: SeriesMeta::new(SpectralPoint::from_wavelength_nm(800.0).unwrap(), path, Illumination::Coherent),
    };
    let p = CurrentParams { i_d: 1e-18, r_f: 3e-10, l_c: 6e-16, r_e: 0.0 };
    let st = ModelStructure::default_for(Illumination::Coherent);
    let drives = log_space(1e-9, 1e-2, 16);
    let mut prev: Option<[f64; 4]> = None;
    for n in 3..=drives.len() {
        let b = fisher_crb(&st, &p, &m, &drives[..n], 10.0).unwrap().sigmas;
        if let Some(q) = prev {
            for k in 0..3 {
                assert!(b[k] <= q[k] * (1.0 + 1e-12), "n = {n}, {}", PARAM_NAMES[k]);
            }
        }
        prev = Some(b);
    }
}
