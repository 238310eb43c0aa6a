//! Pair-stream generation and coincidence counting.

use crate::error::{check, Result, SimError};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Refuse trials expected to hold more surviving photons than this.
pub const MAX_PHOTONS_PER_TRIAL: f64 = 5e7;

/// Rectangular on/off pulse train; Γ = 1/duty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    /// Repetition period (s).
    pub period: f64,
    /// On fraction Δ ∈ (0, 1].
    pub duty: f64,
}

impl Envelope {
    pub fn gamma(&self) -> f64 {
        1.0 / self.duty
    }

    /// Maps time measured along the concatenated on-windows to wall time.
    fn wall_time(&self, s: f64) -> f64 {
        let on = self.duty * self.period;
        (s / on).floor() * self.period + s.rem_euclid(on)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    /// Mean pair rate at the source (pairs/s).
    pub pair_rate: f64,
    /// Duration of one trial (s).
    pub duration: f64,
    /// Per-photon survival probability 𝒯.
    pub transmittance: f64,
    /// Beam area A (m²); the transverse plane is a periodic square of this area.
    pub area: f64,
    /// Pairing area A_E (m²): twins land uniformly within a disc of this area.
    pub a_e: f64,
    /// Interaction area σ₁ (m²): photons interact within a disc of this area.
    pub sigma_1: f64,
    /// Intermediate-state lifetime T_A (s): photons interact when closer in time.
    pub t_a: f64,
    /// Twin time offsets are uniform on [−T_E/2, T_E/2] (s).
    pub t_e: f64,
    #[serde(default)]
    pub envelope: Option<Envelope>,
    pub seed: u64,
    pub trials: u32,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        let c = self;
        check("pair rate", c.pair_rate, c.pair_rate >= 0.0 && c.pair_rate.is_finite(), ">= 0")?;
        check("duration", c.duration, c.duration > 0.0 && c.duration.is_finite(), "> 0")?;
        check("transmittance", c.transmittance, (0.0..=1.0).contains(&c.transmittance), "[0, 1]")?;
        check("area", c.area, c.area > 0.0 && c.area.is_finite(), "> 0")?;
        check("A_E", c.a_e, c.a_e > 0.0 && c.a_e.is_finite(), "> 0")?;
        // The interaction disc must fit the periodic cell for σ₁/A to be exact.
        check("sigma_1", c.sigma_1, c.sigma_1 >= 0.0 && c.sigma_1 <= c.area * PI / 4.0, "[0, πA/4]")?;
        check("T_A", c.t_a, c.t_a >= 0.0 && c.t_a.is_finite(), ">= 0")?;
        check("T_E", c.t_e, c.t_e >= 0.0 && c.t_e.is_finite(), ">= 0")?;
        check("trials", c.trials as f64, c.trials >= 1, ">= 1")?;
        if let Some(e) = c.envelope {
            check("envelope period", e.period, e.period > 0.0 && e.period.is_finite(), "> 0")?;
            check("envelope duty", e.duty, e.duty > 0.0 && e.duty <= 1.0, "(0, 1]")?;
        }
        let photons = 2.0 * c.transmittance * c.pair_rate * c.duration;
        if photons > MAX_PHOTONS_PER_TRIAL {
            return Err(SimError::TooLarge(format!(
                "{photons:.3e} expected photons per trial (limit {MAX_PHOTONS_PER_TRIAL:e}); raise `trials` and shorten `duration`"
            )));
        }
        Ok(())
    }

    /// Γ of the envelope (1 for a steady stream).
    pub fn gamma(&self) -> f64 {
        self.envelope.map_or(1.0, |e| e.gamma())
    }

    /// Mean photon-flux density at the sample, 2𝒯·rate/A (m⁻²s⁻¹).
    pub fn flux_density(&self) -> f64 {
        2.0 * self.transmittance * self.pair_rate / self.area
    }

    /// Expected twin-event rate: rate·𝒯²·P(|Δt| < T_A)·P(|Δr| < r₁).
    pub fn expected_twin_rate(&self) -> f64 {
        let time = if self.t_e > 0.0 { (2.0 * self.t_a / self.t_e).min(1.0) } else if self.t_a > 0.0 { 1.0 } else { 0.0 };
        let space = (self.sigma_1 / self.a_e).min(1.0);
        self.pair_rate * self.transmittance.powi(2) * time * space
    }

    /// Expected accidental rate for photons uncorrelated in space and time,
    /// `Γ·F²·T_A·σ₁/A` with F the surviving photon rate.
    pub fn expected_accidental_rate(&self) -> f64 {
        let f = 2.0 * self.transmittance * self.pair_rate;
        self.gamma() * f * f * self.t_a * self.sigma_1 / self.area
    }
}

/// A photon that reached the sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Photon {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    /// Index of the parent pair within its trial.
    pub parent: u32,
    /// 0 or 1: which member of the pair.
    pub slot: u8,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EventCounts {
    pub twin: u64,
    pub accidental: u64,
    pub photons: u64,
}

/// Counts two-photon coincidences (|Δt| < T_A, periodic transverse distance
/// below the σ₁ disc radius) among `photons` on a square cell of side
/// `side`. Photons are first put in canonical (t, parent, slot) order, so
/// the result does not depend on the input order.
pub fn count_events(photons: &mut [Photon], t_a: f64, sigma_1: f64, side: f64) -> EventCounts {
    photons.sort_by(|a, b| a.t.total_cmp(&b.t).then(a.parent.cmp(&b.parent)).then(a.slot.cmp(&b.slot)));
    let r2 = sigma_1 / PI;
    let wrap = |d: f64| {
        let d = d.abs() % side;
        d.min(side - d)
    };
    let mut c = EventCounts {
        photons: photons.len() as u64,
        ..Default::default()
    };
    for (i, p) in photons.iter().enumerate() {
        for q in &photons[i + 1..] {
            if q.t - p.t >= t_a {
                break;
            }
            let (dx, dy) = (wrap(q.x - p.x), wrap(q.y - p.y));
            if dx * dx + dy * dy < r2 {
                if q.parent == p.parent {
                    c.twin += 1;
                } else {
                    c.accidental += 1;
                }
            }
        }
    }
    c
}

fn run_trial(cfg: &SimConfig, seed: u64) -> EventCounts {
    if cfg.pair_rate == 0.0 {
        return EventCounts::default();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = cfg.area.sqrt();
    let r_e = (cfg.a_e / PI).sqrt();
    let duty = cfg.envelope.map_or(1.0, |e| e.duty);
    let on_time = cfg.duration * duty;
    let gap = Exp::new(cfg.pair_rate / duty).expect("positive rate");
    let mut photons = Vec::with_capacity((2.2 * cfg.transmittance * cfg.pair_rate * cfg.duration) as usize + 16);
    let mut s = 0.0;
    let mut parent = 0u32;
    loop {
        s += gap.sample(&mut rng);
        if s >= on_time {
            break;
        }
        let t = cfg.envelope.map_or(s, |e| e.wall_time(s));
        // Draw every variate regardless of survival so the stream of random
        // numbers per pair is fixed.
        let keep = [rng.random::<f64>() < cfg.transmittance, rng.random::<f64>() < cfg.transmittance];
        let dt = (rng.random::<f64>() - 0.5) * cfg.t_e;
        let (x, y) = (rng.random::<f64>() * side, rng.random::<f64>() * side);
        let rho = r_e * rng.random::<f64>().sqrt();
        let phi = 2.0 * PI * rng.random::<f64>();
        let twin = ((x + rho * phi.cos()).rem_euclid(side), (y + rho * phi.sin()).rem_euclid(side));
        if keep[0] {
            photons.push(Photon { t, x, y, parent, slot: 0 });
        }
        if keep[1] {
            photons.push(Photon {
                t: t + dt,
                x: twin.0,
                y: twin.1,
                parent,
                slot: 1,
            });
        }
        parent = parent.wrapping_add(1);
    }
    count_events(&mut photons, cfg.t_a, cfg.sigma_1, side)
}

/// Rate with its Poisson standard error √count/exposure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rate {
    pub value: f64,
    pub error: f64,
}

impl Rate {
    fn of(count: u64, exposure: f64) -> Self {
        Self {
            value: count as f64 / exposure,
            error: (count as f64).sqrt() / exposure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimOutcome {
    pub seed: u64,
    pub trial_seeds: Vec<u64>,
    /// Per-trial tallies, in trial order.
    pub per_trial: Vec<EventCounts>,
    pub twin_events: u64,
    pub accidental_events: u64,
    /// Photons delivered to the sample (each a one-photon absorption
    /// opportunity).
    pub single_absorptions: u64,
    /// Total simulated time (s).
    pub exposure: f64,
    pub twin_rate: Rate,
    pub accidental_rate: Rate,
    pub single_rate: Rate,
    /// Mean photon-flux density at the sample (m⁻²s⁻¹).
    pub flux_density: f64,
}

/// Per-trial seeds drawn from the master seed.
pub fn trial_seeds(seed: u64, trials: u32) -> Vec<u64> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| master.next_u64()).collect()
}

/// Simulates `cfg.trials` independent trials in parallel; the outcome is a
/// pure function of `cfg` (bitwise, for any thread count).
pub fn simulate_stream(cfg: &SimConfig) -> Result<SimOutcome> {
    cfg.validate()?;
    let seeds = trial_seeds(cfg.seed, cfg.trials);
    let per_trial: Vec<EventCounts> = seeds.par_iter().map(|&s| run_trial(cfg, s)).collect();
    let sum = |f: fn(&EventCounts) -> u64| per_trial.iter().map(f).sum::<u64>();
    let (twin, acc, photons) = (sum(|c| c.twin), sum(|c| c.accidental), sum(|c| c.photons));
    let exposure = cfg.duration * cfg.trials as f64;
    Ok(SimOutcome {
        seed: cfg.seed,
        trial_seeds: seeds,
        per_trial,
        twin_events: twin,
        accidental_events: acc,
        single_absorptions: photons,
        exposure,
        twin_rate: Rate::of(twin, exposure),
        accidental_rate: Rate::of(acc, exposure),
        single_rate: Rate::of(photons, exposure),
        flux_density: cfg.flux_density(),
    })
}
