//! Brute-force particle simulation of a photon-pair stream: Poisson pair
//! arrivals, independent photon loss, twin jitter and transverse spread, and
//! two-photon events from space–time coincidences tagged by parentage.

pub mod crossover;
pub mod error;
pub mod g2;
pub mod stream;

pub use crossover::{estimate_crossover_mc, CrossoverMc, SweepPoint};
pub use error::{Result, SimError};
pub use g2::{sample_g2, FieldModel, G2Estimate, MIN_G2_SAMPLES};
pub use stream::{count_events, simulate_stream, Envelope, EventCounts, Photon, Rate, SimConfig, SimOutcome, MAX_PHOTONS_PER_TRIAL};
