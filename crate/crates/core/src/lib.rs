//! Shared foundations for subthreshold photoemission and absorption modeling.
//!
//! Everything inside the toolkit is SI. Electron-volts and nanometres appear
//! only at boundaries (registry files, CLI, table output) and are converted
//! exactly once via [`units`].

pub mod constants;
pub mod error;
pub mod material;
pub mod units;

pub use constants::PhysicalConstants;
pub use error::CoreError;
pub use material::{max_kinetic_energy, Material, MaterialKind, MaterialRecord, MaterialRegistry};
pub use units::{responsivity_to_qe, qe_to_responsivity, SpectralPoint};
