//! Forward models for Fermi-tail, two-photon, and entangled-two-photon
//! photoemission, cross-section conversions, and renormalization.

pub mod cross;
pub mod curves;
pub mod error;
pub mod etpp;
pub mod fermi;
pub mod quad;
pub mod rates;
pub mod tpp;

pub use cross::{eta_to_sigma_e, renormalize_eta, SigmaE};
pub use curves::{etpp_curve, log_space, self_crossing_flux, CurvePoint};
pub use error::{EmissionError, Result};
pub use etpp::{etpp_constant, etpp_overlap, etpp_rate, EtppConfig, EtppResult, Overlap};
pub use fermi::{fowler_responsivity, fowler_work_function, ftp_current};
pub use rates::EmissionRates;
pub use tpp::{tpp_coefficient, tpp_current, tpp_rates, NA_SURFACE_THEORY_LC};
