use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmissionError {
    #[error(transparent)]
    Core(#[from] subthresh_core::CoreError),
    #[error(transparent)]
    Source(#[from] subthresh_sources::SourceError),
    #[error("{what} out of range: {value} (expected {expected})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("reference edge E_c = {e_c_ev} eV lies at or above the intermediate band top {e_j_max_ev} eV")]
    EmptyWeight { e_c_ev: f64, e_j_max_ev: f64 },
    #[error("wavenumber window empty: k_min = {k_min:e} ≥ k_max = {k_max:e} 1/m")]
    EmptyWindow { k_min: f64, k_max: f64 },
    #[error("closed form invalid: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, EmissionError>;

pub(crate) fn check(what: &'static str, value: f64, ok: bool, expected: &'static str) -> Result<f64> {
    if ok && value.is_finite() {
        Ok(value)
    } else {
        Err(EmissionError::OutOfRange { what, value, expected })
    }
}
