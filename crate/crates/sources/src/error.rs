use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SourceError {
    #[error("{what} out of range: {value} (expected {expected})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("waveform carries zero power")]
    ZeroPower,
    #[error("inconsistent source: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Core(#[from] subthresh_core::CoreError),
}

pub type Result<T> = std::result::Result<T, SourceError>;

pub(crate) fn check(what: &'static str, value: f64, ok: bool, expected: &'static str) -> Result<f64> {
    if ok && value.is_finite() {
        Ok(value)
    } else {
        Err(SourceError::OutOfRange { what, value, expected })
    }
}
