use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("{what} out of range: {value} (expected {expected})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("simulation too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, SimError>;

pub(crate) fn check(what: &'static str, value: f64, ok: bool, expected: &'static str) -> Result<f64> {
    if ok && !value.is_nan() {
        Ok(value)
    } else {
        Err(SimError::OutOfRange { what, value, expected })
    }
}
