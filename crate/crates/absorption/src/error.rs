use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AbsorptionError {
    #[error("{what} out of range: {value} (expected {expected})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("absorber `{absorber}` lacks `{field}`")]
    MissingParameter { absorber: String, field: &'static str },
    #[error("absorber `{0}`: {1}")]
    Inconsistent(String, String),
    #[error("absorber not found: {0}")]
    NotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, AbsorptionError>;

pub(crate) fn check(what: &'static str, value: f64, ok: bool, expected: &'static str) -> Result<f64> {
    if ok && !value.is_nan() {
        Ok(value)
    } else {
        Err(AbsorptionError::OutOfRange { what, value, expected })
    }
}
