use thiserror::Error;

/// Errors raised by constant, unit, and material handling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("{what} out of range: {value} (expected {expected})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("material `{material}`: missing parameter `{field}`")]
    MissingParameter {
        material: String,
        field: &'static str,
    },
    #[error("material `{material}`: invalid `{field}`: {reason}")]
    InvalidField {
        material: String,
        field: String,
        reason: String,
    },
    #[error("unknown material `{0}`")]
    NotFound(String),
    #[error("registry parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;

/// Fails with [`CoreError::NonPositive`] unless `value > 0` and finite.
pub fn ensure_positive(what: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(CoreError::NonPositive { what, value })
    }
}
