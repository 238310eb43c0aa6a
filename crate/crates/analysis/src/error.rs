use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Source(#[from] subthresh_sources::SourceError),
    #[error("{what} out of range: {value} (expected {expected})")]
    OutOfRange {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("{regime} regime required: measured log–log slope {slope:.3}, expected {expected} ± {band}")]
    Regime {
        regime: &'static str,
        slope: f64,
        expected: f64,
        band: f64,
    },
    #[error("parameters do not match the illumination kind: {0}")]
    KindMismatch(String),
    #[error("insufficient drive overlap between series: {0}")]
    InsufficientOverlap(String),
    #[error("rank-deficient problem: {0}")]
    RankDeficient(String),
    #[error("singular Fisher information: {0}")]
    SingularFisher(String),
    #[error("{0}")]
    Missing(String),
}

pub type Result<T> = std::result::Result<T, AnalysisError>;

pub(crate) fn check(what: &'static str, value: f64, ok: bool, expected: &'static str) -> Result<f64> {
    if ok && !value.is_nan() {
        Ok(value)
    } else {
        Err(AnalysisError::OutOfRange { what, value, expected })
    }
}
