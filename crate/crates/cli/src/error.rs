//! Error type with the stable exit-code contract.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: config, overrides, data files, or parameter ranges.
    #[error("{0}")]
    Validation(String),
    /// Inputs were acceptable but the computation failed.
    #[error("{0}")]
    Numerical(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    /// 2 for validation failures (including I/O), 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) | Self::Io { .. } => 2,
            Self::Numerical(_) => 3,
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io {
            context: context.into(),
            source,
        }
    }
}

impl From<subthresh_core::CoreError> for CliError {
    fn from(e: subthresh_core::CoreError) -> Self {
        Self::Validation(e.to_string())
    }
}

impl From<subthresh_sources::SourceError> for CliError {
    fn from(e: subthresh_sources::SourceError) -> Self {
        Self::Validation(e.to_string())
    }
}

impl From<subthresh_emission::EmissionError> for CliError {
    fn from(e: subthresh_emission::EmissionError) -> Self {
        use subthresh_emission::EmissionError as E;
        match e {
            E::EmptyWeight { .. } | E::EmptyWindow { .. } | E::Domain(_) => Self::Numerical(e.to_string()),
            _ => Self::Validation(e.to_string()),
        }
    }
}

impl From<subthresh_absorption::AbsorptionError> for CliError {
    fn from(e: subthresh_absorption::AbsorptionError) -> Self {
        Self::Validation(e.to_string())
    }
}

impl From<subthresh_analysis::AnalysisError> for CliError {
    fn from(e: subthresh_analysis::AnalysisError) -> Self {
        use subthresh_analysis::AnalysisError as E;
        match e {
            E::RankDeficient(_) | E::SingularFisher(_) => Self::Numerical(e.to_string()),
            _ => Self::Validation(e.to_string()),
        }
    }
}

impl From<subthresh_mcsim::SimError> for CliError {
    fn from(e: subthresh_mcsim::SimError) -> Self {
        Self::Validation(e.to_string())
    }
}
