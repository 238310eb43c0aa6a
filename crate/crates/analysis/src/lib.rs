//! Measurement series, the mean-current model, CW-equivalent coefficient
//! extraction, scaling classification, and least-squares fitting.

pub mod classify;
pub mod error;
pub mod extract;
pub mod fit;
pub mod fixtures;
pub mod model;
pub mod segment;
pub mod series;

pub use classify::{classify_scaling, log_ratio_to_control, Classification, ScalingLabel, SegmentLabel, TransmittanceSweep};
pub use error::{AnalysisError, Result};
pub use extract::{aggregate, extract_eta_e, extract_lc, extract_rf, two_photon_responsivity, EtaEstimate, Estimate};
pub use fit::{EXACT_RESIDUAL, fisher_crb, fit_current_model, CramerRao, ExtractionResult, FitOptions, ModelStructure, Residuals};
pub use fixtures::SeriesPair;
pub use model::{crossover_intensity, predict_current, CrossoverIntensities, CurrentParams, SeriesModel, PARAM_NAMES};
pub use segment::{loglog_fit, segment_loglog, slope_class, PowerLawFit, Segment, Segmentation};
pub use series::{DriveUnit, Illumination, MeasurementSeries, ResponseUnit, Sample, SeriesMeta};
