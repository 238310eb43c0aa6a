//! Optical source descriptions and the statistics that enter the measured
//! photocurrent: duty cycle Δ, pulse factor Γ, first-harmonic lock-in
//! fraction 𝓕₁, multimode g₂, SPDC pair flux, and Bernoulli loss.

pub mod entangled;
pub mod error;
pub mod flux;
pub mod path;
pub mod waveform;

pub use entangled::{spdc_output, EntangledSource, SpdcOutput};
pub use error::SourceError;
pub use flux::{apply_loss, FluxBreakdown};
pub use path::OpticalPath;
pub use waveform::{g2_modes, CoherentSource, ModeSpec, PowerLevel, Shape, Waveform, WaveformStats};
