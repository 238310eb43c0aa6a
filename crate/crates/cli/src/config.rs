//! Run configuration: one TOML document with a section per command, plus
//! `--set key=value` overrides applied before deserialization.

use crate::error::{CliError, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use subthresh_absorption::Regime;
use subthresh_analysis::{CurrentParams, Illumination, Residuals, SeriesMeta};
use subthresh_core::{MaterialRegistry, SpectralPoint};
use subthresh_emission::EtppConfig;
use subthresh_mcsim::{Envelope, SimConfig};
use subthresh_sources::OpticalPath;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Extra `[material.*]` / `[absorber.*]` registry file overlaid on the
    /// built-ins; relative to the config file.
    pub materials: Option<PathBuf>,
    pub curves: CurvesConfig,
    pub fit: FitConfig,
    pub classify: ClassifyConfig,
    pub simulate: SimulateConfig,
    pub absorb: AbsorbConfig,
    pub tables: TablesConfig,
}

/// `μ_E(T_E)` sweep. Defaults are the 406 nm, φ = 5e23 m⁻²s⁻¹,
/// A = A_E = 1e-10 m² CsK₂Sb setup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CurvesConfig {
    pub material: String,
    pub pump_nm: f64,
    /// ω₁⁰/ω_p values, one curve each.
    pub nondegeneracy: Vec<f64>,
    /// Log-spaced T_E grid (s).
    pub t_e_min: f64,
    pub t_e_max: f64,
    pub t_e_points: usize,
    /// Entanglement area A_E (m²).
    pub a_e: f64,
    /// Illuminated area A (m²).
    pub area: f64,
    /// Source photon-flux density φ (photons/m²·s).
    pub flux_density: f64,
    /// Intrinsic transmittance 𝒯₀.
    pub transmittance: f64,
    pub etpp: EtppConfig,
}

impl Default for CurvesConfig {
    fn default() -> Self {
        Self {
            material: "CsK2Sb".into(),
            pump_nm: 406.0,
            nondegeneracy: vec![0.5, 1.0 / 3.0, 0.125],
            t_e_min: 10e-15,
            t_e_max: 10e-12,
            t_e_points: 13,
            a_e: 1e-10,
            area: 1e-10,
            flux_density: 5e23,
            transmittance: 1.0,
            etpp: EtppConfig::default(),
        }
    }
}

/// Conditions shared by a measurement series (the CSV sidecar).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetaConfig {
    pub wavelength_nm: f64,
    /// Sample temperature (K).
    pub temperature: f64,
    /// Total transmittance 𝒯 from source to sample.
    pub transmittance: f64,
    /// Intrinsic transmittance 𝒯₀.
    pub intrinsic_transmittance: f64,
    /// Illuminated area A (m²).
    pub area: f64,
    /// Lock-in fraction 𝓕.
    pub lockin_fraction: f64,
    /// Pulse factor Γ.
    pub pulse_factor: f64,
    pub g2: f64,
    pub illumination: Illumination,
}

impl Default for MetaConfig {
    fn default() -> Self {
        Self {
            wavelength_nm: 800.0,
            temperature: 300.0,
            transmittance: 1.0,
            intrinsic_transmittance: 1.0,
            area: 1e-8,
            lockin_fraction: 1.0,
            pulse_factor: 1.0,
            g2: 1.0,
            illumination: Illumination::Coherent,
        }
    }
}

impl MetaConfig {
    pub fn to_meta(&self, illumination: Illumination) -> Result<SeriesMeta> {
        let spectrum = SpectralPoint::from_wavelength_nm(self.wavelength_nm)?;
        let path = OpticalPath::new(
            self.transmittance,
            self.intrinsic_transmittance,
            self.area,
            self.lockin_fraction,
            self.pulse_factor,
        )?;
        let mut meta = SeriesMeta::new(spectrum, path, illumination);
        meta.temperature = self.temperature;
        meta.g2 = self.g2;
        Ok(meta)
    }
}

/// Known or fixed values of `i_D` (A), `R_F` (A/W), `𝓛_C` (A·m²/W²), `R_E` (A/W).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamsConfig {
    pub i_d: f64,
    pub r_f: f64,
    pub l_c: f64,
    pub r_e: f64,
}

impl From<ParamsConfig> for CurrentParams {
    fn from(p: ParamsConfig) -> Self {
        Self {
            i_d: p.i_d,
            r_f: p.r_f,
            l_c: p.l_c,
            r_e: p.r_e,
        }
    }
}

/// Which series of a bundled pair to fit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureSeries {
    Entangled,
    Coherent,
    /// Joint fit of both series with shared parameters.
    #[default]
    Both,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitConfig {
    /// Bundled pair name; replaces `data`/`control` and `meta`.
    pub fixture: Option<String>,
    pub series: FixtureSeries,
    /// Measurement CSV (`drive,drive_unit,response,response_unit,sigma`).
    pub data: Option<PathBuf>,
    /// Optional coherent-control CSV fitted jointly with `data`.
    pub control: Option<PathBuf>,
    pub meta: MetaConfig,
    /// Free parameters among `i_D, R_F, L_C, R_E`; defaults by illumination.
    pub free: Option<Vec<String>>,
    /// Values held by the non-free parameters.
    pub fixed: ParamsConfig,
    pub residuals: Residuals,
}

/// 𝒯-sweep sub-series for the tie-break.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub transmittance: Vec<f64>,
    pub response: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifyConfig {
    /// Bundled pair name; replaces `entangled`/`control` and `meta`.
    pub fixture: Option<String>,
    /// Entangled-light CSV.
    pub entangled: Option<PathBuf>,
    /// Coherent-control CSV.
    pub control: Option<PathBuf>,
    /// Shared metadata; `illumination` is ignored.
    pub meta: MetaConfig,
    pub sweep: Option<SweepConfig>,
    /// Known contributions subtracted by the closed-form extraction.
    pub knowns: ParamsConfig,
}

/// Pair-rate sweep for the Monte-Carlo crossover estimate.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSweepConfig {
    pub pair_rates: Vec<f64>,
    /// Pairs per point (duration adjusted per point); fixed duration if absent.
    pub pairs_per_point: Option<f64>,
}

/// Stream parameters; see [`SimConfig`] for units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    pub pair_rate: f64,
    pub duration: f64,
    pub transmittance: f64,
    pub area: f64,
    pub a_e: f64,
    pub sigma_1: f64,
    pub t_a: f64,
    pub t_e: f64,
    pub envelope: Option<Envelope>,
    pub seed: u64,
    pub trials: u32,
    pub sweep: Option<SimSweepConfig>,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        Self {
            pair_rate: 5e12,
            duration: 5e-8,
            transmittance: 1.0,
            area: 1e-10,
            a_e: 1e-11,
            sigma_1: 1e-12,
            t_a: 1e-13,
            t_e: 1e-12,
            envelope: None,
            seed: 1,
            trials: 4,
            sweep: None,
        }
    }
}

impl SimulateConfig {
    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            pair_rate: self.pair_rate,
            duration: self.duration,
            transmittance: self.transmittance,
            area: self.area,
            a_e: self.a_e,
            sigma_1: self.sigma_1,
            t_a: self.t_a,
            t_e: self.t_e,
            envelope: self.envelope,
            seed: self.seed,
            trials: self.trials,
        }
    }
}

/// Absorber cross sections and rates. Defaults reproduce the rhodamine 6G
/// estimate at A_E·T_E = 3.4e-24 m²·s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AbsorbConfig {
    pub absorber: String,
    /// Entanglement area (m²) and time (s).
    pub a_e: f64,
    pub t_e: f64,
    pub regime: Regime,
    /// Intrinsic transmittance 𝒯₀.
    pub transmittance: f64,
    /// Pulse factor Γ.
    pub gamma: f64,
    /// Constant dark rate (1/s).
    pub dark_rate: f64,
    /// Source photon-flux densities (photons/m²·s) at which to tabulate rates.
    pub flux_densities: Vec<f64>,
}

impl Default for AbsorbConfig {
    fn default() -> Self {
        Self {
            absorber: "R6G".into(),
            a_e: 1.7e-11,
            t_e: 200e-15,
            regime: Regime::Auto,
            transmittance: 1.0,
            gamma: 1.0,
            dark_rate: 0.0,
            flux_densities: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TablesConfig {
    /// Table identifiers to render; all when empty.
    pub only: Vec<String>,
}

/// A parsed configuration with the effective document it came from.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: RunConfig,
    /// Effective TOML after overrides (hashed into the provenance).
    pub document: toml::Table,
    /// Directory that relative paths are resolved against.
    pub base_dir: PathBuf,
}

impl LoadedConfig {
    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    /// Built-in materials, overlaid with the configured registry file.
    pub fn materials(&self) -> Result<MaterialRegistry> {
        match &self.config.materials {
            None => Ok(MaterialRegistry::builtin()),
            Some(p) => Ok(MaterialRegistry::load(&read(&self.resolve(p))?)?),
        }
    }

    pub fn absorbers(&self) -> Result<subthresh_absorption::AbsorberRegistry> {
        match &self.config.materials {
            None => Ok(subthresh_absorption::AbsorberRegistry::builtin()),
            Some(p) => Ok(subthresh_absorption::AbsorberRegistry::load(&read(&self.resolve(p))?)?),
        }
    }
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(format!("cannot read {}", path.display()), e))
}

/// Reads `path` (or starts from an empty document), applies the overrides
/// in order, and deserializes.
pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<LoadedConfig> {
    let (mut document, base_dir) = match path {
        Some(p) => {
            let text = read(p)?;
            let doc: toml::Table = text
                .parse()
                .map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))?;
            (doc, p.parent().map(Path::to_path_buf).unwrap_or_default())
        }
        None => (toml::Table::new(), PathBuf::new()),
    };
    for o in overrides {
        apply_override(&mut document, o)?;
    }
    let config: RunConfig = toml::Value::Table(document.clone())
        .try_into()
        .map_err(|e: toml::de::Error| CliError::Validation(format!("invalid configuration: {e}")))?;
    Ok(LoadedConfig {
        config,
        document,
        base_dir,
    })
}

/// Applies `a.b.c=value`. The value is parsed as a TOML value and falls
/// back to a plain string.
pub fn apply_override(doc: &mut toml::Table, spec: &str) -> Result<()> {
    let (key, raw) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Validation(format!("override `{spec}` is not of the form key=value")))?;
    let key = key.trim();
    let parts: Vec<&str> = key.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(CliError::Validation(format!("override key `{key}` is malformed")));
    }
    let value = parse_value(raw.trim());
    let (last, parents) = parts.split_last().expect("nonempty");
    let mut table = doc;
    for p in parents {
        let entry = table
            .entry(p.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        table = entry
            .as_table_mut()
            .ok_or_else(|| CliError::Validation(format!("override `{key}`: `{p}` is not a table")))?;
    }
    table.insert(last.to_string(), value);
    Ok(())
}

fn parse_value(raw: &str) -> toml::Value {
    format!("v = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()))
}
