//! Measurement series: drive/response samples with their metadata.

use crate::error::{AnalysisError, Result};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use subthresh_core::constants::E_CHARGE;
use subthresh_core::SpectralPoint;
use subthresh_sources::OpticalPath;

/// What the drive column measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DriveUnit {
    /// Source power P₀ before the optical path (W), tagged `W_source`.
    #[serde(rename = "W_source")]
    SourcePower,
    /// Power incident on the sample, P = 𝒯P₀ (W), tagged `W`.
    #[serde(rename = "W")]
    IncidentPower,
    /// Incident intensity I = P/A (W/m²), tagged `W/m^2`.
    #[serde(rename = "W/m^2")]
    Intensity,
}

impl DriveUnit {
    pub fn tag(self) -> &'static str {
        match self {
            Self::SourcePower => "W_source",
            Self::IncidentPower => "W",
            Self::Intensity => "W/m^2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "W_source" => Some(Self::SourcePower),
            "W" => Some(Self::IncidentPower),
            "W/m^2" | "W/m2" => Some(Self::Intensity),
            _ => None,
        }
    }
}

/// What the response column measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResponseUnit {
    /// Photocurrent (A), tagged `A`.
    #[serde(rename = "A")]
    Current,
    /// Photoelectron count rate (1/s), tagged `1/s`.
    #[serde(rename = "1/s")]
    CountRate,
}

impl ResponseUnit {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Current => "A",
            Self::CountRate => "1/s",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "A" => Some(Self::Current),
            "1/s" | "s^-1" | "cps" => Some(Self::CountRate),
            _ => None,
        }
    }
}

/// Statistical character of the illumination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Illumination {
    Coherent,
    Classical,
    Entangled,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub drive: f64,
    pub response: f64,
    pub sigma: f64,
}

/// Conditions shared by every sample of a series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesMeta {
    pub spectrum: SpectralPoint,
    /// Sample temperature (K).
    pub temperature: f64,
    /// 𝒯, A, 𝓕, and Γ.
    pub path: OpticalPath,
    pub illumination: Illumination,
    /// g₂ of classical light, or of the marginal beams for entangled light.
    pub g2: f64,
}

impl SeriesMeta {
    pub fn new(spectrum: SpectralPoint, path: OpticalPath, illumination: Illumination) -> Self {
        Self {
            spectrum,
            temperature: 300.0,
            path,
            illumination,
            g2: 1.0,
        }
    }

    /// g₂ entering the quadratic term (1 for coherent light).
    pub fn effective_g2(&self) -> f64 {
        match self.illumination {
            Illumination::Coherent => 1.0,
            _ => self.g2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSeries {
    pub samples: Vec<Sample>,
    pub drive_unit: DriveUnit,
    pub response_unit: ResponseUnit,
    pub meta: SeriesMeta,
}

#[derive(Debug, Deserialize, Serialize)]
struct Row {
    drive: f64,
    drive_unit: String,
    response: f64,
    response_unit: String,
    sigma: f64,
}

impl MeasurementSeries {
    pub fn new(samples: Vec<Sample>, drive_unit: DriveUnit, response_unit: ResponseUnit, meta: SeriesMeta) -> Result<Self> {
        let s = Self {
            samples,
            drive_unit,
            response_unit,
            meta,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        self.meta.path.validate()?;
        if self.samples.is_empty() {
            return Err(AnalysisError::InvalidSeries("no samples".into()));
        }
        if !(self.meta.g2 >= 1.0 && self.meta.g2.is_finite()) {
            return Err(AnalysisError::InvalidSeries(format!("g2 = {} must be >= 1", self.meta.g2)));
        }
        for (i, s) in self.samples.iter().enumerate() {
            if !(s.drive >= 0.0 && s.drive.is_finite()) || !s.response.is_finite() {
                return Err(AnalysisError::InvalidSeries(format!("sample {i}: non-finite or negative drive")));
            }
            if !(s.sigma > 0.0 && s.sigma.is_finite()) {
                return Err(AnalysisError::InvalidSeries(format!("sample {i}: sigma must be > 0")));
            }
        }
        for (i, w) in self.samples.windows(2).enumerate() {
            if w[1].drive <= w[0].drive {
                return Err(AnalysisError::InvalidSeries(format!(
                    "drives must be strictly increasing (sample {})",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Reads `drive,drive_unit,response,response_unit,sigma` rows; units
    /// must be the same on every row. Errors carry the file line number.
    pub fn from_csv<R: Read>(reader: R, meta: SeriesMeta) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| AnalysisError::Csv { line: 1, message: e.to_string() })?
            .clone();
        let expected = ["drive", "drive_unit", "response", "response_unit", "sigma"];
        if headers.iter().collect::<Vec<_>>() != expected {
            return Err(AnalysisError::Csv {
                line: 1,
                message: format!("header must be `{}`", expected.join(",")),
            });
        }
        let mut samples = Vec::new();
        let mut units: Option<(DriveUnit, ResponseUnit)> = None;
        for rec in rdr.records() {
            let rec = rec.map_err(|e| AnalysisError::Csv {
                line: e.position().map_or(0, |p| p.line()),
                message: e.to_string(),
            })?;
            let line = rec.position().map_or(0, |p| p.line());
            let row: Row = rec
                .deserialize(Some(&headers))
                .map_err(|e| AnalysisError::Csv { line, message: e.to_string() })?;
            let du = DriveUnit::parse(&row.drive_unit).ok_or_else(|| AnalysisError::Csv {
                line,
                message: format!("unknown drive unit `{}` (W_source, W, W/m^2)", row.drive_unit),
            })?;
            let ru = ResponseUnit::parse(&row.response_unit).ok_or_else(|| AnalysisError::Csv {
                line,
                message: format!("unknown response unit `{}` (A, 1/s)", row.response_unit),
            })?;
            match units {
                None => units = Some((du, ru)),
                Some(u) if u != (du, ru) => {
                    return Err(AnalysisError::Csv {
                        line,
                        message: "units differ from the first row".into(),
                    })
                }
                _ => {}
            }
            if row.sigma.is_nan() || row.sigma <= 0.0 {
                return Err(AnalysisError::Csv {
                    line,
                    message: format!("sigma must be > 0, got {}", row.sigma),
                });
            }
            if let Some(prev) = samples.last().map(|s: &Sample| s.drive) {
                if row.drive <= prev {
                    return Err(AnalysisError::Csv {
                        line,
                        message: "drives must be strictly increasing".into(),
                    });
                }
            }
            samples.push(Sample {
                drive: row.drive,
                response: row.response,
                sigma: row.sigma,
            });
        }
        let (du, ru) = units.ok_or_else(|| AnalysisError::Csv {
            line: 1,
            message: "no data rows".into(),
        })?;
        Self::new(samples, du, ru, meta)
    }

    pub fn to_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let io = |e: csv::Error| AnalysisError::Csv { line: 0, message: e.to_string() };
        for s in &self.samples {
            w.serialize(Row {
                drive: s.drive,
                drive_unit: self.drive_unit.tag().into(),
                response: s.response,
                response_unit: self.response_unit.tag().into(),
                sigma: s.sigma,
            })
            .map_err(io)?;
        }
        w.flush().map_err(|e| AnalysisError::Csv { line: 0, message: e.to_string() })
    }

    /// Power incident on the sample (W) for a drive value.
    pub fn incident_power(&self, drive: f64) -> f64 {
        let p = &self.meta.path;
        match self.drive_unit {
            DriveUnit::SourcePower => p.transmittance * drive,
            DriveUnit::IncidentPower => drive,
            DriveUnit::Intensity => drive * p.area,
        }
    }

    /// Drive value for an incident power (W).
    pub fn drive_of_power(&self, power: f64) -> f64 {
        let p = &self.meta.path;
        match self.drive_unit {
            DriveUnit::SourcePower => power / p.transmittance,
            DriveUnit::IncidentPower => power,
            DriveUnit::Intensity => power / p.area,
        }
    }

    /// Response expressed as current (A).
    pub fn to_current(&self, response: f64) -> f64 {
        match self.response_unit {
            ResponseUnit::Current => response,
            ResponseUnit::CountRate => response * E_CHARGE,
        }
    }

    /// Current (A) expressed in this series' response unit.
    pub fn from_current(&self, current: f64) -> f64 {
        match self.response_unit {
            ResponseUnit::Current => current,
            ResponseUnit::CountRate => current / E_CHARGE,
        }
    }

    /// Lock-in fraction in effect: counting measurements recover everything.
    pub fn lockin_fraction(&self) -> f64 {
        match self.response_unit {
            ResponseUnit::Current => self.meta.path.lockin_fraction,
            ResponseUnit::CountRate => 1.0,
        }
    }

    pub fn drives(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.drive).collect()
    }

    pub fn responses(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.response).collect()
    }

    /// Copy with every response and sigma multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut s = self.clone();
        for x in &mut s.samples {
            x.response *= c;
            x.sigma *= c;
        }
        s
    }
}
