//! `classify`: scaling-regime label of an entangled series against its
//! coherent control, followed by the closed-form coefficient the label
//! calls for.

use super::{fixture, read_series};
use crate::error::{CliError, Result};
use crate::{to_json, Artifact, Context};
use serde::Serialize;
use subthresh_analysis::{
    classify_scaling, extract_eta_e, extract_lc, extract_rf, Classification, CurrentParams, Estimate, EtaEstimate,
    Illumination, MeasurementSeries, ScalingLabel, TransmittanceSweep,
};

#[derive(Debug, Serialize)]
#[serde(tag = "quantity")]
enum Extraction {
    /// Fermi-tail responsivity from the entangled series (A/W).
    #[serde(rename = "R_F")]
    Rf(Estimate),
    /// Two-photon coefficient from the coherent control (A·m²/W²).
    #[serde(rename = "L_C")]
    Lc(Estimate),
    /// Entangled-two-photon efficiency and responsivity.
    #[serde(rename = "eta_E")]
    Eta(EtaEstimate),
}

#[derive(Debug, Serialize)]
struct ClassifyReport {
    provenance: crate::Provenance,
    source: String,
    classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    extraction: Option<Extraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extraction_error: Option<String>,
}

fn extract(label: ScalingLabel, e: &MeasurementSeries, c: &MeasurementSeries, knowns: &CurrentParams) -> Option<subthresh_analysis::Result<Extraction>> {
    match label {
        ScalingLabel::Ftp => Some(extract_rf(e, knowns).map(Extraction::Rf)),
        ScalingLabel::Etpp => Some(extract_eta_e(e, Some(c), knowns).map(Extraction::Eta)),
        ScalingLabel::Tpp => Some(extract_lc(c, knowns).map(Extraction::Lc)),
        ScalingLabel::FtpEtpp | ScalingLabel::Dark => None,
    }
}

pub fn run(ctx: &Context) -> Result<Vec<Artifact>> {
    let c = &ctx.config().classify;
    let (source, entangled, control) = match (&c.fixture, &c.entangled, &c.control) {
        (Some(name), None, None) => {
            let p = fixture(name)?;
            (format!("fixture:{name}"), p.entangled, p.coherent)
        }
        (None, Some(e), Some(k)) => (
            e.display().to_string(),
            read_series(&ctx.loaded, e, &c.meta, Illumination::Entangled)?,
            read_series(&ctx.loaded, k, &c.meta, Illumination::Coherent)?,
        ),
        _ => {
            return Err(CliError::Validation(
                "classify: set either `classify.fixture`, or both `classify.entangled` and `classify.control`".into(),
            ))
        }
    };
    let sweep = c.sweep.as_ref().map(|s| TransmittanceSweep {
        transmittance: s.transmittance.clone(),
        response: s.response.clone(),
    });
    let classification = classify_scaling(&entangled, &control, sweep.as_ref())?;
    let knowns: CurrentParams = c.knowns.into();
    let (extraction, extraction_error) = match classification.label.and_then(|l| extract(l, &entangled, &control, &knowns)) {
        Some(Ok(x)) => (Some(x), None),
        Some(Err(e)) => (None, Some(e.to_string())),
        None => (None, None),
    };
    let report = ClassifyReport {
        provenance: ctx.provenance("classify"),
        source,
        classification,
        extraction,
        extraction_error,
    };
    Ok(vec![Artifact {
        name: "classify.json".into(),
        contents: to_json(&report)?,
    }])
}
