//! Second-order intensity correlation of synthesized field samples.

use crate::error::{check, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const MIN_G2_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldModel {
    /// Constant-amplitude field.
    Coherent,
    /// Equal-amplitude sum of `modes` fields with independent uniform phases.
    RandomPhase { modes: u32 },
    /// Circular complex Gaussian field.
    Thermal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct G2Estimate {
    pub g2: f64,
    /// Delta-method standard error.
    pub error: f64,
    pub samples: usize,
}

/// (⟨P⟩, ⟨P²⟩, Var P, Var P², Cov(P, P²)).
fn moments(p: &[f64]) -> (f64, f64, f64, f64, f64) {
    let n = p.len() as f64;
    let m1 = p.iter().sum::<f64>() / n;
    let m2 = p.iter().map(|x| x * x).sum::<f64>() / n;
    let (mut v1, mut v2, mut c) = (0.0, 0.0, 0.0);
    for &x in p {
        let (a, b) = (x - m1, x * x - m2);
        v1 += a * a;
        v2 += b * b;
        c += a * b;
    }
    let d = n - 1.0;
    (m1, m2, v1 / d, v2 / d, c / d)
}

/// `ĝ₂ = ⟨P²⟩/⟨P⟩²` over `samples` synthesized intensities.
pub fn sample_g2(model: FieldModel, samples: usize, seed: u64) -> Result<G2Estimate> {
    check("samples", samples as f64, samples >= MIN_G2_SAMPLES, ">= 10000")?;
    if let FieldModel::RandomPhase { modes } = model {
        check("modes", modes as f64, modes >= 1, ">= 1")?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p: Vec<f64> = (0..samples)
        .map(|_| match model {
            FieldModel::Coherent => 1.0,
            FieldModel::RandomPhase { modes } => {
                let (mut re, mut im) = (0.0, 0.0);
                for _ in 0..modes {
                    let phi = 2.0 * PI * rng.random::<f64>();
                    re += phi.cos();
                    im += phi.sin();
                }
                (re * re + im * im) / modes as f64
            }
            FieldModel::Thermal => {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                0.5 * (re * re + im * im)
            }
        })
        .collect();
    let (m1, m2, v1, v2, c) = moments(&p);
    let g2 = m2 / (m1 * m1);
    // g = m2/m1²: ∂g/∂m2 = 1/m1², ∂g/∂m1 = −2m2/m1³.
    let (d2, d1) = (1.0 / (m1 * m1), -2.0 * m2 / (m1 * m1 * m1));
    let var = (d2 * d2 * v2 + d1 * d1 * v1 + 2.0 * d1 * d2 * c) / samples as f64;
    Ok(G2Estimate {
        g2,
        error: var.max(0.0).sqrt(),
        samples,
    })
}
