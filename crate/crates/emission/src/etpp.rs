//! Entangled-two-photon photoemission: overlap function and photocurrent.

use crate::error::{check, EmissionError, Result};
use crate::quad::{integrate, simpson, QuadConfig};
use crate::rates::EmissionRates;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use subthresh_core::constants::{C_LIGHT, HBAR, M_ELECTRON, R0_CLASSICAL};
use subthresh_core::{Material, MaterialKind};
use subthresh_sources::{EntangledSource, OpticalPath};

/// Below this damping factor `exp(−T_E κ/2)` the oscillatory part of the
/// overlap integrand is dropped (it is below f64 resolution relative to 1).
const DAMPING_CUTOFF: f64 = 1e-17;

/// Numerical settings for the entangled-two-photon integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EtppConfig {
    /// Lower wavenumber bound (1/m); default from the emission threshold.
    pub k_min: Option<f64>,
    /// Upper wavenumber bound (1/m); default `k_upper`, else `k_F`.
    pub k_max: Option<f64>,
    /// Initial uniform Simpson intervals over `[k_min, k_max]` (even, ≥ 4).
    pub k_intervals: usize,
    /// The k grid is doubled until successive Simpson estimates agree to
    /// this relative tolerance.
    pub k_rel_tol: f64,
    /// Upper limit on the doubled interval count.
    pub k_max_intervals: usize,
    /// Minimum number of initial pieces over `[E_j_min, E_j_max]`.
    pub ej_pieces: usize,
    /// Relative tolerance of the adaptive E_j quadrature.
    pub rel_tol: f64,
    /// Keep the cross term between the steady and oscillating parts of the
    /// overlap amplitude; off gives interference-free smoothed curves.
    pub interference: bool,
}

impl Default for EtppConfig {
    fn default() -> Self {
        Self {
            k_min: None,
            k_max: None,
            k_intervals: 64,
            k_rel_tol: 1e-6,
            k_max_intervals: 8192,
            ej_pieces: 4,
            rel_tol: 1e-6,
            interference: true,
        }
    }
}

impl EtppConfig {
    pub fn validate(&self) -> Result<()> {
        let n = self.k_intervals as f64;
        check("k intervals", n, self.k_intervals >= 4 && self.k_intervals % 2 == 0, "even, >= 4")?;
        check("E_j pieces", self.ej_pieces as f64, self.ej_pieces >= 1, ">= 1")?;
        check("relative tolerance", self.rel_tol, self.rel_tol > 0.0, "> 0")?;
        check("k relative tolerance", self.k_rel_tol, self.k_rel_tol > 0.0, "> 0")?;
        let m = self.k_max_intervals as f64;
        check("k max intervals", m, self.k_max_intervals >= self.k_intervals, ">= k_intervals")?;
        if let Some(k) = self.k_min {
            check("k_min", k, k >= 0.0, ">= 0")?;
        }
        if let Some(k) = self.k_max {
            check("k_max", k, k > 0.0, "> 0")?;
        }
        Ok(())
    }

    /// Resolves the wavenumber window `(k_min, k_max)` for a material and pump.
    pub fn k_window(&self, mat: &Material, omega_p: f64) -> Result<(f64, f64)> {
        let k_min = match (self.k_min, mat.k_lower) {
            (Some(k), _) | (None, Some(k)) => k,
            (None, None) => {
                let e_th = match mat.kind {
                    MaterialKind::Metal => mat.require("E_F", mat.e_f)? + mat.threshold()?,
                    MaterialKind::Semiconductor => mat.threshold()?,
                };
                (2.0 * M_ELECTRON * (e_th - HBAR * omega_p).max(0.0)).sqrt() / HBAR
            }
        };
        let k_max = match self.k_max.or(mat.k_upper) {
            Some(k) => k,
            None => mat.require("k_F", mat.k_f)?,
        };
        if k_min >= k_max {
            return Err(EmissionError::EmptyWindow { k_min, k_max });
        }
        Ok((k_min, k_max))
    }
}

/// `r0² m⁴ c² / (4π³ħ⁵)` (SI).
pub fn etpp_constant() -> f64 {
    R0_CLASSICAL * R0_CLASSICAL * M_ELECTRON.powi(4) * C_LIGHT * C_LIGHT / (4.0 * PI.powi(3) * HBAR.powi(5))
}

/// Intermediate-band parameters pulled from a material.
#[derive(Debug, Clone, Copy)]
struct Band {
    e_min: f64,
    e_max: f64,
    e_c: f64,
    kappa: f64,
}

impl Band {
    fn of(mat: &Material) -> Result<Self> {
        let e_min = mat.require("E_j_min", mat.e_j_min)?;
        let e_max = mat.require("E_j_max", mat.e_j_max)?;
        let kappa = mat.require("kappa_j", mat.kappa_j)?;
        let e_c = mat.e_c()?;
        if e_c >= e_max {
            return Err(EmissionError::EmptyWeight {
                e_c_ev: e_c / subthresh_core::constants::E_CHARGE,
                e_j_max_ev: e_max / subthresh_core::constants::E_CHARGE,
            });
        }
        Ok(Self { e_min, e_max, e_c, kappa })
    }
}

/// Overlap value with its numerical diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Overlap {
    pub value: f64,
    /// Absolute error bound on the complex amplitude(s).
    pub amplitude_error: f64,
    pub converged: bool,
}

fn overlap_impl(k: f64, t_e: f64, band: &Band, omegas: [f64; 2], cfg: &EtppConfig) -> Overlap {
    let e_i = HBAR * HBAR * k * k / (2.0 * M_ELECTRON);
    let half_width = HBAR * band.kappa / 2.0;
    let damping = (-t_e * band.kappa / 2.0).exp();
    let oscillating = t_e > 0.0 && damping > DAMPING_CUTOFF;
    let span = band.e_max - band.e_min;
    let pieces = if oscillating {
        cfg.ej_pieces.max((t_e * span / HBAR / PI).ceil() as usize)
    } else {
        cfg.ej_pieces
    };
    let mut breaks: Vec<f64> = omegas.iter().map(|w| e_i + HBAR * w).collect();
    breaks.push(band.e_c);
    let weight = |e_j: f64| (e_j - band.e_c).max(0.0).sqrt();
    let quad = QuadConfig {
        rel_tol: cfg.rel_tol,
        ..QuadConfig::default()
    };
    // Steady part Σ 1/(Δ − iħκ/2) and oscillating part −Σ e^{−iTΔ/ħ − Tκ/2}/(Δ − iħκ/2).
    let steady = |e_j: f64| -> Complex64 {
        omegas
            .iter()
            .map(|w| Complex64::new(e_j - e_i - HBAR * w, -half_width).inv())
            .sum::<Complex64>()
            * weight(e_j)
    };
    let osc = |e_j: f64| -> Complex64 {
        omegas
            .iter()
            .map(|w| {
                let delta = e_j - e_i - HBAR * w;
                let phase = Complex64::new(-t_e * band.kappa / 2.0, -t_e * delta / HBAR).exp();
                -phase / Complex64::new(delta, -half_width)
            })
            .sum::<Complex64>()
            * weight(e_j)
    };
    if t_e == 0.0 {
        return Overlap {
            value: 0.0,
            amplitude_error: 0.0,
            converged: true,
        };
    }
    if !oscillating {
        let r = integrate(steady, band.e_min, band.e_max, &breaks, pieces, &quad);
        return Overlap {
            value: r.value.norm_sqr(),
            amplitude_error: r.error,
            converged: r.converged,
        };
    }
    if cfg.interference {
        let r = integrate(|e| steady(e) + osc(e), band.e_min, band.e_max, &breaks, pieces, &quad);
        Overlap {
            value: r.value.norm_sqr(),
            amplitude_error: r.error,
            converged: r.converged,
        }
    } else {
        let a = integrate(steady, band.e_min, band.e_max, &breaks, cfg.ej_pieces, &quad);
        let b = integrate(osc, band.e_min, band.e_max, &breaks, pieces, &quad);
        Overlap {
            value: a.value.norm_sqr() + b.value.norm_sqr(),
            amplitude_error: a.error + b.error,
            converged: a.converged && b.converged,
        }
    }
}

/// Entanglement–electron energy overlap `F(k, T_E)` (J).
pub fn etpp_overlap(k: f64, t_e: f64, mat: &Material, omega1: f64, omega2: f64, cfg: &EtppConfig) -> Result<Overlap> {
    cfg.validate()?;
    check("k", k, k >= 0.0, ">= 0")?;
    check("T_E", t_e, t_e >= 0.0, ">= 0")?;
    check("omega1", omega1, omega1 > 0.0, "> 0")?;
    check("omega2", omega2, omega2 > 0.0, "> 0")?;
    let band = Band::of(mat)?;
    Ok(overlap_impl(k, t_e, &band, [omega1, omega2], cfg))
}

/// Entangled-two-photon rates plus numerical diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct EtppResult {
    pub rates: EmissionRates,
    pub k_min: f64,
    pub k_max: f64,
    /// `∫ F(k)·k/(√(k² + 2mω_p/ħ) − k) dk`.
    pub k_integral: f64,
    /// Relative change between the last two Simpson estimates (n/2 vs n).
    pub k_rel_change: f64,
    /// Final Simpson interval count.
    pub k_intervals: usize,
    /// Number of k nodes whose inner quadrature missed its tolerance.
    pub unconverged_nodes: usize,
    pub warnings: Vec<String>,
}

/// Entangled-two-photon photocurrent for a source delivering its photon
/// flux through `path` (loss enters as `𝒯²`, outside the integral).
///
/// `η` is referred to the source photon flux and `R` to the source power.
pub fn etpp_rate(mat: &Material, src: &EntangledSource, path: &OpticalPath, cfg: &EtppConfig) -> Result<EtppResult> {
    cfg.validate()?;
    src.validate()?;
    path.validate()?;
    let beta = mat.require("beta", mat.beta)?;
    let d = mat.require("d", mat.d)?;
    let xi = mat.require("xi", mat.xi)?;
    let band = Band::of(mat)?;
    let (w_p, w1, w2) = (src.omega_p(), src.omega1(), src.omega2());
    let (k_min, k_max) = cfg.k_window(mat, w_p)?;
    let mut warnings = Vec::new();
    if path.area > src.a_e * (1.0 + 1e-12) {
        warnings.push(format!(
            "illuminated area {:.3e} m² exceeds entanglement area {:.3e} m²",
            path.area, src.a_e
        ));
    }

    let q2 = 2.0 * M_ELECTRON * w_p / HBAR;
    let eval = |k: f64| -> (f64, bool) {
        let f = overlap_impl(k, src.t_e, &band, [w1, w2], cfg);
        let jac = if k == 0.0 { 0.0 } else { k / ((k * k + q2).sqrt() - k) };
        (f.value * jac, f.converged)
    };
    // Nodes are evaluated in parallel and summed in fixed order.
    let span = k_max - k_min;
    let mut n = cfg.k_intervals;
    let first: Vec<(f64, bool)> = (0..=n)
        .into_par_iter()
        .map(|j| eval(if j == n { k_max } else { k_min + span * j as f64 / n as f64 }))
        .collect();
    let mut values: Vec<f64> = first.iter().map(|v| v.0).collect();
    let mut unconverged_nodes = first.iter().filter(|v| !v.1).count();
    let mut estimate = simpson(&values, span / n as f64);
    let mut change = f64::INFINITY;
    while n < cfg.k_max_intervals {
        let m = 2 * n;
        let mids: Vec<(f64, bool)> = (0..n)
            .into_par_iter()
            .map(|j| eval(k_min + span * (2 * j + 1) as f64 / m as f64))
            .collect();
        unconverged_nodes += mids.iter().filter(|v| !v.1).count();
        let mut refined = Vec::with_capacity(m + 1);
        for (j, v) in values.iter().enumerate() {
            refined.push(*v);
            if j < n {
                refined.push(mids[j].0);
            }
        }
        let next = simpson(&refined, span / m as f64);
        change = if next != 0.0 { ((next - estimate) / next).abs() } else { 0.0 };
        values = refined;
        estimate = next;
        n = m;
        if change <= cfg.k_rel_tol {
            break;
        }
    }
    if change > cfg.k_rel_tol {
        warnings.push(format!(
            "k integral changed by {change:.2e} (relative) at the final doubling to {n} intervals"
        ));
    }
    if unconverged_nodes > 0 {
        warnings.push(format!("{unconverged_nodes} k nodes missed the E_j quadrature tolerance"));
    }
    let fine = estimate;

    let t = path.transmittance;
    let eta = if src.t_e > 0.0 {
        t * t * beta * beta * d * etpp_constant() * (w_p * w_p / (4.0 * w1 * w2)) * xi / (src.a_e * src.t_e) * fine
    } else {
        0.0
    };
    let photon_flux = src.photon_flux();
    let rates = EmissionRates::from_rate(eta * photon_flux, photon_flux, src.mean_photon_energy());
    Ok(EtppResult {
        rates,
        k_min,
        k_max,
        k_integral: fine,
        k_rel_change: change,
        k_intervals: n,
        unconverged_nodes,
        warnings,
    })
}
