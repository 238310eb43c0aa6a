//! Weighted nonlinear least-squares fit of the current model, and the
//! Poisson Fisher-information bound for the same parameters.

use crate::error::{AnalysisError, Result};
use crate::model::{CurrentParams, SeriesModel, PARAM_NAMES};
use crate::series::{Illumination, MeasurementSeries};
use levenberg_marquardt::{LeastSquaresProblem, LevenbergMarquardt};
use nalgebra::storage::Owned;
use nalgebra::{DMatrix, DVector, Dyn};
use serde::{Deserialize, Serialize};
use subthresh_core::constants::E_CHARGE;

/// Columns whose scaled singular value falls below this fraction of the
/// largest are treated as degenerate.
const RANK_TOL: f64 = 1e-10;

/// Largest |residual| (in σ units) for which a fit counts as exact.
pub const EXACT_RESIDUAL: f64 = 1e-6;

/// Which of `i_D, R_F, L_C, R_E` are free; the rest are held at `fixed`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelStructure {
    pub free: [bool; 4],
    pub fixed: CurrentParams,
}

impl ModelStructure {
    /// Frees the named slots (`i_D`, `R_F`, `L_C`, `R_E`).
    pub fn new(free: &[&str], fixed: CurrentParams) -> Result<Self> {
        let mut mask = [false; 4];
        for name in free {
            let j = PARAM_NAMES
                .iter()
                .position(|p| p.eq_ignore_ascii_case(name))
                .ok_or_else(|| AnalysisError::Missing(format!("unknown parameter `{name}`; expected one of {PARAM_NAMES:?}")))?;
            mask[j] = true;
        }
        Ok(Self { free: mask, fixed })
    }

    /// `i_D, R_F, L_C` free, and `R_E` too for entangled light.
    pub fn default_for(illumination: Illumination) -> Self {
        Self {
            free: [true, true, true, illumination == Illumination::Entangled],
            fixed: CurrentParams::default(),
        }
    }

    pub fn free_names(&self) -> Vec<&'static str> {
        (0..4).filter(|&j| self.free[j]).map(|j| PARAM_NAMES[j]).collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Residuals {
    /// `(y/σ)(ln y − ln ŷ)`: relative misfit, robust across decades.
    #[default]
    Log,
    /// `(y − ŷ)/σ`.
    Linear,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    pub residuals: Residuals,
    /// Starting point for the free slots; a linear weighted fit otherwise.
    pub initial: Option<CurrentParams>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtractionResult {
    pub params: CurrentParams,
    pub free: Vec<&'static str>,
    /// Covariance of the free parameters, in `free` order, from (JᵀJ)⁻¹
    /// without χ² rescaling.
    pub covariance: Vec<Vec<f64>>,
    /// Standard errors in slot order `i_D, R_F, L_C, R_E`; 0 for fixed slots.
    pub sigmas: [f64; 4],
    pub chi2: f64,
    pub dof: usize,
    pub converged: bool,
    /// Every residual is below `EXACT_RESIDUAL`: the data are reproduced
    /// (noiseless input, or an interpolating fit with no spare points).
    pub exact: bool,
    pub termination: String,
    pub warnings: Vec<String>,
}

impl ExtractionResult {
    pub fn chi2_reduced(&self) -> Option<f64> {
        (self.dof > 0).then(|| self.chi2 / self.dof as f64)
    }
}

/// One data row: basis in response units, observed response and σ.
struct Row {
    basis: [f64; 4],
    y: f64,
    sigma: f64,
}

struct Problem<'a> {
    rows: &'a [Row],
    free: Vec<usize>,
    fixed: [f64; 4],
    scale: Vec<f64>,
    residuals: Residuals,
    u: DVector<f64>,
}

impl Problem<'_> {
    fn theta(&self, u: &DVector<f64>) -> [f64; 4] {
        let mut t = self.fixed;
        for (k, &j) in self.free.iter().enumerate() {
            t[j] = self.scale[k] * u[k].exp();
        }
        t
    }

    fn predict(row: &Row, t: &[f64; 4]) -> f64 {
        row.basis.iter().zip(t).map(|(b, t)| b * t).sum()
    }

    fn uses_log(&self, row: &Row) -> bool {
        self.residuals == Residuals::Log && row.y > 0.0
    }
}

impl LeastSquaresProblem<f64, Dyn, Dyn> for Problem<'_> {
    type ResidualStorage = Owned<f64, Dyn>;
    type JacobianStorage = Owned<f64, Dyn, Dyn>;
    type ParameterStorage = Owned<f64, Dyn>;

    fn set_params(&mut self, u: &DVector<f64>) {
        self.u.copy_from(u);
    }

    fn params(&self) -> DVector<f64> {
        self.u.clone()
    }

    fn residuals(&self) -> Option<DVector<f64>> {
        let t = self.theta(&self.u);
        let mut r = DVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            let yhat = Self::predict(row, &t);
            r[i] = if self.uses_log(row) {
                if yhat <= 0.0 {
                    return None;
                }
                row.y / row.sigma * (row.y.ln() - yhat.ln())
            } else {
                (row.y - yhat) / row.sigma
            };
        }
        r.iter().all(|v| v.is_finite()).then_some(r)
    }

    fn jacobian(&self) -> Option<DMatrix<f64>> {
        let t = self.theta(&self.u);
        let mut jac = DMatrix::zeros(self.rows.len(), self.free.len());
        for (i, row) in self.rows.iter().enumerate() {
            let yhat = Self::predict(row, &t);
            for (k, &j) in self.free.iter().enumerate() {
                let d = t[j] * row.basis[j];
                jac[(i, k)] = if self.uses_log(row) {
                    -row.y / row.sigma * d / yhat
                } else {
                    -d / row.sigma
                };
            }
        }
        jac.iter().all(|v| v.is_finite()).then_some(jac)
    }
}

fn rows_of(series: &[&MeasurementSeries], structure: &ModelStructure) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for s in series {
        s.validate()?;
        let entangled = s.meta.illumination == Illumination::Entangled;
        if !entangled && structure.free[3] && series.len() == 1 {
            return Err(AnalysisError::KindMismatch(format!(
                "R_E cannot be fitted for {:?} illumination",
                s.meta.illumination
            )));
        }
        let m = SeriesModel::of(s);
        rows.extend(s.samples.iter().map(|p| Row {
            basis: m.basis(p.drive),
            y: p.response,
            sigma: p.sigma,
        }));
    }
    if structure.fixed.r_e != 0.0 && !series.iter().any(|s| s.meta.illumination == Illumination::Entangled) {
        return Err(AnalysisError::KindMismatch("fixed R_E ≠ 0 without an entangled series".into()));
    }
    Ok(rows)
}

/// Smallest-to-largest singular value ratio of the column-normalized matrix.
fn conditioning(m: &DMatrix<f64>) -> f64 {
    let mut a = m.clone();
    for mut c in a.column_iter_mut() {
        let n = c.norm();
        if n > 0.0 {
            c /= n;
        }
    }
    let sv = a.singular_values();
    let max = sv.max();
    if max > 0.0 {
        sv.min() / max
    } else {
        0.0
    }
}

fn rank_error(free: &[usize], m: &DMatrix<f64>) -> AnalysisError {
    // Name the pair of free columns that are most nearly parallel.
    let mut worst = (0.0, 0, 0);
    for a in 0..free.len() {
        for b in a + 1..free.len() {
            let (ca, cb) = (m.column(a), m.column(b));
            let cos = (ca.dot(&cb) / (ca.norm() * cb.norm())).abs();
            if cos > worst.0 {
                worst = (cos, a, b);
            }
        }
    }
    if free.len() > 1 && worst.0 > 1.0 - 1e-9 {
        AnalysisError::RankDeficient(format!(
            "{} and {} have proportional responses over these drives",
            PARAM_NAMES[free[worst.1]], PARAM_NAMES[free[worst.2]]
        ))
    } else {
        let zero = (0..free.len()).find(|&k| m.column(k).norm() == 0.0);
        match zero {
            Some(k) => AnalysisError::RankDeficient(format!("{} does not affect the response", PARAM_NAMES[free[k]])),
            None => AnalysisError::RankDeficient("free parameters are not jointly identifiable".into()),
        }
    }
}

/// Weighted linear least squares for the free slots (model is linear in θ),
/// with non-positive solutions replaced by a small positive value.
fn linear_start(rows: &[Row], free: &[usize], fixed: &[f64; 4]) -> Result<Vec<f64>> {
    let n = rows.len();
    let mut a = DMatrix::zeros(n, free.len());
    let mut b = DVector::zeros(n);
    for (i, row) in rows.iter().enumerate() {
        let fixed_part: f64 = (0..4).filter(|j| !free.contains(j)).map(|j| row.basis[j] * fixed[j]).sum();
        for (k, &j) in free.iter().enumerate() {
            a[(i, k)] = row.basis[j] / row.sigma;
        }
        b[i] = (row.y - fixed_part) / row.sigma;
    }
    if conditioning(&a) < RANK_TOL {
        return Err(rank_error(free, &a));
    }
    let norms: Vec<f64> = a.column_iter().map(|c| c.norm()).collect();
    let mut scaled = a.clone();
    for (k, mut c) in scaled.column_iter_mut().enumerate() {
        c /= norms[k];
    }
    let x = scaled
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| AnalysisError::RankDeficient(e.to_string()))?;
    let mut median_y: Vec<f64> = rows.iter().map(|r| r.y.abs()).collect();
    median_y.sort_by(f64::total_cmp);
    let y_mid = median_y[n / 2].max(f64::MIN_POSITIVE);
    Ok(free
        .iter()
        .enumerate()
        .map(|(k, &j)| {
            let v = x[k] / norms[k];
            // Floor: the slot contributes ~1e-3 of a typical response where
            // its basis is largest.
            let bmax = rows.iter().map(|r| r.basis[j].abs()).fold(0.0, f64::max);
            let floor = 1e-3 * y_mid / bmax;
            if v.is_finite() && v > floor {
                v
            } else {
                floor
            }
        })
        .collect())
}

/// Fits the free slots of `structure` to one or more series sharing the
/// same parameters, with every slot constrained positive (θ = s·eᵘ).
///
/// Fails with `RankDeficient` when there are fewer than `max(3, n_free)`
/// points or the free columns are degenerate over the drives (e.g. R_F and
/// R_E both free on a single entangled series, which scale identically).
pub fn fit_current_model(
    series: &[&MeasurementSeries],
    structure: &ModelStructure,
    options: &FitOptions,
) -> Result<ExtractionResult> {
    let rows = rows_of(series, structure)?;
    let free: Vec<usize> = (0..4).filter(|&j| structure.free[j]).collect();
    let n_free = free.len();
    if n_free == 0 {
        return Err(AnalysisError::Missing("no free parameters".into()));
    }
    if rows.len() < n_free.max(3) {
        return Err(AnalysisError::RankDeficient(format!(
            "{} points for {n_free} free parameters (need at least {})",
            rows.len(),
            n_free.max(3)
        )));
    }
    let fixed = structure.fixed.to_array();
    let start = match options.initial {
        Some(p) => {
            let p = p.to_array();
            let guess = linear_start(&rows, &free, &fixed)?;
            free.iter()
                .zip(guess)
                .map(|(&j, g)| if p[j] > 0.0 { p[j] } else { g })
                .collect()
        }
        None => linear_start(&rows, &free, &fixed)?,
    };
    let problem = Problem {
        rows: &rows,
        free: free.clone(),
        fixed,
        scale: start,
        residuals: options.residuals,
        u: DVector::zeros(n_free),
    };
    let (problem, report) = LevenbergMarquardt::new().with_patience(400).minimize(problem);
    let converged = report.termination.was_successful();
    let mut warnings = Vec::new();
    if !converged {
        warnings.push(format!("optimizer stopped: {:?}", report.termination));
    }
    let theta = problem.theta(&problem.u);
    let r = problem.residuals().unwrap_or_else(|| DVector::from_element(rows.len(), f64::NAN));
    let chi2 = r.norm_squared();
    let ju = problem
        .jacobian()
        .ok_or_else(|| AnalysisError::RankDeficient("Jacobian not finite at the solution".into()))?;
    if conditioning(&ju) < RANK_TOL {
        return Err(rank_error(&free, &ju));
    }
    // Cov_θ = D (J_uᵀ J_u)⁻¹ D with D = diag(θ_free).
    let info = ju.transpose() * &ju;
    let inv = info
        .try_inverse()
        .ok_or_else(|| AnalysisError::RankDeficient("singular normal matrix at the solution".into()))?;
    let d: Vec<f64> = free.iter().map(|&j| theta[j]).collect();
    let covariance: Vec<Vec<f64>> = (0..n_free)
        .map(|a| (0..n_free).map(|b| d[a] * inv[(a, b)] * d[b]).collect())
        .collect();
    let mut sigmas = [0.0; 4];
    for (k, &j) in free.iter().enumerate() {
        sigmas[j] = covariance[k][k].sqrt();
    }
    for (k, &j) in free.iter().enumerate() {
        if problem.u[k] < -30.0 {
            warnings.push(format!("{} driven to its positivity bound", PARAM_NAMES[j]));
        }
    }
    let dof = rows.len() - n_free;
    Ok(ExtractionResult {
        params: CurrentParams::from_array(theta),
        free: structure.free_names(),
        covariance,
        sigmas,
        chi2,
        dof,
        converged,
        exact: r.iter().all(|v| v.abs() < EXACT_RESIDUAL),
        termination: format!("{:?}", report.termination),
        warnings,
    })
}

/// Cramér–Rao bound for the free slots under Poisson counting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CramerRao {
    pub free: Vec<&'static str>,
    pub fisher: Vec<Vec<f64>>,
    pub covariance: Vec<Vec<f64>>,
    /// Bound on the standard error, slot order; 0 for fixed slots.
    pub sigmas: [f64; 4],
}

/// `F_jk = Σ_i τ·(∂μ_i/∂θ_j)(∂μ_i/∂θ_k)/μ_i` with μ_i the electron count
/// rate at `drives[i]` and τ the counting time per drive.
pub fn fisher_crb(
    structure: &ModelStructure,
    params: &CurrentParams,
    model: &SeriesModel,
    drives: &[f64],
    counting_time: f64,
) -> Result<CramerRao> {
    crate::error::check("counting time", counting_time, counting_time > 0.0, "> 0")?;
    let free: Vec<usize> = (0..4).filter(|&j| structure.free[j]).collect();
    let n = free.len();
    if n == 0 {
        return Err(AnalysisError::Missing("no free parameters".into()));
    }
    let to_rate = match model.response_unit {
        crate::series::ResponseUnit::Current => 1.0 / E_CHARGE,
        crate::series::ResponseUnit::CountRate => 1.0,
    };
    let mut f = DMatrix::<f64>::zeros(n, n);
    for &x in drives {
        let b = model.basis(x).map(|v| v * to_rate);
        let mu: f64 = b.iter().zip(params.to_array()).map(|(b, t)| b * t).sum();
        if mu.is_nan() || mu <= 0.0 {
            return Err(AnalysisError::SingularFisher(format!("non-positive rate {mu:e} at drive {x:e}")));
        }
        for a in 0..n {
            for c in 0..n {
                f[(a, c)] += counting_time * b[free[a]] * b[free[c]] / mu;
            }
        }
    }
    let s: Vec<f64> = (0..n).map(|k| f[(k, k)].sqrt()).collect();
    if s.iter().any(|&v| v.is_nan() || v <= 0.0) {
        return Err(AnalysisError::SingularFisher("a free parameter carries no information".into()));
    }
    let scaled = DMatrix::from_fn(n, n, |a, c| f[(a, c)] / (s[a] * s[c]));
    let sv = scaled.singular_values();
    if sv.min() < RANK_TOL * sv.max() {
        return Err(AnalysisError::SingularFisher(format!(
            "condition {:e} for {:?}",
            sv.max() / sv.min(),
            structure.free_names()
        )));
    }
    let inv = scaled
        .try_inverse()
        .ok_or_else(|| AnalysisError::SingularFisher("inversion failed".into()))?;
    let covariance: Vec<Vec<f64>> = (0..n).map(|a| (0..n).map(|c| inv[(a, c)] / (s[a] * s[c])).collect()).collect();
    let mut sigmas = [0.0; 4];
    for (k, &j) in free.iter().enumerate() {
        sigmas[j] = covariance[k][k].sqrt();
    }
    Ok(CramerRao {
        free: structure.free_names(),
        fisher: (0..n).map(|a| (0..n).map(|c| f[(a, c)]).collect()).collect(),
        covariance,
        sigmas,
    })
}
