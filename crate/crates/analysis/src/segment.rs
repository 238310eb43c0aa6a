//! Power-law exponents and piecewise log–log segmentation.

use serde::Serialize;

/// Half-width of the band around 0, 1, 2 within which a slope is classified.
pub const SLOPE_CLASS_BAND: f64 = 0.15;
/// Fewest points a segment may hold.
pub const MIN_SEGMENT_POINTS: usize = 3;

/// `ln y = intercept + slope·ln x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
}

impl PowerLawFit {
    pub fn eval(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

/// Weighted straight-line fit; `None` when the abscissae are degenerate.
fn line_fit(x: &[f64], y: &[f64], w: &[f64]) -> Option<(PowerLawFit, f64)> {
    let sw: f64 = w.iter().sum();
    let mx = x.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let my = y.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let sxx: f64 = x.iter().zip(w).map(|(a, b)| b * (a - mx).powi(2)).sum();
    if sxx.is_nan() || sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).zip(w).map(|((a, c), b)| b * (a - mx) * (c - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let chi2 = x
        .iter()
        .zip(y)
        .zip(w)
        .map(|((a, c), b)| b * (c - intercept - slope * a).powi(2))
        .sum();
    Some((PowerLawFit { slope, intercept }, chi2))
}

/// Unweighted least-squares power law through positive `(x, y)` pairs.
/// Exact power-law data return the exponent to rounding.
pub fn loglog_fit(x: &[f64], y: &[f64]) -> Option<PowerLawFit> {
    let (lx, ly): (Vec<f64>, Vec<f64>) = x
        .iter()
        .zip(y)
        .filter(|(a, b)| **a > 0.0 && **b > 0.0)
        .map(|(a, b)| (a.ln(), b.ln()))
        .unzip();
    if lx.len() < 2 {
        return None;
    }
    line_fit(&lx, &ly, &vec![1.0; lx.len()]).map(|f| f.0)
}

/// Nearest of 0, 1, 2 within [`SLOPE_CLASS_BAND`].
pub fn slope_class(slope: f64) -> Option<u8> {
    let r = slope.round();
    ((0.0..=2.0).contains(&r) && (slope - r).abs() <= SLOPE_CLASS_BAND).then_some(r as u8)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segment {
    /// Index range `[start, end)` into the positive-response points.
    pub start: usize,
    pub end: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub fit: PowerLawFit,
    pub class: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Segmentation {
    pub segments: Vec<Segment>,
    pub chi2: f64,
    pub bic: f64,
}

impl Segmentation {
    /// Segment covering `x`, or the nearest one.
    pub fn segment_at(&self, x: f64) -> &Segment {
        self.segments
            .iter()
            .find(|s| x >= s.x_min && x <= s.x_max)
            .unwrap_or_else(|| {
                if x < self.segments[0].x_min {
                    &self.segments[0]
                } else {
                    self.segments.last().expect("nonempty")
                }
            })
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.segment_at(x).fit.eval(x)
    }
}

/// Best piecewise power law with one to three independent segments,
/// chosen by BIC `χ² + p·ln n` (p = 3k − 1 for k segments) with weights
/// from the log-space uncertainties `σ/y`. Non-positive responses are skipped.
pub fn segment_loglog(x: &[f64], y: &[f64], sigma: &[f64]) -> Option<Segmentation> {
    let pts: Vec<(f64, f64, f64, f64)> = x
        .iter()
        .zip(y)
        .zip(sigma)
        .filter(|((a, b), _)| **a > 0.0 && **b > 0.0)
        .map(|((a, b), s)| (a.ln(), b.ln(), (b / s).powi(2), *a))
        .collect();
    let n = pts.len();
    if n < 2 {
        return None;
    }
    let lx: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ly: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let lw: Vec<f64> = pts.iter().map(|p| p.2).collect();
    let fit = |a: usize, b: usize| line_fit(&lx[a..b], &ly[a..b], &lw[a..b]);
    let seg = |a: usize, b: usize, f: PowerLawFit| Segment {
        start: a,
        end: b,
        x_min: pts[a].3,
        x_max: pts[b - 1].3,
        fit: f,
        class: slope_class(f.slope),
    };
    let ln_n = (n as f64).ln();
    let mut best: Option<Segmentation> = None;
    let mut consider = |segs: Vec<Segment>, chi2: f64| {
        let p = (3 * segs.len() - 1) as f64;
        let bic = chi2 + p * ln_n;
        if best.as_ref().map_or(true, |b| bic < b.bic) {
            best = Some(Segmentation { segments: segs, chi2, bic });
        }
    };
    if let Some((f, c)) = fit(0, n) {
        consider(vec![seg(0, n, f)], c);
    }
    let m = MIN_SEGMENT_POINTS;
    for i in m..=n.saturating_sub(m) {
        if let (Some((f1, c1)), Some((f2, c2))) = (fit(0, i), fit(i, n)) {
            consider(vec![seg(0, i, f1), seg(i, n, f2)], c1 + c2);
        }
        for j in (i + m)..=n.saturating_sub(m) {
            if let (Some((f1, c1)), Some((f2, c2)), Some((f3, c3))) = (fit(0, i), fit(i, j), fit(j, n)) {
                consider(vec![seg(0, i, f1), seg(i, j, f2), seg(j, n, f3)], c1 + c2 + c3);
            }
        }
    }
    best
}
