//! `tables`: recomputes the derived quantities of the reference tables and
//! compares them with the tabulated values.

use crate::error::{CliError, Result};
use crate::{Artifact, Context};
use serde::Serialize;
use subthresh_absorption::{
    crossover_flux, entanglement_time_from_crossover, equivalent_absorber, photoemission_equivalent, sigma_e_from_sigma2,
    AbsorberRegistry, Regime,
};
use subthresh_analysis::fixtures::{entangled_pair, linear_pair, quadratic_pair};
use subthresh_analysis::{
    crossover_intensity, extract_eta_e, extract_lc, extract_rf, CurrentParams, DriveUnit, Illumination,
    MeasurementSeries, ResponseUnit, Sample, SeriesMeta,
};
use subthresh_core::{qe_to_responsivity, responsivity_to_qe, Material, MaterialRegistry, SpectralPoint};
use subthresh_emission::{eta_to_sigma_e, etpp_rate, renormalize_eta, tpp_coefficient, EtppConfig, NA_SURFACE_THEORY_LC};
use subthresh_sources::{EntangledSource, OpticalPath, PowerLevel, Shape, Waveform};

pub const TABLE_IDS: [&str; 6] = ["4", "5", "6", "7", "8", "9"];

/// Acceptance band around a reference value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tolerance {
    /// |computed/reference − 1| ≤ value.
    Relative(f64),
    /// reference/value ≤ computed ≤ reference·value.
    Factor(f64),
}

impl Tolerance {
    pub fn accepts(self, computed: f64, reference: f64) -> bool {
        match self {
            Self::Relative(t) => (computed / reference - 1.0).abs() <= t,
            Self::Factor(f) => computed >= reference / f && computed <= reference * f,
        }
    }
}

impl std::fmt::Display for Tolerance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Relative(t) => write!(f, "±{}%", t * 100.0),
            Self::Factor(x) => write!(f, "×{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub table: &'static str,
    pub quantity: String,
    pub unit: &'static str,
    pub computed: f64,
    pub reference: f64,
    pub tolerance: Tolerance,
}

impl Row {
    pub fn rel_dev(&self) -> f64 {
        self.computed / self.reference - 1.0
    }

    pub fn pass(&self) -> bool {
        self.tolerance.accepts(self.computed, self.reference)
    }
}

struct Builder {
    table: &'static str,
    rows: Vec<Row>,
}

impl Builder {
    fn new(table: &'static str) -> Self {
        Self { table, rows: Vec::new() }
    }

    fn row(&mut self, quantity: impl Into<String>, unit: &'static str, computed: f64, reference: f64, tolerance: Tolerance) {
        self.rows.push(Row {
            table: self.table,
            quantity: quantity.into(),
            unit,
            computed,
            reference,
            tolerance,
        });
    }
}

const CONVERSION: Tolerance = Tolerance::Relative(0.01);
const TIGHT: Tolerance = Tolerance::Relative(0.05);

/// η = (hc/eλ)·R.
fn qe(r: f64, nm: f64) -> Result<f64> {
    Ok(responsivity_to_qe(r, nm)?)
}

fn spectrum(nm: f64) -> Result<SpectralPoint> {
    Ok(SpectralPoint::from_wavelength_nm(nm)?)
}

/// Semicircular pulse train of the sodium measurement: τ₀ = 35 µs every
/// 454.5 µs at 160 mW peak.
pub fn sodium_waveform() -> Waveform {
    Waveform::new(Shape::Semicircular { tau0: 35e-6, tau1: 454.5e-6 }, PowerLevel::Peak(0.160)).expect("valid waveform")
}

/// 𝓛_C of the thick sodium film from its single anchor point: 1.0e-13 A
/// first-harmonic current under the pulse train, A = 2e-9 m², g₂ = 2.
pub fn sodium_anchor_lc() -> Result<f64> {
    let stats = sodium_waveform().stats()?;
    let path = OpticalPath::new(1.0, 1.0, 2e-9, stats.lockin_fraction, stats.gamma)?;
    let mut meta = SeriesMeta::new(spectrum(845.0)?, path, Illumination::Classical);
    meta.g2 = 2.0;
    let i = 1.0e-13;
    let s = MeasurementSeries::new(
        vec![Sample {
            drive: stats.mean_power,
            response: i,
            sigma: 0.05 * i,
        }],
        DriveUnit::IncidentPower,
        ResponseUnit::Current,
        meta,
    )?;
    Ok(extract_lc(&s, &CurrentParams::default())?.value)
}

/// η_E of CsK₂Sb for the 406 nm, r = ½, T_E = 10 fs, φ = 5e23, A = A_E =
/// 1e-10 m² setup, with its count rate.
pub fn cesium_reference_setup(mats: &MaterialRegistry) -> Result<(f64, f64)> {
    let mat: Material = mats.get("CsK2Sb")?;
    let src = EntangledSource::from_flux_density(spectrum(406.0)?, 0.5, 10e-15, 1e-10, 5e23, 1e-10)?;
    let res = etpp_rate(&mat, &src, &OpticalPath::direct(1e-10)?, &EtppConfig::default())?;
    Ok((res.rates.eta, res.rates.mu))
}

/// Sample-plane crossover flux of the 1064 nm measurement from η_E = 2.3e-13,
/// 𝓛_C = 5.8e-16 A·m²/W², 𝒯₀ = 0.7, Γ = 1.
pub fn nir_crossover_flux() -> Result<f64> {
    let hv = spectrum(1064.0)?.photon_energy_j();
    let (sigma_e, sigma2) = photoemission_equivalent(2.3e-13, 5.8e-16, hv)?;
    let ab = equivalent_absorber("CsK2Sb (photoemission)", 0.0, sigma2)?;
    Ok(crossover_flux(&ab, sigma_e, 0.7, 1.0)?.phi_ec)
}

fn table4(mats: &MaterialRegistry) -> Result<Vec<Row>> {
    let mut b = Builder::new("4");
    let lc = sodium_anchor_lc()?;
    b.row("thick film, experiment: R_C/I", "A·m²/W²", lc, 5.65e-19, TIGHT);
    b.row("thick film, experiment: η_C/I", "m²/W", qe(lc, 845.0)?, 8.31e-19, TIGHT);
    let vol = tpp_coefficient(&mats.get("Na")?, &spectrum(845.0)?)?;
    b.row("thick film, volume theory: R_C/I", "A·m²/W²", vol, 1.80e-20, Tolerance::Factor(2.0));
    b.row("thick film, volume theory: η_C/I", "m²/W", qe(vol, 845.0)?, 2.65e-20, Tolerance::Factor(2.0));
    b.row("thin film, experiment: η_C/I from R_C/I", "m²/W", qe(9.42e-22, 845.0)?, 1.39e-21, CONVERSION);
    b.row(
        "thin film, surface theory: η_C/I from R_C/I",
        "m²/W",
        qe(NA_SURFACE_THEORY_LC, 845.0)?,
        3.53e-22,
        CONVERSION,
    );
    Ok(b.rows)
}

fn table5() -> Result<Vec<Row>> {
    let mut b = Builder::new("5");
    let rows: [(&str, f64, f64, f64); 14] = [
        ("R464, 800 nm, 27 °C", 800.0, 2.60e-16, 4.03e-16),
        ("R464, 800 nm, 0 °C", 800.0, 6.70e-16, 1.04e-15),
        ("R464, 800 nm, −20 °C", 800.0, 6.60e-16, 1.02e-15),
        ("R464, 830 nm, 27 °C", 830.0, 2.00e-16, 2.99e-16),
        ("R464, 830 nm, 0 °C", 830.0, 5.20e-16, 7.77e-16),
        ("R464, 845 nm, 27 °C", 845.0, 0.98e-16, 1.44e-16),
        ("R464, 845 nm, −20 °C", 845.0, 2.70e-16, 3.96e-16),
        ("CPM MP942, 1064 nm", 1064.0, 5.80e-16, 6.70e-16),
        ("PMT-130, 1080 nm", 1080.0, 2.37e-17, 2.72e-17),
        ("R2557, 845 nm", 845.0, 7.10e-16, 1.04e-15),
        ("R2557, 1064 nm", 1064.0, 2.10e-14, 2.45e-14),
        ("1P28, 845 nm", 845.0, 1.80e-18, 2.64e-18),
        ("coherent analog, 800 nm", 800.0, 2.6e-16, 4.0e-16),
        ("cousins, 1064 nm", 1064.0, 5.8e-16, 6.7e-16),
    ];
    for (name, nm, r, eta) in rows {
        b.row(format!("{name}: η_C/I from R_C/I"), "m²/W", qe(r, nm)?, eta, CONVERSION);
    }
    let pair = quadratic_pair()?;
    let lc = extract_lc(&pair.coherent, &CurrentParams::default())?.value;
    b.row("CPM MP942, 1064 nm: R_C/I from bundled coherent series", "A·m²/W²", lc, 5.8e-16, Tolerance::Relative(0.10));
    Ok(b.rows)
}

fn table6() -> Result<Vec<Row>> {
    let mut b = Builder::new("6");
    let pair = linear_pair()?;
    let rf = extract_rf(&pair.entangled, &CurrentParams::default())?.value;
    b.row("singletons (digital): R_F from bundled series", "A/W", rf, 2.4e-10, Tolerance::Relative(0.15));
    b.row("singletons (digital): η_F", "electrons/photon", qe(rf, 800.0)?, 3.7e-10, Tolerance::Relative(0.15));
    b.row("coherent (analog): η_F from R_F", "electrons/photon", qe(3.1e-10, 800.0)?, 4.8e-10, CONVERSION);
    Ok(b.rows)
}

fn table7(mats: &MaterialRegistry) -> Result<Vec<Row>> {
    let mut b = Builder::new("7");
    let pair = entangled_pair()?;
    let est = extract_eta_e(&pair.entangled, Some(&pair.coherent), &CurrentParams::default())?;
    b.row("R_E from bundled series", "A/W", est.r_e.value, 2.0e-13, Tolerance::Relative(0.15));
    b.row("η_E from bundled series", "electrons/photon", est.eta_e.value, 2.3e-13, Tolerance::Relative(0.15));
    b.row("η_E from R_E", "electrons/photon", qe(2.0e-13, 1064.0)?, 2.3e-13, Tolerance::Relative(0.02));
    let m = mats.get("CsK2Sb")?;
    let (beta, n, d) = (m.require("beta", m.beta)?, m.require("N", m.n)?, m.require("d", m.d)?);
    let s = eta_to_sigma_e(2.3e-13, beta, n, d, 1.6e-9, 340e-15)?;
    b.row("δ_E", "m⁴·s", s.delta_e, 2.1e-54, TIGHT);
    Ok(b.rows)
}

fn table8(mats: &MaterialRegistry) -> Result<Vec<Row>> {
    let mut b = Builder::new("8");
    let ev = |nm: f64| spectrum(nm).map(|s| s.photon_energy_ev());
    b.row("model: pump photon energy", "eV", ev(406.0)?, 3.05, CONVERSION);
    b.row("experiment: pump photon energy", "eV", ev(532.0)?, 2.33, CONVERSION);
    b.row("model: pair photon energy", "eV", ev(812.0)?, 1.53, CONVERSION);
    b.row("experiment: pair photon energy", "eV", ev(1064.0)?, 1.17, CONVERSION);
    let hv812 = spectrum(812.0)?.photon_energy_j();
    b.row("model: crossover intensity φ·hν", "W/m²", 5.0e23 * hv812, 1.2e5, TIGHT);

    let phi_ec = nir_crossover_flux()?;
    b.row("experiment: crossover flux φ_EC", "photons/m²·s", phi_ec, 1.3e21, TIGHT);
    let i_ec = crossover_intensity(0.0, 2.0e-13, 5.8e-16, 0.7, 1.0, 1.0)?.i_ec;
    b.row("experiment: crossover intensity I_EC", "W/m²", i_ec, 240.0, TIGHT);
    let t_e = entanglement_time_from_crossover(phi_ec, 1.6e-9, 0.7, 1.0)?;
    b.row("experiment: T_E from φ_EC", "s", t_e, 340e-15, TIGHT);

    let (eta, mu) = cesium_reference_setup(mats)?;
    b.row("model (calculated): η_E", "electrons/photon", eta, 1.6e-9, Tolerance::Factor(2.0));
    b.row("model (calculated): μ_E", "1/s", mu, 8.0e4, Tolerance::Factor(2.0));
    b.row("model (calculated): R_E", "A/W", qe_to_responsivity(eta, 812.0)?, 1.0e-9, Tolerance::Factor(2.0));

    let eta_new = renormalize_eta(1.6e-9, 1.0e-10 * 10e-15, 1.0, 1.6e-9 * 340e-15, 0.5)?;
    b.row("experiment (calculated): η_E renormalized", "electrons/photon", eta_new, 1.5e-12, TIGHT);
    b.row("experiment (calculated): R_E", "A/W", qe_to_responsivity(eta_new, 1064.0)?, 1.3e-12, TIGHT);
    Ok(b.rows)
}

fn table9(mats: &MaterialRegistry, absorbers: &AbsorberRegistry) -> Result<Vec<Row>> {
    let mut b = Builder::new("9");
    let h = sigma_e_from_sigma2(&absorbers.get("H1S2S")?, 2e-12, 3e-12, Regime::Auto)?;
    b.row("hydrogen 1S→2S: σ_E", "m²", h.sigma_e, 3.0e-17, TIGHT);
    b.row("hydrogen 1S→2S: δ_E", "m⁴·s", h.sigma_e * 6.0e-24, 1.8e-40, TIGHT);
    let r = sigma_e_from_sigma2(&absorbers.get("R6G")?, 1.0, 3.4e-24, Regime::Auto)?;
    b.row("rhodamine 6G: σ_E", "m²", r.sigma_e, 1.5e-33, TIGHT);
    b.row("rhodamine 6G: δ_E", "m⁴·s", r.sigma_e * 3.4e-24, 5.1e-57, TIGHT);
    let m = mats.get("CsK2Sb")?;
    let (beta, n, d) = (m.require("beta", m.beta)?, m.require("N", m.n)?, m.require("d", m.d)?);
    let s = eta_to_sigma_e(2.3e-13, beta, n, d, 1.6e-9, 340e-15)?;
    b.row("CsK2Sb photoemission: σ_E", "m²", s.sigma_e, 3.8e-33, TIGHT);
    b.row("CsK2Sb photoemission: δ_E", "m⁴·s", s.delta_e, 2.1e-54, TIGHT);
    Ok(b.rows)
}

/// Accepts `8`, `table8`, `Table 8`.
pub fn normalize_id(id: &str) -> Result<&'static str> {
    let lower = id.trim().to_ascii_lowercase();
    let bare = lower.strip_prefix("table").unwrap_or(&lower).trim();
    TABLE_IDS.iter().copied().find(|t| *t == bare).ok_or_else(|| {
        CliError::Validation(format!(
            "unknown table `{id}`; available tables: {}",
            TABLE_IDS.join(", ")
        ))
    })
}

/// Rows of the requested tables (all when `ids` is empty), in table order.
pub fn rows(mats: &MaterialRegistry, absorbers: &AbsorberRegistry, ids: &[String]) -> Result<Vec<Row>> {
    let wanted: Vec<&str> = if ids.is_empty() {
        TABLE_IDS.to_vec()
    } else {
        ids.iter().map(|i| normalize_id(i)).collect::<Result<_>>()?
    };
    let mut out = Vec::new();
    for id in TABLE_IDS.iter().filter(|t| wanted.contains(t)) {
        out.extend(match *id {
            "4" => table4(mats)?,
            "5" => table5()?,
            "6" => table6()?,
            "7" => table7(mats)?,
            "8" => table8(mats)?,
            _ => table9(mats, absorbers)?,
        });
    }
    Ok(out)
}

/// Fixed-width text rendering, one row per quantity.
pub fn render(rows: &[Row]) -> String {
    let head = ["table", "quantity", "unit", "computed", "reference", "rel_dev", "tolerance", "status"];
    let cells: Vec<[String; 8]> = rows
        .iter()
        .map(|r| {
            [
                r.table.to_string(),
                r.quantity.clone(),
                r.unit.to_string(),
                format!("{:.4e}", r.computed),
                format!("{:.3e}", r.reference),
                format!("{:+.2}%", 100.0 * r.rel_dev()),
                r.tolerance.to_string(),
                if r.pass() { "ok" } else { "OUTSIDE" }.to_string(),
            ]
        })
        .collect();
    let mut width = head.map(|h| h.chars().count());
    for c in &cells {
        for (w, s) in width.iter_mut().zip(c) {
            *w = (*w).max(s.chars().count());
        }
    }
    let line = |c: &[String]| -> String {
        let parts: Vec<String> = c
            .iter()
            .zip(width)
            .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&head.map(String::from));
    out += &line(&width.map(|w| "-".repeat(w)));
    for c in &cells {
        out += &line(c);
    }
    out
}

pub fn run(ctx: &Context, ids: &[String]) -> Result<Vec<Artifact>> {
    let mats = ctx.loaded.materials()?;
    let absorbers = ctx.loaded.absorbers()?;
    let rows = rows(&mats, &absorbers, ids)?;
    let registries = mats.to_toml() + &absorbers.to_toml();
    let prov = ctx.provenance("tables").with_material("registry", &registries);
    let mut out = prov.header();
    out += &render(&rows);
    let outside = rows.iter().filter(|r| !r.pass()).count();
    out += &format!("# {} quantities, {} outside tolerance\n", rows.len(), outside);
    Ok(vec![Artifact {
        name: "tables.txt".into(),
        contents: out,
    }])
}
