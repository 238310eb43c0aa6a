//! Photoemitter parameter records and the material registry.
//!
//! Registry files are TOML documents with one `[material.<name>]` table per
//! material. Energies are in eV, lengths in m, densities in 1/m³, times in s.
//! Unknown keys are rejected. Records are converted to SI [`Material`]s on
//! lookup; the registry itself keeps the boundary form so that
//! serialize → parse round trips are exact.

use crate::constants::{E_CHARGE, HBAR, M_ELECTRON};
use crate::error::{CoreError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Band picture used to pick thresholds and reference energies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaterialKind {
    Metal,
    Semiconductor,
}

/// Boundary (file) form of a material; energies in eV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialRecord {
    pub kind: MaterialKind,
    #[serde(rename = "E_g", default, skip_serializing_if = "Option::is_none")]
    pub e_g: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<f64>,
    #[serde(rename = "W_ion", default, skip_serializing_if = "Option::is_none")]
    pub w_ion: Option<f64>,
    #[serde(rename = "W_work", default, skip_serializing_if = "Option::is_none")]
    pub w_work: Option<f64>,
    #[serde(rename = "E_F", default, skip_serializing_if = "Option::is_none")]
    pub e_f: Option<f64>,
    #[serde(rename = "k_F", default, skip_serializing_if = "Option::is_none")]
    pub k_f: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_j: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_j: Option<f64>,
    #[serde(rename = "E_j_min", default, skip_serializing_if = "Option::is_none")]
    pub e_j_min: Option<f64>,
    #[serde(rename = "E_j_max", default, skip_serializing_if = "Option::is_none")]
    pub e_j_max: Option<f64>,
    #[serde(rename = "E_c", default, skip_serializing_if = "Option::is_none")]
    pub e_c: Option<f64>,
    #[serde(rename = "M_osc", default, skip_serializing_if = "Option::is_none")]
    pub m_osc: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature_default: Option<f64>,
    /// Lower edge of the ETPP initial-state wavenumber window (1/m).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_lower: Option<f64>,
    /// Upper edge of the ETPP initial-state wavenumber window (1/m).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_upper: Option<f64>,
}

/// A photoemitter in SI units. Absent parameters stay `None`; models that
/// need them fail with [`CoreError::MissingParameter`].
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub name: String,
    pub kind: MaterialKind,
    /// Bandgap (J).
    pub e_g: Option<f64>,
    /// Electron affinity (J).
    pub chi: Option<f64>,
    /// Ionization energy 𝚆 (J).
    pub w_ion: Option<f64>,
    /// Work function 𝒲 (J).
    pub w_work: Option<f64>,
    /// Fermi energy (J).
    pub e_f: Option<f64>,
    /// Fermi wavenumber (1/m).
    pub k_f: Option<f64>,
    pub beta: Option<f64>,
    /// Escape depth (m).
    pub d: Option<f64>,
    /// Primitive-cell or atomic density (1/m³).
    pub n: Option<f64>,
    /// Intermediate-state lifetime (s).
    pub tau_j: Option<f64>,
    /// Intermediate-state linewidth (1/s).
    pub kappa_j: Option<f64>,
    /// Intermediate band bounds (J).
    pub e_j_min: Option<f64>,
    pub e_j_max: Option<f64>,
    /// Reference edge for the intermediate density-of-states weight (J);
    /// `None` means the kind default (see [`Material::e_c`]).
    pub e_c: Option<f64>,
    /// Two-photon oscillator strength `[M]`.
    pub m_osc: Option<f64>,
    /// Mean-square normalized matrix element ξ (m⁶).
    pub xi: Option<f64>,
    /// Default temperature (K).
    pub temperature_default: f64,
    pub k_lower: Option<f64>,
    pub k_upper: Option<f64>,
}

fn ev(x: Option<f64>) -> Option<f64> {
    x.map(|v| v * E_CHARGE)
}

fn to_ev(x: Option<f64>) -> Option<f64> {
    x.map(|v| v / E_CHARGE)
}

impl Material {
    /// Converts a boundary record to SI and validates it.
    pub fn from_record(name: &str, r: &MaterialRecord) -> Result<Self> {
        let w_ion = match (r.w_ion, r.e_g, r.chi) {
            (None, Some(g), Some(c)) if r.kind == MaterialKind::Semiconductor => Some(g + c),
            (w, _, _) => w,
        };
        let m = Self {
            name: name.to_string(),
            kind: r.kind,
            e_g: ev(r.e_g),
            chi: ev(r.chi),
            w_ion: ev(w_ion),
            w_work: ev(r.w_work),
            e_f: ev(r.e_f),
            k_f: r.k_f,
            beta: r.beta,
            d: r.d,
            n: r.n,
            tau_j: r.tau_j,
            kappa_j: r.kappa_j,
            e_j_min: ev(r.e_j_min),
            e_j_max: ev(r.e_j_max),
            e_c: ev(r.e_c),
            m_osc: r.m_osc,
            xi: r.xi,
            temperature_default: r.temperature_default.unwrap_or(300.0),
            k_lower: r.k_lower,
            k_upper: r.k_upper,
        };
        validate_record(name, r)?;
        Ok(m)
    }

    /// Back to the boundary form (eV).
    pub fn to_record(&self) -> MaterialRecord {
        MaterialRecord {
            kind: self.kind,
            e_g: to_ev(self.e_g),
            chi: to_ev(self.chi),
            w_ion: to_ev(self.w_ion),
            w_work: to_ev(self.w_work),
            e_f: to_ev(self.e_f),
            k_f: self.k_f,
            beta: self.beta,
            d: self.d,
            n: self.n,
            tau_j: self.tau_j,
            kappa_j: self.kappa_j,
            e_j_min: to_ev(self.e_j_min),
            e_j_max: to_ev(self.e_j_max),
            e_c: to_ev(self.e_c),
            m_osc: self.m_osc,
            xi: self.xi,
            temperature_default: Some(self.temperature_default),
            k_lower: self.k_lower,
            k_upper: self.k_upper,
        }
    }

    /// Fetches an optional parameter or fails naming it.
    pub fn require(&self, field: &'static str, value: Option<f64>) -> Result<f64> {
        value.ok_or_else(|| CoreError::MissingParameter {
            material: self.name.clone(),
            field,
        })
    }

    /// Photoemission threshold (J): 𝚆 for semiconductors, 𝒲 for metals.
    pub fn threshold(&self) -> Result<f64> {
        match self.kind {
            MaterialKind::Semiconductor => self.require("W_ion", self.w_ion),
            MaterialKind::Metal => self.require("W_work", self.w_work),
        }
    }

    /// Intermediate-band reference edge (J): explicit value, else 0 for
    /// metals (band bottom) and `E_g` for semiconductors.
    pub fn e_c(&self) -> Result<f64> {
        match (self.e_c, self.kind) {
            (Some(v), _) => Ok(v),
            (None, MaterialKind::Metal) => Ok(0.0),
            (None, MaterialKind::Semiconductor) => self.require("E_g", self.e_g),
        }
    }

    /// Free-electron wavenumber `√(2mE)/ħ` for an energy `e` (J).
    pub fn wavenumber_of(e: f64) -> f64 {
        (2.0 * M_ELECTRON * e.max(0.0)).sqrt() / HBAR
    }
}

fn invalid(material: &str, field: &str, reason: impl Into<String>) -> CoreError {
    CoreError::InvalidField {
        material: material.to_string(),
        field: field.to_string(),
        reason: reason.into(),
    }
}

fn validate_record(name: &str, r: &MaterialRecord) -> Result<()> {
    let positive: [(&str, Option<f64>); 13] = [
        ("E_g", r.e_g),
        ("W_ion", r.w_ion),
        ("W_work", r.w_work),
        ("E_F", r.e_f),
        ("k_F", r.k_f),
        ("d", r.d),
        ("N", r.n),
        ("tau_j", r.tau_j),
        ("kappa_j", r.kappa_j),
        ("M_osc", r.m_osc),
        ("xi", r.xi),
        ("temperature_default", r.temperature_default),
        ("k_upper", r.k_upper),
    ];
    for (field, v) in positive {
        if let Some(v) = v {
            if !(v > 0.0 && v.is_finite()) {
                return Err(invalid(name, field, format!("must be positive, got {v}")));
            }
        }
    }
    for (field, v) in [("chi", r.chi), ("E_c", r.e_c), ("k_lower", r.k_lower)] {
        if let Some(v) = v {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(name, field, format!("must be nonnegative, got {v}")));
            }
        }
    }
    if let Some(b) = r.beta {
        if !(b > 0.0 && b <= 1.0) {
            return Err(invalid(name, "beta", format!("must lie in (0, 1], got {b}")));
        }
    }
    match r.kind {
        MaterialKind::Semiconductor => {
            if let (Some(w), Some(g), Some(c)) = (r.w_ion, r.e_g, r.chi) {
                if (w - (g + c)).abs() > 1e-9 {
                    return Err(invalid(
                        name,
                        "W_ion",
                        format!("must equal E_g + chi = {} eV, got {w} eV", g + c),
                    ));
                }
            }
            if r.w_ion.is_none() && (r.e_g.is_none() || r.chi.is_none()) {
                return Err(invalid(name, "W_ion", "semiconductor needs W_ion or E_g + chi"));
            }
        }
        MaterialKind::Metal => {
            if r.w_work.is_none() {
                return Err(invalid(name, "W_work", "metal needs a work function"));
            }
        }
    }
    if let (Some(lo), Some(hi)) = (r.e_j_min, r.e_j_max) {
        if lo >= hi {
            return Err(invalid(name, "E_j_max", format!("must exceed E_j_min ({lo} eV)")));
        }
    }
    if let (Some(k), Some(t)) = (r.kappa_j, r.tau_j) {
        let p = k * t;
        if (p - 1.0).abs() > 0.2 {
            return Err(invalid(name, "kappa_j", format!("kappa_j·tau_j = {p}, expected 1 ± 0.2")));
        }
    }
    if let (Some(lo), Some(hi)) = (r.k_lower, r.k_upper) {
        if lo >= hi {
            return Err(invalid(name, "k_upper", format!("must exceed k_lower ({lo})")));
        }
    }
    Ok(())
}

/// Maximum photoelectron kinetic energy `n·hν − threshold` (J); negative
/// values signal that no classical emission occurs.
pub fn max_kinetic_energy(n_photons: u32, photon_energy: f64, mat: &Material) -> Result<f64> {
    if !(n_photons == 1 || n_photons == 2) {
        return Err(CoreError::OutOfRange {
            what: "photon number",
            value: n_photons as f64,
            expected: "1 or 2",
        });
    }
    crate::error::ensure_positive("photon energy", photon_energy)?;
    Ok(n_photons as f64 * photon_energy - mat.threshold()?)
}

/// Built-in materials, in registry-file form.
///
/// `k_upper` for CsK2Sb has no tabulated source: it is the initial-state
/// wavenumber window edge calibrated once so that the degenerate 406 nm
/// reference setup (T_E = 10 fs, A_E = A = 1e-10 m², φ = 5e23 m⁻²s⁻¹)
/// yields η_E = 1.6e-9, then frozen here.
pub const BUILTIN_REGISTRY: &str = r#"
[material.CsK2Sb]
kind = "semiconductor"
E_g = 1.0
chi = 1.1
W_ion = 2.1
beta = 0.7
d = 40e-9
N = 3.1e27
tau_j = 270e-15
kappa_j = 3.7e12
E_j_min = 2.5
E_j_max = 4.5
M_osc = 4448.0
xi = 4.5e-52
temperature_default = 300.0
k_lower = 0.0
k_upper = 2.0619e9

[material.Na]
kind = "metal"
W_work = 2.28
E_F = 3.12
k_F = 9.3e9
beta = 0.05
d = 40e-9
N = 2.7e28
tau_j = 10e-15
kappa_j = 1.0e14
E_j_min = 5.18
E_j_max = 8.0
M_osc = 8.0
xi = 1.7e-56
temperature_default = 300.0

[material.Na2KSb]
kind = "semiconductor"
E_g = 1.0
chi = 1.0
W_ion = 2.0
temperature_default = 300.0

[material.Cs3Sb]
kind = "semiconductor"
E_g = 1.6
chi = 0.4
W_ion = 2.0
temperature_default = 300.0
"#;

#[derive(Debug, Serialize)]
struct RegistryDoc<'a> {
    material: &'a BTreeMap<String, MaterialRecord>,
}

/// Read-only-after-load collection of materials keyed by name.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MaterialRegistry {
    records: BTreeMap<String, MaterialRecord>,
}

impl MaterialRegistry {
    /// The four built-in materials.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_REGISTRY).expect("built-in registry is valid")
    }

    /// Built-ins overlaid with the entries of `text` (same names replace).
    pub fn load(text: &str) -> Result<Self> {
        let mut reg = Self::builtin();
        for (k, v) in Self::parse(text)?.records {
            reg.records.insert(k, v);
        }
        Ok(reg)
    }

    /// Parses only the `[material.*]` tables of `text`. A top-level
    /// `absorber` table is tolerated (it belongs to the absorption model);
    /// anything else is rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: toml::Table = text.parse().map_err(|e: toml::de::Error| CoreError::Parse(e.to_string()))?;
        let mut records = BTreeMap::new();
        for (key, value) in doc {
            match key.as_str() {
                "material" => {
                    let table = value
                        .as_table()
                        .ok_or_else(|| CoreError::Parse("`material` must be a table".into()))?;
                    for (name, body) in table {
                        let rec: MaterialRecord = body
                            .clone()
                            .try_into()
                            .map_err(|e: toml::de::Error| CoreError::Parse(format!("[material.{name}]: {e}")))?;
                        Material::from_record(name, &rec)?;
                        records.insert(name.clone(), rec);
                    }
                }
                "absorber" => {}
                other => return Err(CoreError::Parse(format!("unknown top-level key `{other}`"))),
            }
        }
        Ok(Self { records })
    }

    /// Serializes to the registry file format.
    pub fn to_toml(&self) -> String {
        toml::to_string(&RegistryDoc {
            material: &self.records,
        })
        .expect("records serialize")
    }

    pub fn get(&self, name: &str) -> Result<Material> {
        let rec = self
            .records
            .get(name)
            .ok_or_else(|| CoreError::NotFound(name.to_string()))?;
        Material::from_record(name, rec)
    }

    pub fn record(&self, name: &str) -> Option<&MaterialRecord> {
        self.records.get(name)
    }

    pub fn insert(&mut self, mat: &Material) -> Result<()> {
        let rec = mat.to_record();
        validate_record(&mat.name, &rec)?;
        self.records.insert(mat.name.clone(), rec);
        Ok(())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.records.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}
