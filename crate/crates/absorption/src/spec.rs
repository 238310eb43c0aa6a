//! Absorber parameters and the `[absorber.<name>]` registry.

use crate::error::{AbsorptionError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use subthresh_core::constants::GM;

/// Relative tolerance on `σ⁽²⁾ ≈ σ₁²T_A` when all three are given.
pub const SIGMA2_CONSISTENCY_TOL: f64 = 0.5;

/// Boundary form of an absorber record. σ⁽²⁾ may be given in SI
/// (`sigma_2p`, m⁴·s) or Göppert-Mayer units (`sigma_2p_gm`).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbsorberRecord {
    #[serde(rename = "sigma_B", skip_serializing_if = "Option::is_none")]
    pub sigma_b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_2p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_2p_gm: Option<f64>,
    #[serde(rename = "T_A", skip_serializing_if = "Option::is_none")]
    pub t_a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_fg: Option<f64>,
    #[serde(rename = "B", skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pump_bandwidth: Option<f64>,
}

/// Absorber in SI units. Cross sections in m² (σ⁽²⁾ in m⁴·s), times in
/// s, linewidths in rad/s. Unknown values are `None`; `sigma_b` defaults to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsorberSpec {
    pub name: String,
    pub sigma_b: f64,
    pub sigma_1: Option<f64>,
    pub sigma_2p: Option<f64>,
    pub t_a: Option<f64>,
    pub gamma_fg: Option<f64>,
    pub b: Option<f64>,
    pub pump_bandwidth: Option<f64>,
}

impl AbsorberSpec {
    /// An absorber described only by σ_B and σ⁽²⁾.
    pub fn simple(name: &str, sigma_b: f64, sigma_2p: f64) -> Result<Self> {
        let s = Self {
            name: name.into(),
            sigma_b,
            sigma_1: None,
            sigma_2p: Some(sigma_2p),
            t_a: None,
            gamma_fg: None,
            b: None,
            pump_bandwidth: None,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_record(name: &str, r: &AbsorberRecord) -> Result<Self> {
        let sigma_2p = match (r.sigma_2p, r.sigma_2p_gm) {
            (Some(_), Some(_)) => {
                return Err(AbsorptionError::Inconsistent(
                    name.into(),
                    "both sigma_2p and sigma_2p_gm given".into(),
                ))
            }
            (Some(v), None) => Some(v),
            (None, Some(gm)) => Some(gm * GM),
            (None, None) => None,
        };
        let s = Self {
            name: name.into(),
            sigma_b: r.sigma_b.unwrap_or(0.0),
            sigma_1: r.sigma_1,
            sigma_2p,
            t_a: r.t_a,
            gamma_fg: r.gamma_fg,
            b: r.b,
            pump_bandwidth: r.pump_bandwidth,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn to_record(&self) -> AbsorberRecord {
        AbsorberRecord {
            sigma_b: Some(self.sigma_b),
            sigma_1: self.sigma_1,
            sigma_2p: self.sigma_2p,
            sigma_2p_gm: None,
            t_a: self.t_a,
            gamma_fg: self.gamma_fg,
            b: self.b,
            pump_bandwidth: self.pump_bandwidth,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("sigma_B", Some(self.sigma_b)),
            ("sigma_1", self.sigma_1),
            ("sigma_2p", self.sigma_2p),
            ("T_A", self.t_a),
            ("gamma_fg", self.gamma_fg),
            ("B", self.b),
            ("pump_bandwidth", self.pump_bandwidth),
        ];
        for (field, v) in fields {
            if let Some(v) = v {
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(AbsorptionError::Inconsistent(
                        self.name.clone(),
                        format!("{field} = {v} must be finite and >= 0"),
                    ));
                }
            }
        }
        if let (Some(s2), Some(s1), Some(ta)) = (self.sigma_2p, self.sigma_1, self.t_a) {
            let est = s1 * s1 * ta;
            if (s2 - est).abs() > SIGMA2_CONSISTENCY_TOL * s2.max(est) {
                return Err(AbsorptionError::Inconsistent(
                    self.name.clone(),
                    format!("sigma_2p = {s2:e} disagrees with sigma_1²·T_A = {est:e} by more than 50%"),
                ));
            }
        }
        Ok(())
    }

    pub(crate) fn require(&self, field: &'static str, v: Option<f64>) -> Result<f64> {
        v.ok_or_else(|| AbsorptionError::MissingParameter {
            absorber: self.name.clone(),
            field,
        })
    }

    /// σ⁽²⁾ (m⁴·s).
    pub fn sigma2(&self) -> Result<f64> {
        self.require("sigma_2p", self.sigma_2p)
    }
}

/// Reference absorbers.
///
/// `R6G`: rhodamine 6G in methanol at 810 nm, broad two-photon linewidth.
/// `H1S2S`: the atomic-hydrogen 1S→2S transition at 243 nm; only the
/// normalized entangled cross section is tabulated, so `sigma_2p` holds the
/// effective α·σ⁽²⁾ and no linewidths are given (α = 1 under `auto`).
pub const BUILTIN_ABSORBERS: &str = r#"
[absorber.R6G]
sigma_B = 0.0
sigma_2p_gm = 51.0

[absorber.H1S2S]
sigma_B = 0.0
sigma_2p = 1.8e-40
"#;

/// Named absorbers parsed from registry files.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AbsorberRegistry {
    records: BTreeMap<String, AbsorberRecord>,
}

#[derive(Serialize)]
struct AbsorberDoc<'a> {
    absorber: &'a BTreeMap<String, AbsorberRecord>,
}

impl AbsorberRegistry {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_ABSORBERS).expect("built-in absorbers are valid")
    }

    /// Built-ins overlaid with the entries of `text`.
    pub fn load(text: &str) -> Result<Self> {
        let mut reg = Self::builtin();
        reg.records.extend(Self::parse(text)?.records);
        Ok(reg)
    }

    /// Parses the `absorber` table of a registry file; the `material` table
    /// is tolerated, other top-level keys are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| AbsorptionError::Parse(e.to_string()))?;
        let mut records = BTreeMap::new();
        for (key, value) in doc {
            match key.as_str() {
                "absorber" => {
                    let table = value
                        .as_table()
                        .ok_or_else(|| AbsorptionError::Parse("`absorber` must be a table".into()))?;
                    for (name, body) in table {
                        let rec: AbsorberRecord = body
                            .clone()
                            .try_into()
                            .map_err(|e: toml::de::Error| AbsorptionError::Parse(format!("[absorber.{name}]: {e}")))?;
                        AbsorberSpec::from_record(name, &rec)?;
                        records.insert(name.clone(), rec);
                    }
                }
                "material" => {}
                other => return Err(AbsorptionError::Parse(format!("unknown top-level key `{other}`"))),
            }
        }
        Ok(Self { records })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&AbsorberDoc { absorber: &self.records }).expect("records serialize")
    }

    pub fn get(&self, name: &str) -> Result<AbsorberSpec> {
        let rec = self
            .records
            .get(name)
            .ok_or_else(|| AbsorptionError::NotFound(name.into()))?;
        AbsorberSpec::from_record(name, rec)
    }

    pub fn insert(&mut self, spec: &AbsorberSpec) {
        self.records.insert(spec.name.clone(), spec.to_record());
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.records.keys().map(String::as_str)
    }
}
