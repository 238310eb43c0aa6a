//! Provenance block embedded in every output.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const TOOL: &str = "subthresh";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    /// SHA-256 of the effective configuration (after overrides), as TOML.
    pub config_sha256: String,
    /// Material or absorber the output depends on, if any.
    pub material: Option<String>,
    /// SHA-256 of that record (or registry), as TOML.
    pub material_sha256: Option<String>,
    /// `--set` overrides in the order given.
    pub overrides: Vec<String>,
    pub seed: Option<u64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Provenance {
    pub fn new(command: &'static str, document: &toml::Table, overrides: &[String]) -> Self {
        let canonical = toml::to_string(document).unwrap_or_default();
        Self {
            tool: TOOL,
            version: VERSION,
            command,
            config_sha256: sha256_hex(canonical.as_bytes()),
            material: None,
            material_sha256: None,
            overrides: overrides.to_vec(),
            seed: None,
        }
    }

    pub fn with_material(mut self, name: &str, record_toml: &str) -> Self {
        self.material = Some(name.to_string());
        self.material_sha256 = Some(sha256_hex(record_toml.as_bytes()));
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// `# key: value` lines for CSV and text outputs.
    pub fn header(&self) -> String {
        let mut s = format!(
            "# {} {}\n# command: {}\n# config_sha256: {}\n",
            self.tool, self.version, self.command, self.config_sha256
        );
        if let (Some(m), Some(h)) = (&self.material, &self.material_sha256) {
            s += &format!("# material: {m}\n# material_sha256: {h}\n");
        }
        for o in &self.overrides {
            s += &format!("# set: {o}\n");
        }
        if let Some(seed) = self.seed {
            s += &format!("# seed: {seed}\n");
        }
        s
    }
}
