//! Run configuration, read from TOML. Every field has a default.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use massless_core::function_space::GridSpec;
use massless_core::spectral::WavepacketSpec;
use massless_core::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::suite::CheckId;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("tolerance for `{id}` must be positive and finite, got {value}")]
    BadTolerance { id: String, value: f64 },
    #[error("malformed tolerance override `{0}`, expected <check_id>=<value>")]
    BadOverride(String),
    #[error("invalid {field}: {reason}")]
    Invalid { field: &'static str, reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        let spec = GridSpec::default();
        GridConfig {
            r_min: spec.r_min,
            r_max: spec.r_max,
            n_r: spec.n_r,
            n_theta: spec.n_theta,
        }
    }
}

impl GridConfig {
    pub fn spec(&self) -> Result<GridSpec, ConfigError> {
        GridSpec::new(self.r_min, self.r_max, self.n_r, self.n_theta).map_err(|e| {
            ConfigError::Invalid {
                field: "grid",
                reason: e.to_string(),
            }
        })
    }
}

/// Ranges for randomly drawn Gaussian probes and translations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProbeConfig {
    pub width_min: f64,
    pub width_max: f64,
    /// Probe centers are drawn from the disk of this radius.
    pub center_radius: f64,
    /// Translations are drawn from the disk of this radius.
    pub beta_radius: f64,
    /// Angular indices are drawn from `-max..=max`.
    pub max_angular_index: i32,
    /// Probes per direction in the generator-limit study.
    pub limit_probes: usize,
    /// Step ladder of the generator-limit study.
    pub eta_ladder: Vec<f64>,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            width_min: 0.8,
            width_max: 1.3,
            center_radius: 1.5,
            beta_radius: 2.0,
            max_angular_index: 3,
            limit_probes: 10,
            eta_ladder: vec![1e-2, 5e-3, 2.5e-3],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PacketConfig {
    pub k0: [f64; 2],
    pub sigma: f64,
    pub n_k: usize,
    pub cutoff: f64,
    /// Translation applied by the transport check and the `packet` command.
    pub beta: [f64; 2],
}

impl Default for PacketConfig {
    fn default() -> Self {
        PacketConfig {
            k0: [2.0, 0.0],
            sigma: 0.5,
            n_k: 24,
            cutoff: 4.0,
            beta: [1.0, 0.0],
        }
    }
}

impl PacketConfig {
    pub fn spec(&self) -> WavepacketSpec {
        let mut spec = WavepacketSpec::gaussian(self.k0, self.sigma, self.n_k);
        spec.cutoff = self.cutoff;
        spec
    }

    pub fn beta(&self) -> Complex64 {
        Complex64::new(self.beta[0], self.beta[1])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub out: PathBuf,
    /// Subset of checks to run; all of them when absent.
    pub checks: Option<Vec<String>>,
    pub grid: GridConfig,
    pub probes: ProbeConfig,
    pub wavepacket: PacketConfig,
    /// Per-check tolerance overrides.
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 20_260_101,
            out: PathBuf::from("out"),
            checks: None,
            grid: GridConfig::default(),
            probes: ProbeConfig::default(),
            wavepacket: PacketConfig::default(),
            tolerances: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let config: RunConfig = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_owned(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.grid.spec()?;
        for (id, value) in &self.tolerances {
            CheckId::parse(id).ok_or_else(|| ConfigError::UnknownCheck(id.clone()))?;
            if !(*value > 0.0) || !value.is_finite() {
                return Err(ConfigError::BadTolerance {
                    id: id.clone(),
                    value: *value,
                });
            }
        }
        if let Some(checks) = &self.checks {
            for id in checks {
                CheckId::parse(id).ok_or_else(|| ConfigError::UnknownCheck(id.clone()))?;
            }
        }
        let p = &self.probes;
        if !(p.width_min > 0.0 && p.width_max >= p.width_min && p.width_max.is_finite()) {
            return Err(invalid("probes.width", "need 0 < width_min <= width_max"));
        }
        if !(p.center_radius >= 0.0 && p.center_radius.is_finite()) {
            return Err(invalid("probes.center_radius", "must be finite and non-negative"));
        }
        if !(p.beta_radius >= 0.0 && p.beta_radius.is_finite()) {
            return Err(invalid("probes.beta_radius", "must be finite and non-negative"));
        }
        if p.max_angular_index < 0 {
            return Err(invalid("probes.max_angular_index", "must be non-negative"));
        }
        if p.limit_probes == 0 {
            return Err(invalid("probes.limit_probes", "must be positive"));
        }
        if p.eta_ladder.len() < 2 || p.eta_ladder.iter().any(|e| !(*e > 0.0) || !e.is_finite()) {
            return Err(invalid("probes.eta_ladder", "need at least two positive steps"));
        }
        self.wavepacket
            .spec()
            .validate()
            .map_err(|e| invalid("wavepacket", &e.to_string()))?;
        if !self.wavepacket.beta.iter().all(|b| b.is_finite()) {
            return Err(invalid("wavepacket.beta", "must be finite"));
        }
        Ok(())
    }

    /// Applies a `<check_id>=<value>` override.
    pub fn override_tolerance(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let (id, value) = assignment
            .split_once('=')
            .ok_or_else(|| ConfigError::BadOverride(assignment.to_owned()))?;
        let id = id.trim();
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| ConfigError::BadOverride(assignment.to_owned()))?;
        CheckId::parse(id).ok_or_else(|| ConfigError::UnknownCheck(id.to_owned()))?;
        if !(value > 0.0) || !value.is_finite() {
            return Err(ConfigError::BadTolerance {
                id: id.to_owned(),
                value,
            });
        }
        self.tolerances.insert(id.to_owned(), value);
        Ok(())
    }

    /// Parses a comma-separated selection. An empty string selects nothing.
    pub fn select_checks(&mut self, list: &str) -> Result<(), ConfigError> {
        let ids: Vec<String> = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_owned)
            .collect();
        for id in &ids {
            CheckId::parse(id).ok_or_else(|| ConfigError::UnknownCheck(id.clone()))?;
        }
        self.checks = Some(ids);
        Ok(())
    }

    pub fn tolerance(&self, id: CheckId) -> f64 {
        self.tolerances
            .get(id.as_str())
            .copied()
            .unwrap_or_else(|| id.default_tolerance())
    }

    /// SHA-256 of the canonical JSON form, hex encoded. The output directory is
    /// excluded since it does not affect any residual.
    pub fn digest(&self) -> String {
        let mut canonical = self.clone();
        canonical.out = PathBuf::new();
        let text = serde_json::to_string(&canonical).expect("config serializes");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

fn invalid(field: &'static str, reason: &str) -> ConfigError {
    ConfigError::Invalid {
        field,
        reason: reason.to_owned(),
    }
}
