use std::path::{Path, PathBuf};

use idsim_core::classify::ClassifyConfig;
use idsim_core::extract::ScanConfig;
use idsim_core::pairing::PairConfig;
use idsim_core::report::ReportFormat;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Settings for a whole run, loaded from JSON and overridden by flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ToolConfig {
    pub scan: ScanConfig,
    pub pairing: PairConfig,
    pub classify: ClassifyConfig,
    /// Extra abbreviations merged over the built-in dictionary.
    pub dictionary: Option<PathBuf>,
    /// Extra types merged over the built-in registry.
    pub registry: Option<PathBuf>,
    pub sample: bool,
    pub seed: u64,
    pub sample_confidence: f64,
    pub sample_margin: f64,
    pub format: ReportFormat,
    pub threads: Option<usize>,
}

impl Default for ToolConfig {
    fn default() -> Self {
        Self {
            scan: ScanConfig::default(),
            pairing: PairConfig::default(),
            classify: ClassifyConfig::default(),
            dictionary: None,
            registry: None,
            sample: false,
            seed: 0,
            sample_confidence: 0.95,
            sample_margin: 0.05,
            format: ReportFormat::Json,
            threads: None,
        }
    }
}

impl ToolConfig {
    /// Reads a config file. Relative dictionary and registry paths are
    /// resolved against the file's directory.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(e, format!("reading config {}", path.display())))?;
        let mut config: ToolConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::data(format!("invalid config {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut config.dictionary, &mut config.registry].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let c = &self.classify;
        let unit = [
            ("classify.colliding_threshold", c.colliding_threshold),
            ("classify.polymorphic_threshold", c.polymorphic_threshold),
            ("classify.inconsistent_threshold", c.inconsistent_threshold),
            ("classify.abbreviation.prefix", c.abbreviation.prefix),
            ("classify.abbreviation.subsequence", c.abbreviation.subsequence),
            ("scan.max_failure_ratio", self.scan.max_failure_ratio),
        ];
        for (name, value) in unit {
            if !(value > 0.0 && value <= 1.0) {
                return Err(CliError::data(format!("{name} must be in (0, 1], got {value}")));
            }
        }
        let caps = [
            ("pairing.max_method_identifiers", self.pairing.max_method_identifiers),
            ("pairing.max_block_size", self.pairing.max_block_size),
            ("threads", self.threads.unwrap_or(1)),
        ];
        for (name, value) in caps {
            if value < 1 {
                return Err(CliError::data(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }
}
