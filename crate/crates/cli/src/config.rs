//! Runtime configuration, read from the TOML file named by `MTC_CONFIG`.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

pub const CONFIG_ENV: &str = "MTC_CONFIG";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Table,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub tolerance_relation: f64,
    pub tolerance_rounding: f64,
    pub search_node_budget: u64,
    pub output_format: OutputFormat,
    pub golden_dir: PathBuf,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tolerance_relation: 1e-9,
            tolerance_rounding: 1e-6,
            search_node_budget: 100_000_000,
            output_format: OutputFormat::Table,
            golden_dir: default_golden_dir(),
        }
    }
}

pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: Self =
            toml::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Defaults, overridden by the file at `$MTC_CONFIG` when set.
    pub fn load() -> Result<Self, CliError> {
        match std::env::var_os(CONFIG_ENV) {
            None => Ok(Self::default()),
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    CliError::Usage(format!("config {}: {e}", Path::new(&path).display()))
                })?;
                Self::from_toml(&text)
            }
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.tolerance_relation) || !positive(self.tolerance_rounding) {
            return Err(CliError::Usage(
                "config: tolerances must be positive".into(),
            ));
        }
        if self.search_node_budget == 0 {
            return Err(CliError::Usage(
                "config: search_node_budget must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn tolerances(&self) -> rcft::Tolerances {
        rcft::Tolerances {
            relation: self.tolerance_relation,
            rounding: self.tolerance_rounding,
        }
    }

    pub fn search(&self) -> rcft::SearchConfig {
        rcft::SearchConfig {
            node_budget: self.search_node_budget,
            ..rcft::SearchConfig::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_files() {
        let cfg = Config::from_toml("search_node_budget = 5\noutput_format = \"json\"").unwrap();
        assert_eq!(cfg.search_node_budget, 5);
        assert_eq!(cfg.output_format, OutputFormat::Json);
        assert_eq!(cfg.tolerance_relation, 1e-9);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Config::from_toml("tolerance_relation = -1.0").is_err());
        assert!(Config::from_toml("search_node_budget = 0").is_err());
        assert!(Config::from_toml("colour = 3").is_err());
    }
}
