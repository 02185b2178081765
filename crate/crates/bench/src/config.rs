//! Data sizes and seed, read from a TOML file.

use std::path::Path;

use maidr::fixtures::{Scale, DEFAULT_SEED};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parsing {path}: {source}")]
    Parse { path: String, source: toml::de::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    pub seed: u64,
    pub scale: Scale,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { seed: DEFAULT_SEED, scale: Scale::default() }
    }
}

impl BenchConfig {
    pub fn parse(text: &str, path: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|source| ConfigError::Parse { path: path.into(), source })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: shown.clone(), source })?;
        Self::parse(&text, &shown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_file_matches_defaults() {
        let text = include_str!("../scales.toml");
        assert_eq!(BenchConfig::parse(text, "scales.toml").unwrap(), BenchConfig::default());
    }

    #[test]
    fn partial_and_unknown_keys() {
        let c = BenchConfig::parse("[scale]\npoints = 7\n", "x").unwrap();
        assert_eq!(c.scale.points, 7);
        assert_eq!(c.scale.bars, Scale::default().bars);
        assert!(BenchConfig::parse("[scale]\npointz = 7\n", "x").is_err());
    }
}
