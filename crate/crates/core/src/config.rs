//! Session configuration, loaded from a TOML file.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

use crate::filter::FilterConfig;
use crate::game::GameConfig;
use crate::gesture::ClassifierConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SessionConfig {
    pub listen_address: String,
    /// Reflect incoming frames horizontally before classification.
    pub mirror_input: bool,
    /// Broadcast and record a snapshot every k-th tick.
    pub snapshot_decimation: u32,
    pub trace_out: Option<PathBuf>,
    /// Start ticking immediately instead of waiting for a client.
    pub headless: bool,
    /// Consecutive undecodable lines tolerated before the client is dropped.
    pub max_consecutive_malformed: u32,
    pub classifier: ClassifierConfig,
    pub filter: FilterConfig,
    pub game: GameConfig,
}

impl Default for SessionConfig {
    fn default() -> Self {
        Self {
            listen_address: "127.0.0.1:8765".into(),
            mirror_input: true,
            snapshot_decimation: 1,
            trace_out: None,
            headless: false,
            max_consecutive_malformed: 100,
            classifier: ClassifierConfig::default(),
            filter: FilterConfig::default(),
            game: GameConfig::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot parse config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl SessionConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let cfg: SessionConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.to_owned(), source })?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.snapshot_decimation < 1 {
            return Err(ConfigError::Invalid("snapshot_decimation must be at least 1".into()));
        }
        if self.max_consecutive_malformed < 1 {
            return Err(ConfigError::Invalid("max_consecutive_malformed must be at least 1".into()));
        }
        self.classifier.validate().map_err(ConfigError::Invalid)?;
        self.filter.validate().map_err(ConfigError::Invalid)?;
        self.game.validate().map_err(|e| ConfigError::Invalid(e.0))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(SessionConfig::from_toml_str("").unwrap(), SessionConfig::default());
    }

    #[test]
    fn partial_override() {
        let cfg = SessionConfig::from_toml_str(
            "mirror_input = false\n[filter]\ndebounce_frames = 4\n[game]\nlanes = 5\nrng_seed = 9\n",
        )
        .unwrap();
        assert!(!cfg.mirror_input);
        assert_eq!(cfg.filter.debounce_frames, 4);
        assert_eq!(cfg.filter.enter_deg, 20.0);
        assert_eq!((cfg.game.lanes, cfg.game.rng_seed), (5, 9));
    }

    #[test]
    fn rejects_invalid_values_and_unknown_keys() {
        assert!(matches!(SessionConfig::from_toml_str("snapshot_decimation = 0"), Err(ConfigError::Invalid(_))));
        assert!(matches!(SessionConfig::from_toml_str("[filter]\nexit_deg = 30.0"), Err(ConfigError::Invalid(_))));
        assert!(matches!(SessionConfig::from_toml_str("[game]\nlanes = 1"), Err(ConfigError::Invalid(_))));
        assert!(matches!(SessionConfig::from_toml_str("bogus = 1"), Err(ConfigError::Parse(_))));
    }

    #[test]
    fn shipped_default_config_matches_code_defaults() {
        let text = include_str!("../../../config/default.toml");
        assert_eq!(SessionConfig::from_toml_str(text).unwrap(), SessionConfig::default());
    }
}
