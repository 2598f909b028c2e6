//! TOML run configuration.
//!
//! ```toml
//! [[endpoint]]
//! model_id = "gpt-4o"
//! base_url = "https://api.openai.com/v1"
//! api_key_env = "OPENAI_API_KEY"
//! max_retries = 3
//!
//! [parser]
//! refusal_cues = ["I cannot provide"]
//!
//! [signatures]
//! normalization = "empty"
//! ```

use std::path::Path;

use hallugraph_core::{Normalization, ParserConfig};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::client::EndpointConfig;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("endpoint {model_id}: {message}")]
    Endpoint { model_id: String, message: String },
    #[error("model {0} is configured more than once")]
    DuplicateModel(String),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default, rename = "endpoint")]
    pub endpoints: Vec<EndpointConfig>,
    #[serde(default)]
    pub parser: ParserConfig,
    #[serde(default)]
    pub signatures: SignatureConfig,
    #[serde(default)]
    pub ged: GedConfig,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignatureConfig {
    #[serde(default)]
    pub normalization: Normalization,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GedConfig {
    /// Expansion budget per edit-distance call; the library default when absent.
    pub budget: Option<u64>,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let config: Config = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn endpoint(&self, model_id: &str) -> Option<&EndpointConfig> {
        self.endpoints.iter().find(|e| e.model_id == model_id)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let mut seen = std::collections::HashSet::new();
        for endpoint in &self.endpoints {
            endpoint
                .validate()
                .map_err(|message| ConfigError::Endpoint {
                    model_id: endpoint.model_id.clone(),
                    message,
                })?;
            if !seen.insert(endpoint.model_id.as_str()) {
                return Err(ConfigError::DuplicateModel(endpoint.model_id.clone()));
            }
        }
        Ok(())
    }
}
