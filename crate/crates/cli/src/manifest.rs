//! Run manifest written by `fetch`.
//!
//! The manifest carries no timestamps so that replaying the same request
//! against the same store rewrites it byte for byte.

use hallugraph_core::Classification;
use serde::{Deserialize, Serialize};

use crate::config::Config;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub toolkit_version: String,
    /// Effective configuration. API keys never appear here, only the names of
    /// the variables holding them.
    pub config: Config,
    pub seed: u64,
    pub replay: bool,
    pub models: Vec<String>,
    pub targets: Vec<String>,
    pub entries: Vec<ManifestEntry>,
    pub new_fetches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub model_id: String,
    pub target: String,
    pub prompt: Option<String>,
    pub cache_key: Option<String>,
    pub status: EntryStatus,
    pub classification: Option<Classification>,
    pub retries: u32,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Cached,
    Fetched,
    Failed,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }

    pub fn failures(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.status == EntryStatus::Failed)
            .count()
    }
}
