//! Transcript store: a directory holding `transcripts.jsonl` and the
//! `manifest.json` written by the last fetch.

use std::collections::{BTreeSet, HashMap};
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use hallugraph_core::{Source, Transcript};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const TRANSCRIPTS_FILE: &str = "transcripts.jsonl";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("{path}:{line}: {message}")]
    Corrupt {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub struct Store {
    dir: PathBuf,
    transcripts: Vec<Transcript>,
    /// (model_id, prompt) → index of the latest matching transcript.
    index: HashMap<(String, String), usize>,
}

impl Store {
    /// Opens `dir`; a missing directory or transcript file is an empty store.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self, StoreError> {
        let dir = dir.as_ref().to_path_buf();
        let path = dir.join(TRANSCRIPTS_FILE);
        let mut store = Self {
            dir,
            transcripts: Vec::new(),
            index: HashMap::new(),
        };
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(store),
            Err(source) => {
                return Err(StoreError::Io {
                    path: path.display().to_string(),
                    source,
                })
            }
        };
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let t: Transcript = serde_json::from_str(line).map_err(|e| StoreError::Corrupt {
                path: path.display().to_string(),
                line: i + 1,
                message: e.to_string(),
            })?;
            store.remember(t);
        }
        Ok(store)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn transcripts(&self) -> &[Transcript] {
        &self.transcripts
    }

    /// Latest stored transcript for the pair, marked as replayed.
    pub fn lookup(&self, model_id: &str, prompt: &str) -> Option<Transcript> {
        let &i = self.index.get(&(model_id.to_owned(), prompt.to_owned()))?;
        Some(Transcript {
            source: Source::Replay,
            ..self.transcripts[i].clone()
        })
    }

    /// Distinct model ids, sorted.
    pub fn model_ids(&self) -> Vec<String> {
        let ids: BTreeSet<&str> = self
            .transcripts
            .iter()
            .map(|t| t.model_id.as_str())
            .collect();
        ids.into_iter().map(str::to_owned).collect()
    }

    /// Appends to the JSONL file and the in-memory index.
    pub fn append(&mut self, transcript: Transcript) -> Result<(), StoreError> {
        let path = self.dir.join(TRANSCRIPTS_FILE);
        let io = |source| StoreError::Io {
            path: path.display().to_string(),
            source,
        };
        fs::create_dir_all(&self.dir).map_err(io)?;
        let mut line = serde_json::to_string(&transcript).expect("transcripts serialize");
        line.push('\n');
        OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .and_then(|mut f| f.write_all(line.as_bytes()))
            .map_err(io)?;
        self.remember(transcript);
        Ok(())
    }

    pub fn manifest_path(&self) -> PathBuf {
        self.dir.join(MANIFEST_FILE)
    }

    /// Hex SHA-256 of the manifest file, if there is one.
    pub fn manifest_digest(&self) -> Option<String> {
        let bytes = fs::read(self.manifest_path()).ok()?;
        Some(hex::encode(Sha256::digest(bytes)))
    }

    fn remember(&mut self, t: Transcript) {
        self.index.insert(
            (t.model_id.clone(), t.prompt.clone()),
            self.transcripts.len(),
        );
        self.transcripts.push(t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::{TimeZone, Utc};

    fn transcript(model: &str, prompt: &str, text: &str) -> Transcript {
        Transcript {
            model_id: model.into(),
            prompt: prompt.into(),
            response_text: text.into(),
            fetched_at: Utc.with_ymd_and_hms(2024, 5, 1, 12, 0, 0).unwrap(),
            source: Source::Live,
        }
    }

    #[test]
    fn append_and_reopen() {
        let dir = tempfile::tempdir().unwrap();
        let mut store = Store::open(dir.path().join("s")).unwrap();
        assert!(store.transcripts().is_empty());
        store.append(transcript("b", "p", "old")).unwrap();
        store
            .append(transcript("a", "p", "x \"quoted\"\n\ttab é"))
            .unwrap();
        store.append(transcript("b", "p", "new")).unwrap();

        let reopened = Store::open(dir.path().join("s")).unwrap();
        assert_eq!(reopened.transcripts(), store.transcripts());
        assert_eq!(reopened.model_ids(), vec!["a", "b"]);
        let hit = reopened.lookup("b", "p").unwrap();
        assert_eq!(hit.response_text, "new");
        assert_eq!(hit.source, Source::Replay);
        assert_eq!(
            reopened.lookup("a", "p").unwrap().response_text,
            "x \"quoted\"\n\ttab é"
        );
        assert!(reopened.lookup("a", "q").is_none());
    }

    #[test]
    fn field_names_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let mut store = Store::open(dir.path()).unwrap();
        store.append(transcript("m", "p", "r")).unwrap();
        let line = fs::read_to_string(dir.path().join(TRANSCRIPTS_FILE)).unwrap();
        let value: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
        let mut keys: Vec<&str> = value
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        keys.sort();
        assert_eq!(
            keys,
            [
                "fetched_at",
                "model_id",
                "prompt",
                "response_text",
                "source"
            ]
        );
        assert_eq!(value["source"], "live");
    }

    #[test]
    fn corrupt_line_is_located() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join(TRANSCRIPTS_FILE), "\n{not json}\n").unwrap();
        match Store::open(dir.path()) {
            Err(StoreError::Corrupt { line, .. }) => assert_eq!(line, 2),
            other => panic!("{:?}", other.err()),
        }
    }
}
