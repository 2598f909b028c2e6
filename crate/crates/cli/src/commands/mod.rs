//! Subcommand implementations. Every command except `fetch` only reads the
//! transcript store and writes files under the output directory.

mod diff;
mod embed;
mod fetch;
mod gad;
mod rank;
mod spectral;
mod stats;

use std::fs;
use std::path::{Path, PathBuf};

use hallugraph_core::{
    Catalog, Classification, CleanupReport, Graph, ParseResult, ResponseParser, Transcript,
};
use serde::Serialize;
use thiserror::Error;

use crate::client::render_prompt;
use crate::config::Config;
use crate::store::Store;

pub use diff::{cmd_diff, diff_dot, DiffSummary};
pub use embed::{cmd_embed, EmbedSummary};
pub use fetch::{cmd_fetch, FetchOptions};
pub use gad::{cmd_gad, ranking_csv, GadReport, ModelScore, PerGraph, RANKING_FILE};
pub use rank::{cmd_rank_compare, read_ranking, RankComparison};
pub use spectral::{cmd_spectral, SpectralRow};
pub use stats::{cmd_stats, stats_csv, Skipped, StatsReport, StatsRow};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments, configuration or reference data. Exit code 2.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Other(_) => 1,
        }
    }
}

/// Whether every model made it through. Partial runs exit with 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completion {
    Complete,
    Partial,
}

impl Completion {
    pub fn from_failures(failures: usize) -> Self {
        if failures == 0 {
            Completion::Complete
        } else {
            Completion::Partial
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Completion::Complete => 0,
            Completion::Partial => 1,
        }
    }
}

pub struct Context {
    pub store: Store,
    pub catalog: Catalog,
    pub config: Config,
    pub parser: ResponseParser,
    pub seed: u64,
    pub out: PathBuf,
}

/// A model's parsed answer for one target.
pub enum ModelOutput {
    Graph {
        graph: Graph,
        parse: ParseResult,
        cleanup: CleanupReport,
    },
    Unusable(Classification),
    Missing,
}

impl ModelOutput {
    pub fn reason(&self, target: &str) -> Option<String> {
        match self {
            ModelOutput::Graph { .. } => None,
            ModelOutput::Unusable(c) => Some(format!("{c} response for {target}")),
            ModelOutput::Missing => Some(format!("no transcript for {target}")),
        }
    }
}

impl Context {
    pub fn new(store: Store, config: Config, seed: u64, out: impl Into<PathBuf>) -> Self {
        Self {
            store,
            catalog: Catalog::bundled(),
            parser: ResponseParser::new(config.parser.clone()),
            config,
            seed,
            out: out.into(),
        }
    }

    pub fn reference(&self, key: &str) -> Result<&Graph, CliError> {
        self.catalog
            .load(key)
            .map_err(|e| CliError::usage(e.to_string()))
    }

    pub fn prompt(&self, key: &str) -> Result<String, CliError> {
        render_prompt(&self.catalog, key).map_err(|e| CliError::usage(e.to_string()))
    }

    pub fn transcript(&self, model_id: &str, key: &str) -> Result<Option<Transcript>, CliError> {
        Ok(self.store.lookup(model_id, &self.prompt(key)?))
    }

    pub fn output(&self, model_id: &str, key: &str) -> Result<ModelOutput, CliError> {
        let Some(t) = self.transcript(model_id, key)? else {
            return Ok(ModelOutput::Missing);
        };
        let parse = self.parser.extract_edge_list(&t.response_text);
        if parse.classification != Classification::EdgeList {
            return Ok(ModelOutput::Unusable(parse.classification));
        }
        let (graph, _, cleanup) = Graph::from_edge_list(&parse.edges);
        Ok(ModelOutput::Graph {
            graph,
            parse,
            cleanup,
        })
    }

    /// `requested` if non-empty, otherwise every stored model with a
    /// transcript for at least one of `keys`.
    pub fn models_for(
        &self,
        requested: &[String],
        keys: &[String],
    ) -> Result<Vec<String>, CliError> {
        if !requested.is_empty() {
            return Ok(requested.to_vec());
        }
        let prompts = keys
            .iter()
            .map(|k| self.prompt(k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self
            .store
            .model_ids()
            .into_iter()
            .filter(|m| prompts.iter().any(|p| self.store.lookup(m, p).is_some()))
            .collect())
    }

    pub fn write(&self, name: &str, contents: impl AsRef<[u8]>) -> anyhow::Result<PathBuf> {
        write_file(&self.out.join(name), contents)
    }

    pub fn write_json(&self, name: &str, value: &impl Serialize) -> anyhow::Result<PathBuf> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(name, text)
    }
}

pub(crate) fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> anyhow::Result<PathBuf> {
    use anyhow::Context as _;
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path.to_path_buf())
}

/// Replaces characters that are awkward in file names.
pub fn file_safe(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "-_.".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Two-decimal rendering for human tables, without negative zero.
pub fn two_decimals(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_owned()
    } else {
        s
    }
}

pub fn two_decimals_or_na(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_owned(), two_decimals)
}

pub(crate) fn csv_string(rows: &[Vec<String>]) -> anyhow::Result<String> {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    for row in rows {
        writer.write_record(row)?;
    }
    Ok(String::from_utf8(
        writer.into_inner().map_err(|e| e.into_error())?,
    )?)
}
