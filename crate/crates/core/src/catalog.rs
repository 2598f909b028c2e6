//! Bundled ground-truth graphs and atlas selection.
//!
//! The edge lists live under `data/ground_truth/` at the repository root and
//! are compiled into the crate, so the catalog works without the source tree.
//! [`Catalog::from_dir`] reads the same layout from disk instead.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::edgelist;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Prefix of atlas catalog keys, as in `atlas:7`.
pub const ATLAS_PREFIX: &str = "atlas:";

const NAMED: &[(&str, &str, &str)] = &[
    (
        "karate",
        "Zachary's karate club",
        include_str!("../../../data/ground_truth/karate.edges"),
    ),
    (
        "lesmis",
        "Les Misérables",
        include_str!("../../../data/ground_truth/lesmis.edges"),
    ),
];

const ATLAS: &[(u32, &str)] = &[
    (3, include_str!("../../../data/ground_truth/atlas/3.edges")),
    (6, include_str!("../../../data/ground_truth/atlas/6.edges")),
    (7, include_str!("../../../data/ground_truth/atlas/7.edges")),
    (
        13,
        include_str!("../../../data/ground_truth/atlas/13.edges"),
    ),
    (
        15,
        include_str!("../../../data/ground_truth/atlas/15.edges"),
    ),
    (
        50,
        include_str!("../../../data/ground_truth/atlas/50.edges"),
    ),
];

/// Raw text of the bundled karate club faction assignment (`<node> <faction>`).
pub const KARATE_FACTIONS: &str = include_str!("../../../data/ground_truth/karate.factions");

/// A parsed catalog key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Named(String),
    Atlas(u32),
}

impl FromStr for Target {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.strip_prefix(ATLAS_PREFIX).map(str::parse::<u32>) {
            Some(Ok(index)) => Target::Atlas(index),
            _ => Target::Named(s.to_owned()),
        })
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Named(name) => f.write_str(name),
            Target::Atlas(index) => write!(f, "{ATLAS_PREFIX}{index}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NamedEntry {
    /// Name used inside prompts, e.g. `Zachary's karate club`.
    pub prompt_name: String,
    pub graph: Graph,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    named: BTreeMap<String, NamedEntry>,
    atlas: BTreeMap<u32, Graph>,
}

impl Catalog {
    /// The catalog compiled into this crate.
    pub fn bundled() -> Self {
        let named = NAMED
            .iter()
            .map(|&(key, prompt_name, text)| {
                let graph = edgelist::parse_graph(text).expect("bundled edge list parses");
                (
                    key.to_owned(),
                    NamedEntry {
                        prompt_name: prompt_name.to_owned(),
                        graph,
                    },
                )
            })
            .collect();
        let atlas = ATLAS
            .iter()
            .map(|&(index, text)| {
                (
                    index,
                    edgelist::parse_graph(text).expect("bundled atlas parses"),
                )
            })
            .collect();
        Self { named, atlas }
    }

    /// Loads `<dir>/<name>.edges` for the known named graphs and every
    /// `<dir>/atlas/<index>.edges`.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let mut named = BTreeMap::new();
        for &(key, prompt_name, _) in NAMED {
            let path = dir.join(format!("{key}.edges"));
            if path.exists() {
                named.insert(
                    key.to_owned(),
                    NamedEntry {
                        prompt_name: prompt_name.to_owned(),
                        graph: edgelist::read_graph(&path)?,
                    },
                );
            }
        }
        let mut atlas = BTreeMap::new();
        let atlas_dir = dir.join("atlas");
        if atlas_dir.is_dir() {
            for entry in std::fs::read_dir(&atlas_dir)? {
                let path = entry?.path();
                if path.extension().and_then(|e| e.to_str()) != Some("edges") {
                    continue;
                }
                let Some(index) = path
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .and_then(|s| s.parse::<u32>().ok())
                else {
                    continue;
                };
                atlas.insert(index, edgelist::read_graph(&path)?);
            }
        }
        Ok(Self { named, atlas })
    }

    /// All keys, named graphs first, then atlas entries by index.
    pub fn keys(&self) -> Vec<String> {
        self.named
            .keys()
            .cloned()
            .chain(self.atlas.keys().map(|i| Target::Atlas(*i).to_string()))
            .collect()
    }

    pub fn load(&self, key: &str) -> Result<&Graph> {
        match key.parse::<Target>().expect("infallible") {
            Target::Named(name) => self.named.get(&name).map(|e| &e.graph),
            Target::Atlas(index) => self.atlas.get(&index),
        }
        .ok_or_else(|| self.unknown(key))
    }

    pub fn named(&self, key: &str) -> Option<&NamedEntry> {
        self.named.get(key)
    }

    pub fn atlas(&self, index: u32) -> Option<&Graph> {
        self.atlas.get(&index)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.load(key).is_ok()
    }

    pub(crate) fn unknown(&self, key: &str) -> Error {
        Error::UnknownGraph {
            name: key.to_owned(),
            available: self.keys(),
        }
    }

    /// Connected atlas entries with at least two nodes, in atlas order.
    pub fn connected_atlas_indices(&self) -> Vec<u32> {
        self.atlas
            .iter()
            .filter(|(_, g)| g.node_count() >= 2 && g.is_connected())
            .map(|(&i, _)| i)
            .collect()
    }

    /// The first `resolution` connected atlas graphs used to score a model.
    pub fn atlas_selection(&self, resolution: usize) -> Result<Vec<u32>> {
        let connected = self.connected_atlas_indices();
        if resolution == 0 || resolution > connected.len() {
            return Err(Error::AtlasResolution {
                requested: resolution,
                available: connected.len(),
            });
        }
        Ok(connected[..resolution].to_vec())
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Self::bundled()
    }
}

/// Shorthand for `Catalog::bundled().load(name)` returning an owned graph.
pub fn load_ground_truth(name: &str) -> Result<Graph> {
    Catalog::bundled().load(name).cloned()
}
