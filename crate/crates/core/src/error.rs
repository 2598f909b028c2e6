use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown ground-truth graph `{name}` (available: {})", available.join(", "))]
    UnknownGraph {
        name: String,
        available: Vec<String>,
    },

    #[error(
        "atlas resolution {requested} out of range (1..={available} bundled connected entries)"
    )]
    AtlasResolution { requested: usize, available: usize },

    #[error("graph has {nodes} nodes, exhaustive check supports at most {limit}")]
    TooLarge { nodes: usize, limit: usize },

    #[error("node id {id} out of range for graph with {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("operation requires a non-empty graph")]
    EmptyGraph,

    #[error("key sets differ: only in outputs {only_left:?}, only in truths {only_right:?}")]
    KeyMismatch {
        only_left: Vec<u32>,
        only_right: Vec<u32>,
    },

    #[error("ranking id sets differ: only in first {only_left:?}, only in second {only_right:?}")]
    RankMismatch {
        only_left: Vec<String>,
        only_right: Vec<String>,
    },

    #[error("ranking must contain at least two distinct ids")]
    RankTooShort,

    #[error("duplicate id `{0}` in ranking")]
    DuplicateRankId(String),

    #[error("timescale grids differ")]
    GridMismatch,

    #[error("alignment is not injective: `{first}` and `{second}` both map to `{target}`")]
    NonInjectiveAlignment {
        first: String,
        second: String,
        target: String,
    },

    #[error("edge list line {line}: {message}")]
    EdgeListSyntax { line: usize, message: String },

    #[error("label `{0}` cannot be written to the edge-list format")]
    UnwritableLabel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
