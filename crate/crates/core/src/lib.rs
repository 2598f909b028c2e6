//! Algorithms for comparing graphs returned by language models against
//! well-known ground-truth graphs.
//!
//! The crate covers the whole analysis path: extracting edge lists from raw
//! responses ([`parser`]), normalizing them into simple graphs ([`graph`]),
//! per-graph statistics ([`metrics`]), graph-to-graph distances including the
//! exact edit distance and its atlas aggregate ([`distances`]), and heat-trace
//! signatures ([`signatures`]). Ground-truth data ships with the crate
//! ([`catalog`]).

pub mod catalog;
pub mod distances;
pub mod edgelist;
mod error;
pub mod graph;
pub mod metrics;
pub mod parser;
pub mod signatures;
pub mod spectrum;

pub use catalog::{load_ground_truth, Catalog, Target};
pub use distances::{
    default_alignment, gad, graph_diff, graph_edit_distance, spearman_rank_correlation,
    spectral_distance, Alignment, DiffReport, GadScore, GedResult,
};
pub use error::{Error, Result};
pub use graph::{CleanupReport, Graph, LabeledEdgeList, Relabeling};
pub use metrics::{MetricsRecord, Partition};
pub use parser::{
    classify_response, extract_edge_list, Classification, ParseResult, ParserConfig,
    ResponseParser, Source, Transcript, WarningKind,
};
pub use signatures::{heat_trace_signature, signature_distance, HeatSignature, Normalization};
