use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use hallugraph_core::{default_alignment, edgelist, graph_diff, DiffReport};
use serde::Serialize;

use super::{file_safe, CliError, Context, ModelOutput};

#[derive(Debug, Clone, Serialize)]
pub struct DiffSummary {
    pub model_id: String,
    pub reference: String,
    pub manifest_sha256: Option<String>,
    pub intersection: usize,
    pub added: usize,
    pub missing: usize,
    /// Output labels renamed before comparison; labels not listed are unchanged.
    pub alignment: BTreeMap<String, String>,
    #[serde(skip)]
    pub dir: PathBuf,
}

/// Writes `intersection.edges`, `added.edges`, `missing.edges`, `diff.dot`
/// and `diff.json` into `diff_<model>_<reference>/`.
pub fn cmd_diff(ctx: &Context, model: &str, reference: &str) -> Result<DiffSummary, CliError> {
    let truth = ctx.reference(reference)?;
    let out = match ctx.output(model, reference)? {
        ModelOutput::Graph { graph, .. } => graph,
        other => {
            return Err(anyhow::anyhow!(
                "{model}: {}",
                other.reason(reference).expect("not a graph")
            )
            .into())
        }
    };
    let alignment = default_alignment(&out, truth);
    let report = graph_diff(&out, truth, &alignment).map_err(anyhow::Error::from)?;

    let dir_name = format!("diff_{}_{}", file_safe(model), file_safe(reference));
    let pairs = |edges: &[(String, String)]| {
        edgelist::write_pairs(edges.iter().map(|(a, b)| (a.as_str(), b.as_str())))
            .map_err(anyhow::Error::from)
    };
    ctx.write(
        &format!("{dir_name}/intersection.edges"),
        pairs(&report.intersection)?,
    )?;
    ctx.write(&format!("{dir_name}/added.edges"), pairs(&report.added)?)?;
    ctx.write(
        &format!("{dir_name}/missing.edges"),
        pairs(&report.missing)?,
    )?;
    ctx.write(&format!("{dir_name}/diff.dot"), diff_dot(&report))?;

    let summary = DiffSummary {
        model_id: model.to_owned(),
        reference: reference.to_owned(),
        manifest_sha256: ctx.store.manifest_digest(),
        intersection: report.intersection.len(),
        added: report.added.len(),
        missing: report.missing.len(),
        alignment: report.alignment.entries().clone(),
        dir: ctx.out.join(&dir_name),
    };
    ctx.write_json(&format!("{dir_name}/diff.json"), &summary)?;
    Ok(summary)
}

/// Undirected DOT graph: shared edges plain, added edges red and bold,
/// missing edges grey and dashed.
pub fn diff_dot(report: &DiffReport) -> String {
    let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut dot = String::from("graph diff {\n  node [shape=circle];\n");
    let groups: [(&[(String, String)], &str); 3] = [
        (&report.intersection, ""),
        (&report.added, " [color=red, penwidth=2.0]"),
        (&report.missing, " [color=gray, style=dashed]"),
    ];
    for (edges, style) in groups {
        for (a, b) in edges {
            let _ = writeln!(dot, "  {} -- {}{style};", quote(a), quote(b));
        }
    }
    dot.push_str("}\n");
    dot
}
