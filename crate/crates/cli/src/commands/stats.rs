use hallugraph_core::parser::ParseWarning;
use hallugraph_core::MetricsRecord;
use serde::Serialize;

use super::{
    csv_string, file_safe, two_decimals, two_decimals_or_na, CliError, Completion, Context,
    ModelOutput,
};

#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub reference: String,
    pub seed: u64,
    pub manifest_sha256: Option<String>,
    /// Reference row first, then models by ascending degree-sequence distance.
    pub rows: Vec<StatsRow>,
    pub skipped: Vec<Skipped>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatsRow {
    pub model_id: String,
    #[serde(flatten)]
    pub metrics: MetricsRecord,
    pub warnings: Vec<ParseWarning>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Skipped {
    pub model_id: String,
    pub reason: String,
}

pub const STATS_HEADER: [&str; 7] = [
    "model_id",
    "nodes",
    "edges",
    "density",
    "assortativity",
    "modularity",
    "degseq_distance",
];

/// Table of statistics for every model's answer for `reference`.
pub fn cmd_stats(
    ctx: &Context,
    reference: &str,
    models: &[String],
) -> Result<(StatsReport, Completion), CliError> {
    let truth = ctx.reference(reference)?;
    let keys = [reference.to_owned()];
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for model in ctx.models_for(models, &keys)? {
        match ctx.output(&model, reference)? {
            ModelOutput::Graph { graph, parse, .. } => rows.push(StatsRow {
                metrics: MetricsRecord::compute(&graph, truth, ctx.seed),
                model_id: model,
                warnings: parse.warnings,
            }),
            other => skipped.push(Skipped {
                reason: other.reason(reference).expect("not a graph"),
                model_id: model,
            }),
        }
    }
    rows.sort_by(|a, b| {
        a.metrics
            .degseq_distance
            .total_cmp(&b.metrics.degseq_distance)
            .then_with(|| a.model_id.cmp(&b.model_id))
    });
    if !rows.is_empty() {
        rows.insert(
            0,
            StatsRow {
                model_id: format!("reference:{reference}"),
                metrics: MetricsRecord::compute(truth, truth, ctx.seed),
                warnings: Vec::new(),
            },
        );
    }

    let report = StatsReport {
        reference: reference.to_owned(),
        seed: ctx.seed,
        manifest_sha256: ctx.store.manifest_digest(),
        rows,
        skipped,
    };
    let stem = format!("stats_{}", file_safe(reference));
    ctx.write(&format!("{stem}.csv"), stats_csv(&report)?)?;
    ctx.write_json(&format!("{stem}.json"), &report)?;
    let mut skipped_rows = vec![vec!["model_id".to_owned(), "reason".to_owned()]];
    skipped_rows.extend(
        report
            .skipped
            .iter()
            .map(|s| vec![s.model_id.clone(), s.reason.clone()]),
    );
    ctx.write(&format!("{stem}_skipped.csv"), csv_string(&skipped_rows)?)?;
    let completion = Completion::from_failures(report.skipped.len());
    Ok((report, completion))
}

pub fn stats_csv(report: &StatsReport) -> anyhow::Result<String> {
    let mut rows = vec![STATS_HEADER.map(str::to_owned).to_vec()];
    for row in &report.rows {
        let m = &row.metrics;
        rows.push(vec![
            row.model_id.clone(),
            m.node_count.to_string(),
            m.edge_count.to_string(),
            two_decimals(m.density),
            two_decimals_or_na(m.assortativity),
            two_decimals_or_na(m.modularity),
            two_decimals(m.degseq_distance),
        ]);
    }
    csv_string(&rows)
}
