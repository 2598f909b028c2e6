use hallugraph_core::spectral_distance;
use serde::Serialize;

use super::stats::Skipped;
use super::{csv_string, file_safe, two_decimals, CliError, Completion, Context, ModelOutput};

#[derive(Debug, Clone, Serialize)]
pub struct SpectralRow {
    pub model_id: String,
    pub spectral_distance: f64,
}

#[derive(Debug, Clone, Serialize)]
struct SpectralReport<'a> {
    reference: &'a str,
    matrix: &'static str,
    eigenvalue_order: &'static str,
    padding: &'static str,
    manifest_sha256: Option<String>,
    rows: &'a [SpectralRow],
    skipped: &'a [Skipped],
}

/// Adjacency-spectrum distance of every model's answer to `reference`,
/// written as `spectral_<reference>.csv` (reference row first, then
/// ascending) and a full-precision JSON twin.
pub fn cmd_spectral(
    ctx: &Context,
    reference: &str,
    models: &[String],
) -> Result<(Vec<SpectralRow>, Completion), CliError> {
    let truth = ctx.reference(reference)?;
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for model in ctx.models_for(models, &[reference.to_owned()])? {
        match ctx.output(&model, reference)? {
            ModelOutput::Graph { graph, .. } => rows.push(SpectralRow {
                spectral_distance: spectral_distance(&graph, truth),
                model_id: model,
            }),
            other => skipped.push(Skipped {
                reason: other.reason(reference).expect("not a graph"),
                model_id: model,
            }),
        }
    }
    rows.sort_by(|a, b| {
        a.spectral_distance
            .total_cmp(&b.spectral_distance)
            .then_with(|| a.model_id.cmp(&b.model_id))
    });
    rows.insert(
        0,
        SpectralRow {
            model_id: format!("reference:{reference}"),
            spectral_distance: 0.0,
        },
    );

    let mut table = vec![vec!["model_id".to_owned(), "spectral_distance".to_owned()]];
    table.extend(
        rows.iter()
            .map(|r| vec![r.model_id.clone(), two_decimals(r.spectral_distance)]),
    );
    let stem = format!("spectral_{}", file_safe(reference));
    ctx.write(&format!("{stem}.csv"), csv_string(&table)?)?;
    ctx.write_json(
        &format!("{stem}.json"),
        &SpectralReport {
            reference,
            matrix: "adjacency",
            eigenvalue_order: "descending",
            padding: "trailing zeros",
            manifest_sha256: ctx.store.manifest_digest(),
            rows: &rows,
            skipped: &skipped,
        },
    )?;
    Ok((rows, Completion::from_failures(skipped.len())))
}
