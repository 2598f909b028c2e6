use hallugraph_core::signatures::{default_timescales, heat_trace_signature_with};
use hallugraph_core::{signature_distance, HeatSignature, Normalization};
use serde::Serialize;

use super::stats::Skipped;
use super::{csv_string, CliError, Completion, Context, ModelOutput};

#[derive(Debug, Clone, Serialize)]
pub struct EmbedSummary {
    pub normalization: Normalization,
    pub manifest_sha256: Option<String>,
    /// Row labels of both matrices, in order.
    pub graphs: Vec<String>,
    pub skipped: Vec<Skipped>,
}

/// Heat-trace signatures for the ground truths in `targets` and every model
/// answer to them. Writes `signatures.csv`, `signature_distances.csv` and
/// `embed.json`.
///
/// Ground truths are labelled by catalog key. Model rows are labelled by
/// model id, or `model@key` when more than one target is embedded.
pub fn cmd_embed(
    ctx: &Context,
    targets: &[String],
    models: &[String],
) -> Result<(EmbedSummary, Completion), CliError> {
    let targets: Vec<String> = if targets.is_empty() {
        let keys = ctx.catalog.keys();
        let mut present = Vec::new();
        for key in keys {
            if !ctx.models_for(&[], std::slice::from_ref(&key))?.is_empty() {
                present.push(key);
            }
        }
        present
    } else {
        targets.to_vec()
    };
    let normalization = ctx.config.signatures.normalization;
    let grid = default_timescales();
    let signature = |g: &hallugraph_core::Graph| {
        heat_trace_signature_with(g, &grid, normalization).map_err(anyhow::Error::from)
    };

    let mut labels = Vec::new();
    let mut signatures: Vec<HeatSignature> = Vec::new();
    let mut skipped = Vec::new();
    for key in &targets {
        labels.push(key.clone());
        signatures.push(signature(ctx.reference(key)?)?);
        for model in ctx.models_for(models, std::slice::from_ref(key))? {
            match ctx.output(&model, key)? {
                ModelOutput::Graph { graph, .. } => {
                    labels.push(if targets.len() == 1 {
                        model
                    } else {
                        format!("{model}@{key}")
                    });
                    signatures.push(signature(&graph)?);
                }
                other => skipped.push(Skipped {
                    reason: other.reason(key).expect("not a graph"),
                    model_id: model,
                }),
            }
        }
    }

    let mut header = vec!["graph".to_owned()];
    header.extend(grid.iter().map(|t| t.to_string()));
    let mut table = vec![header];
    for (label, sig) in labels.iter().zip(&signatures) {
        let mut row = vec![label.clone()];
        row.extend(sig.values.iter().map(|v| v.to_string()));
        table.push(row);
    }
    ctx.write("signatures.csv", csv_string(&table)?)?;

    let mut header = vec!["graph".to_owned()];
    header.extend(labels.iter().cloned());
    let mut table = vec![header];
    for (label, a) in labels.iter().zip(&signatures) {
        let mut row = vec![label.clone()];
        for b in &signatures {
            row.push(
                signature_distance(a, b)
                    .map_err(anyhow::Error::from)?
                    .to_string(),
            );
        }
        table.push(row);
    }
    ctx.write("signature_distances.csv", csv_string(&table)?)?;

    let summary = EmbedSummary {
        normalization,
        manifest_sha256: ctx.store.manifest_digest(),
        graphs: labels,
        skipped,
    };
    ctx.write_json("embed.json", &summary)?;
    let completion = Completion::from_failures(summary.skipped.len());
    Ok((summary, completion))
}
