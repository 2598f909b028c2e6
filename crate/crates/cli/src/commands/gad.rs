use std::collections::BTreeMap;

use hallugraph_core::{gad, Graph};
use serde::{Deserialize, Serialize};

use super::stats::Skipped;
use super::{csv_string, two_decimals, CliError, Completion, Context, ModelOutput};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerGraph {
    pub distance: u64,
    pub exact: bool,
}

/// One model's Graph Atlas Distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelScore {
    pub model_id: String,
    pub resolution: usize,
    pub per_graph: BTreeMap<u32, PerGraph>,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GadReport {
    pub resolution: usize,
    pub atlas_indices: Vec<u32>,
    /// `std` below is the population standard deviation.
    pub std_convention: &'static str,
    pub manifest_sha256: Option<String>,
    /// Ascending by mean, ties by model id.
    pub scores: Vec<ModelScore>,
    pub excluded: Vec<Skipped>,
}

pub const RANKING_FILE: &str = "ranking.csv";

/// Scores every model against the first `resolution` connected atlas graphs
/// and writes `gad.json` and `ranking.csv`.
pub fn cmd_gad(
    ctx: &Context,
    resolution: usize,
    models: &[String],
) -> Result<(GadReport, Completion), CliError> {
    let indices = ctx
        .catalog
        .atlas_selection(resolution)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let keys: Vec<String> = indices.iter().map(|i| format!("atlas:{i}")).collect();
    let truths: BTreeMap<u32, Graph> = indices
        .iter()
        .map(|&i| {
            (
                i,
                ctx.catalog.atlas(i).expect("selected from catalog").clone(),
            )
        })
        .collect();

    let mut scores = Vec::new();
    let mut excluded = Vec::new();
    'models: for model in ctx.models_for(models, &keys)? {
        let mut outputs = BTreeMap::new();
        for (&index, key) in indices.iter().zip(&keys) {
            match ctx.output(&model, key)? {
                ModelOutput::Graph { graph, .. } => {
                    outputs.insert(index, graph);
                }
                other => {
                    excluded.push(Skipped {
                        reason: other.reason(key).expect("not a graph"),
                        model_id: model,
                    });
                    continue 'models;
                }
            }
        }
        let score = gad(&outputs, &truths, ctx.config.ged.budget).map_err(anyhow::Error::from)?;
        if !score.all_exact() {
            log::warn!("{model}: edit distance budget exhausted; some distances are upper bounds");
        }
        scores.push(ModelScore {
            model_id: model,
            resolution: score.resolution,
            per_graph: score
                .per_graph
                .iter()
                .map(|(&i, r)| {
                    (
                        i,
                        PerGraph {
                            distance: r.distance,
                            exact: r.exact,
                        },
                    )
                })
                .collect(),
            mean: score.mean,
            std: score.std,
        });
    }
    scores.sort_by(|a, b| {
        a.mean
            .total_cmp(&b.mean)
            .then_with(|| a.model_id.cmp(&b.model_id))
    });

    let report = GadReport {
        resolution,
        atlas_indices: indices,
        std_convention: "population",
        manifest_sha256: ctx.store.manifest_digest(),
        scores,
        excluded,
    };
    ctx.write_json("gad.json", &report)?;
    ctx.write(RANKING_FILE, ranking_csv(&report.scores)?)?;
    let completion = Completion::from_failures(report.excluded.len());
    Ok((report, completion))
}

pub fn ranking_csv(scores: &[ModelScore]) -> anyhow::Result<String> {
    let mut rows = vec![["rank", "model_id", "gad_mean", "gad_std", "exact"]
        .map(str::to_owned)
        .to_vec()];
    for (i, s) in scores.iter().enumerate() {
        rows.push(vec![
            (i + 1).to_string(),
            s.model_id.clone(),
            two_decimals(s.mean),
            two_decimals(s.std),
            s.per_graph.values().all(|p| p.exact).to_string(),
        ]);
    }
    csv_string(&rows)
}
