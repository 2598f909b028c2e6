use std::path::Path;

use hallugraph_core::{spearman_rank_correlation, Error};
use serde::Serialize;

use super::gad::RANKING_FILE;
use super::{CliError, Context};

#[derive(Debug, Clone, Serialize)]
pub struct RankComparison {
    pub spearman_rho: f64,
    pub computed: Vec<String>,
    pub reference: Vec<String>,
}

/// Reads model ids in rank order from a CSV with a `model_id` column. When a
/// numeric `rank` column is present rows are ordered by it, otherwise file
/// order is the ranking.
pub fn read_ranking(path: &Path) -> Result<Vec<String>, CliError> {
    let fail = |m: String| CliError::usage(format!("{}: {m}", path.display()));
    let mut reader = csv::Reader::from_path(path).map_err(|e| fail(e.to_string()))?;
    let headers = reader.headers().map_err(|e| fail(e.to_string()))?.clone();
    let id_col = headers
        .iter()
        .position(|h| h.trim() == "model_id")
        .ok_or_else(|| fail("no model_id column".into()))?;
    let rank_col = headers.iter().position(|h| h.trim() == "rank");
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| fail(e.to_string()))?;
        let id = record.get(id_col).unwrap_or_default().trim().to_owned();
        let rank = match rank_col {
            Some(c) => {
                let cell = record.get(c).unwrap_or_default().trim();
                cell.parse::<f64>()
                    .map_err(|_| fail(format!("row {}: rank {cell:?} is not a number", i + 2)))?
            }
            None => i as f64,
        };
        rows.push((rank, id));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(rows.into_iter().map(|(_, id)| id).collect())
}

/// Spearman's ρ between the computed ranking (default `<out>/ranking.csv`)
/// and `reference`.
pub fn cmd_rank_compare(
    ctx: &Context,
    reference: &Path,
    ranking: Option<&Path>,
) -> Result<RankComparison, CliError> {
    let default_path = ctx.out.join(RANKING_FILE);
    let computed = read_ranking(ranking.unwrap_or(&default_path))?;
    let reference = read_ranking(reference)?;
    let rho = spearman_rank_correlation(&computed, &reference).map_err(|e| match e {
        Error::RankMismatch {
            only_left,
            only_right,
        } => CliError::usage(format!(
            "model ids differ: only in computed ranking {only_left:?}, only in reference {only_right:?}"
        )),
        other => CliError::usage(other.to_string()),
    })?;
    let comparison = RankComparison {
        spearman_rho: rho,
        computed,
        reference,
    };
    ctx.write_json("rank_compare.json", &comparison)?;
    Ok(comparison)
}
