mod support;

#[path = "../../core/tests/support/oracles.rs"]
mod oracles;

use std::fs;
use std::path::Path;

use hallugraph_cli::commands::{
    cmd_diff, cmd_embed, cmd_gad, cmd_rank_compare, cmd_spectral, cmd_stats, read_ranking,
    Completion, Context,
};
use hallugraph_cli::config::Config;
use hallugraph_cli::store::Store;
use hallugraph_core::{
    heat_trace_signature, load_ground_truth, signature_distance, spectral_distance, Catalog, Graph,
};
use support::*;

fn context(store: &Path, out: &Path) -> Context {
    Context::new(Store::open(store).unwrap(), Config::default(), 0, out)
}

fn karate_edges() -> Vec<(usize, usize)> {
    let kc = load_ground_truth("karate").unwrap();
    kc.edges()
        .iter()
        .map(|&(u, v)| (kc.label(u).parse().unwrap(), kc.label(v).parse().unwrap()))
        .collect()
}

fn lines(path: &Path) -> Vec<String> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(str::to_owned)
        .collect()
}

#[test]
fn stats_on_fixture_store() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = context(&copy_fixture_store(dir.path()), dir.path());
    let (report, completion) = cmd_stats(&ctx, "karate", &[]).unwrap();
    assert_eq!(completion, Completion::Partial);
    let csv = lines(&dir.path().join("stats_karate.csv"));
    assert_eq!(
        csv[0],
        "model_id,nodes,edges,density,assortativity,modularity,degseq_distance"
    );
    assert!(
        csv[1].starts_with("reference:karate,34,78,0.14,-0.48,"),
        "{}",
        csv[1]
    );
    assert!(csv[1].ends_with(",0.00"));
    // Identical to the reference row apart from the name.
    assert_eq!(
        csv[2].split_once(',').unwrap().1,
        csv[1].split_once(',').unwrap().1
    );
    assert!(csv[2].starts_with("exact-model,"));
    assert!(csv[4].starts_with("plus-edges,34,80,"));
    assert!(csv[4].ends_with(",2.00"));
    assert_eq!(report.rows[3].metrics.degseq_distance, 2.0);
    let distances: Vec<f64> = report
        .rows
        .iter()
        .map(|r| r.metrics.degseq_distance)
        .collect();
    assert!(distances.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(report.skipped.len(), 1);
    assert_eq!(report.skipped[0].model_id, "refuser");
    assert_eq!(
        lines(&dir.path().join("stats_karate_skipped.csv")),
        ["model_id,reason", "refuser,refusal response for karate"]
    );
    // Full precision in the machine output.
    let json = fs::read_to_string(dir.path().join("stats_karate.json")).unwrap();
    assert!(json.contains(&format!("\"density\": {}", 78.0 / 561.0)));
}

#[test]
fn stats_with_no_models_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = context(&write_store(dir.path(), &[]), dir.path());
    let (report, completion) = cmd_stats(&ctx, "lesmis", &[]).unwrap();
    assert_eq!(completion, Completion::Complete);
    assert!(report.rows.is_empty());
    assert_eq!(lines(&dir.path().join("stats_lesmis.csv")).len(), 1);
}

#[test]
fn stats_rejects_unknown_reference() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = context(&write_store(dir.path(), &[]), dir.path());
    assert_eq!(cmd_stats(&ctx, "petersen", &[]).unwrap_err().exit_code(), 2);
}

#[test]
fn diff_files() {
    let dir = tempfile::tempdir().unwrap();
    let kc = karate_edges();
    let mut plus = kc.clone();
    plus.push((4, 33));
    let store = write_store(
        dir.path(),
        &[
            transcript("same", "karate", &python_edges(kc.iter().copied())),
            transcript("plus", "karate", &python_edges(plus)),
            transcript("minus", "karate", &python_edges(kc[1..].iter().copied())),
        ],
    );
    let ctx = context(&store, dir.path());

    let same = cmd_diff(&ctx, "same", "karate").unwrap();
    assert_eq!((same.intersection, same.added, same.missing), (78, 0, 0));
    assert_eq!(
        fs::read_to_string(same.dir.join("added.edges")).unwrap(),
        ""
    );
    assert_eq!(
        fs::read_to_string(same.dir.join("missing.edges")).unwrap(),
        ""
    );
    assert_eq!(lines(&same.dir.join("intersection.edges")).len(), 78);

    let plus = cmd_diff(&ctx, "plus", "karate").unwrap();
    assert_eq!(lines(&plus.dir.join("added.edges")), ["4 33"]);
    let dot = fs::read_to_string(plus.dir.join("diff.dot")).unwrap();
    assert!(dot.starts_with("graph diff {"));
    assert!(dot.contains("\"4\" -- \"33\" [color=red"));
    assert_eq!(dot.matches(" -- ").count(), 79);

    let minus = cmd_diff(&ctx, "minus", "karate").unwrap();
    assert_eq!(lines(&minus.dir.join("missing.edges")), ["0 1"]);
    assert_eq!(
        fs::read_to_string(minus.dir.join("added.edges")).unwrap(),
        ""
    );
    assert!(fs::read_to_string(minus.dir.join("diff.dot"))
        .unwrap()
        .contains("style=dashed"));
}

#[test]
fn diff_aligns_one_indexed_answers() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = context(&copy_fixture_store(dir.path()), dir.path());
    let s = cmd_diff(&ctx, "minus-edge", "karate").unwrap();
    assert_eq!((s.intersection, s.added, s.missing), (77, 0, 1));
    assert_eq!(s.alignment.get("34").map(String::as_str), Some("33"));
    assert!(cmd_diff(&ctx, "refuser", "karate").is_err());
}

#[test]
fn gad_scores_match_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = context(&copy_fixture_store(dir.path()), dir.path());
    let (report, completion) = cmd_gad(&ctx, 5, &[]).unwrap();
    assert_eq!(completion, Completion::Partial);
    assert_eq!(report.atlas_indices, [3, 6, 7, 13, 15]);
    assert_eq!(report.scores[0].model_id, "exact-model");
    assert_eq!((report.scores[0].mean, report.scores[0].std), (0.0, 0.0));

    // Each truth plus one edge; on the complete graphs #3 and #7 the edge
    // needs a new node.
    let catalog = Catalog::bundled();
    let plus = &report.scores[1];
    assert_eq!(plus.model_id, "plus-edges");
    let mut expected = Vec::new();
    for (&index, per) in &plus.per_graph {
        let truth = catalog.atlas(index).unwrap();
        let output = match ctx.output("plus-edges", &format!("atlas:{index}")).unwrap() {
            hallugraph_cli::commands::ModelOutput::Graph { graph, .. } => graph,
            _ => unreachable!(),
        };
        let d = oracles::exhaustive_ged(&output, truth);
        assert_eq!(per.distance, d);
        assert!(per.exact);
        expected.push(d as f64);
    }
    assert_eq!(expected, [2.0, 1.0, 2.0, 1.0, 1.0]);
    let mean = expected.iter().sum::<f64>() / 5.0;
    let std = (expected.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / 5.0).sqrt();
    assert!((plus.mean - mean).abs() < 1e-12 && (plus.std - std).abs() < 1e-12);

    assert_eq!(report.excluded.len(), 1);
    assert_eq!(report.excluded[0].reason, "refusal response for atlas:3");

    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("gad.json")).unwrap()).unwrap();
    assert_eq!(json["std_convention"], "population");
    let score = json["scores"][1].as_object().unwrap();
    let mut keys: Vec<&String> = score.keys().collect();
    keys.sort();
    assert_eq!(keys, ["mean", "model_id", "per_graph", "resolution", "std"]);
    assert_eq!(
        json["scores"][1]["per_graph"]["7"],
        serde_json::json!({"distance": 2, "exact": true})
    );
    assert_eq!(
        lines(&dir.path().join("ranking.csv")),
        [
            "rank,model_id,gad_mean,gad_std,exact",
            "1,exact-model,0.00,0.00,true",
            "2,plus-edges,1.40,0.49,true"
        ]
    );
}

#[test]
fn gad_single_edge_on_incomplete_truths() {
    // #6, #13 and #15 have room for one more edge between existing nodes.
    let dir = tempfile::tempdir().unwrap();
    let store = write_store(
        dir.path(),
        &[
            transcript("m", "atlas:3", "[(0, 1)]"),
            transcript("m", "atlas:6", "[(0, 1), (0, 2), (1, 2)]"),
            transcript("m", "atlas:7", "[(0, 1), (0, 2), (1, 2)]"),
            transcript("m", "atlas:13", "[(0, 3), (1, 3), (2, 3), (0, 1)]"),
            transcript("m", "atlas:15", "[(0, 3), (1, 2), (1, 3), (2, 3), (0, 1)]"),
        ],
    );
    let ctx = context(&store, dir.path());
    let (report, _) = cmd_gad(&ctx, 5, &[]).unwrap();
    let d: Vec<u64> = report.scores[0]
        .per_graph
        .values()
        .map(|p| p.distance)
        .collect();
    assert_eq!(d, [0, 1, 0, 1, 1]);
    assert!((report.scores[0].mean - 0.6).abs() < 1e-12);

    let (report, _) = cmd_gad(&ctx, 1, &[]).unwrap();
    assert_eq!(report.atlas_indices, [3]);
    assert_eq!((report.scores[0].mean, report.scores[0].std), (0.0, 0.0));
    assert_eq!(report.scores[0].resolution, 1);

    assert_eq!(cmd_gad(&ctx, 0, &[]).unwrap_err().exit_code(), 2);
    assert_eq!(cmd_gad(&ctx, 40, &[]).unwrap_err().exit_code(), 2);
}

fn write_ranking(path: &Path, ids: &[String]) {
    let mut text = String::from("rank,model_id\n");
    for (i, id) in ids.iter().enumerate() {
        text.push_str(&format!("{},{id}\n", i + 1));
    }
    fs::write(path, text).unwrap();
}

#[test]
fn rank_compare() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = context(&write_store(dir.path(), &[]), dir.path());
    let ids: Vec<String> = (0..10).map(|i| format!("model-{i}")).collect();
    write_ranking(&dir.path().join("ranking.csv"), &ids);

    let reference = dir.path().join("reference.csv");
    write_ranking(&reference, &ids);
    assert_eq!(
        cmd_rank_compare(&ctx, &reference, None)
            .unwrap()
            .spearman_rho,
        1.0
    );

    let reversed: Vec<String> = ids.iter().rev().cloned().collect();
    write_ranking(&reference, &reversed);
    let c = cmd_rank_compare(&ctx, &reference, None).unwrap();
    assert_eq!(c.spearman_rho, -1.0);
    assert_eq!(c.reference, reversed);

    let shuffled: Vec<String> = [3, 0, 7, 1, 9, 2, 5, 8, 4, 6]
        .iter()
        .map(|&i| ids[i].clone())
        .collect();
    write_ranking(&reference, &shuffled);
    let rho = cmd_rank_compare(&ctx, &reference, None)
        .unwrap()
        .spearman_rho;
    assert!((rho - oracles::pearson_on_ranks(&ids, &shuffled)).abs() < 1e-12);

    // Rows out of order are sorted by the rank column.
    fs::write(&reference, "model_id,rank\nmodel-1,2\nmodel-0,1\n").unwrap();
    assert_eq!(read_ranking(&reference).unwrap(), ["model-0", "model-1"]);

    fs::write(&reference, "rank,model_id\n1,model-0\n2,stranger\n").unwrap();
    let err = cmd_rank_compare(&ctx, &reference, None).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("stranger"), "{err}");
    assert!(err.to_string().contains("model-9"), "{err}");
}

#[test]
fn spectral_ordering() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = context(&copy_fixture_store(dir.path()), dir.path());
    let (rows, _) = cmd_spectral(&ctx, "karate", &[]).unwrap();
    assert_eq!(rows[0].model_id, "reference:karate");
    assert_eq!(rows[1].model_id, "exact-model");
    assert!(rows[1].spectral_distance < 1e-9);
    let kc = load_ground_truth("karate").unwrap();
    let direct = |model: &str| match ctx.output(model, "karate").unwrap() {
        hallugraph_cli::commands::ModelOutput::Graph { graph, .. } => {
            spectral_distance(&graph, &kc)
        }
        _ => unreachable!(),
    };
    let minus = rows.iter().find(|r| r.model_id == "minus-edge").unwrap();
    assert!(minus.spectral_distance > 0.0);
    assert_eq!(minus.spectral_distance, direct("minus-edge"));
    let order: Vec<&str> = rows[1..].iter().map(|r| r.model_id.as_str()).collect();
    let mut by_direct = order.clone();
    by_direct.sort_by(|a, b| direct(a).total_cmp(&direct(b)));
    assert_eq!(order, by_direct);
    let csv = lines(&dir.path().join("spectral_karate.csv"));
    assert_eq!(csv[0], "model_id,spectral_distance");
    assert_eq!(csv[1], "reference:karate,0.00");
}

#[test]
fn embed_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = context(&write_store(dir.path(), &[]), &dir.path().join("one"));
    let (summary, _) = cmd_embed(&ctx, &["karate".into()], &[]).unwrap();
    assert_eq!(summary.graphs, ["karate"]);
    let sig = lines(&dir.path().join("one/signatures.csv"));
    assert_eq!(sig.len(), 2);
    assert_eq!(sig[0].split(',').count(), 251);
    assert_eq!(
        lines(&dir.path().join("one/signature_distances.csv")),
        ["graph,karate", "karate,0"]
    );

    let store_dir = tempfile::tempdir().unwrap();
    let ctx = context(
        &copy_fixture_store(store_dir.path()),
        &dir.path().join("fixture"),
    );
    let (summary, _) = cmd_embed(&ctx, &["karate".into()], &[]).unwrap();
    assert_eq!(
        summary.graphs,
        ["karate", "exact-model", "minus-edge", "plus-edges"]
    );
    let distances = lines(&dir.path().join("fixture/signature_distances.csv"));
    assert_eq!(
        distances[0],
        "graph,karate,exact-model,minus-edge,plus-edges"
    );
    let row: Vec<&str> = distances[1].split(',').collect();
    assert_eq!(row[2], "0");
    assert!(row[3].parse::<f64>().unwrap() > 0.0);

    // Default target set covers everything in the store.
    let (summary, _) = cmd_embed(&ctx, &[], &[]).unwrap();
    assert!(summary.graphs.contains(&"exact-model@atlas:50".to_owned()));
    assert!(summary.graphs.contains(&"lesmis".to_owned()));

    let kc = heat_trace_signature(&load_ground_truth("karate").unwrap()).unwrap();
    let single = heat_trace_signature(&Graph::empty(1)).unwrap();
    assert!(signature_distance(&kc, &single).unwrap() > 0.0);
}
