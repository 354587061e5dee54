mod common;

use std::collections::BTreeSet;

use common::*;
use dcover::{census_of_graphs, comain, main_decomposition, run_census, CensusOptions, Error};

fn opts(jobs: usize) -> CensusOptions {
    CensusOptions {
        jobs: Some(jobs),
        omit_timings: true,
    }
}

#[test]
fn comain_count_matches_pairwise_loop() {
    for n in 1..=7 {
        let graphs = corpus(n);
        // floating-point main eigenvalues as an independent oracle
        let mains: Vec<Vec<f64>> = graphs
            .iter()
            .map(|g| {
                main_decomposition(g)
                    .unwrap()
                    .mains
                    .iter()
                    .map(|m| m.value)
                    .collect()
            })
            .collect();
        let close = |a: &[f64], b: &[f64]| {
            a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-6)
        };
        let mut brute = 0u64;
        for i in 0..graphs.len() {
            for j in i + 1..graphs.len() {
                brute += close(&mains[i], &mains[j]) as u64;
            }
        }
        if n <= 5 {
            let direct = (0..graphs.len())
                .flat_map(|i| (i + 1..graphs.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| comain(&graphs[i], &graphs[j]).unwrap())
                .count() as u64;
            assert_eq!(direct, brute);
        }
        let report = census_of_graphs(&graphs, &opts(2)).unwrap();
        assert_eq!(report.comain_pair_count, brute, "n = {n}");
        assert!(report.violations.is_empty());
        assert!(report.question_5_8_offenders.is_empty());
    }
}

#[test]
fn report_is_identical_for_any_worker_count() {
    let graphs = corpus(7);
    let one = serde_json::to_string(&census_of_graphs(&graphs, &opts(1)).unwrap()).unwrap();
    let four = serde_json::to_string(&census_of_graphs(&graphs, &opts(4)).unwrap()).unwrap();
    assert_eq!(one, four);
}

#[test]
fn cover_pairs_survive_reordering() {
    let graphs = corpus(7);
    let n = graphs.len();
    let reversed: Vec<_> = graphs.iter().rev().cloned().collect();
    let fwd = census_of_graphs(&graphs, &opts(2)).unwrap();
    let back = census_of_graphs(&reversed, &opts(2)).unwrap();
    let key = |i: usize, j: usize| (i.min(j), i.max(j));
    let a: BTreeSet<_> = fwd.same_cdc_pairs.iter().map(|p| key(p.i, p.j)).collect();
    let b: BTreeSet<_> = back
        .same_cdc_pairs
        .iter()
        .map(|p| key(n + 1 - p.i, n + 1 - p.j))
        .collect();
    assert_eq!(a, b);
    assert!(!a.is_empty());
    assert_eq!(fwd.comain_pair_count, back.comain_pair_count);
}

#[test]
fn mixed_orders_are_never_paired() {
    let mut graphs = corpus(3);
    graphs.extend(corpus(4));
    let report = census_of_graphs(&graphs, &opts(1)).unwrap();
    for p in &report.same_cdc_pairs {
        assert_eq!(graphs[p.i - 1].order(), graphs[p.j - 1].order());
    }
    assert_eq!(report.graphs.len(), graphs.len());
    assert_eq!(report.graphs[4].order, 4);
}

#[test]
fn malformed_line_is_located() {
    let dir = std::env::temp_dir().join(format!("dcover-census-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.g6");
    std::fs::write(&path, "Bw\nA_\nB!\n").unwrap();
    match run_census(&path, &opts(1)) {
        Err(Error::Line { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected a line error, got {other:?}"),
    }
    assert!(matches!(
        run_census(dir.join("missing.g6"), &opts(1)),
        Err(Error::Io(_))
    ));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn triangle_corpus_is_empty_of_pairs() {
    let report = census_of_graphs(&[dcover::Graph::cycle(3).unwrap()], &opts(1)).unwrap();
    assert_eq!(report.comain_pair_count, 0);
    assert!(report.same_cdc_pairs.is_empty());
    let json = serde_json::to_value(&report).unwrap();
    for key in [
        "corpus_size",
        "comain_pair_count",
        "same_cdc_pairs",
        "same_w_diff_kw_pairs",
        "violations",
        "question_5_8_offenders",
    ] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert!(json.get("timings_ms").is_none());
}
