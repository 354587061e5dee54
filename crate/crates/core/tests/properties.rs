mod common;

use common::*;
use dcover::canon::is_isomorphism;
use dcover::exact::int_rank;
use dcover::spectral::exact_main_polynomial;
use dcover::{
    analyze_pair, cdc, certificate, comain, isomorphic, main_decomposition, spectrum,
    tf_isomorphism, verify_tf, walk_count_total, walk_matrix_k, Graph, RelationProfile,
};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .zip(bits)
                .filter_map(|(e, b)| b.then_some(e))
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn walk_counts_match_spectral_sum(g in graph_strategy(8)) {
        let d = main_decomposition(&g).unwrap();
        for k in 0..=6 {
            let float: f64 = d.mains.iter().map(|m| m.weight * m.value.powi(k as i32)).sum();
            let exact = walk_count_total(&g, k).to_f64().unwrap();
            prop_assert!((float - exact).abs() < 1e-4, "k={} {} vs {}", k, float, exact);
        }
    }

    #[test]
    fn walk_rank_saturates_at_p(g in graph_strategy(8)) {
        let p = main_decomposition(&g).unwrap().p;
        for k in 0..=g.order() {
            prop_assert_eq!(int_rank(&walk_matrix_k(&g, k)), k.min(p));
        }
    }

    #[test]
    fn cover_spectrum_is_symmetrised(g in graph_strategy(8)) {
        let mut base: Vec<f64> = spectrum(&g).unwrap().eigenvalues();
        base.extend(base.clone().iter().map(|x| -x));
        base.sort_by(f64::total_cmp);
        let lifted = spectrum(cdc(&g).unwrap().graph()).unwrap().eigenvalues();
        prop_assert_eq!(lifted.len(), base.len());
        for (a, b) in lifted.iter().zip(&base) {
            prop_assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn certificate_ignores_labels((g, perm) in graph_and_perm(9)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(certificate(&g).unwrap(), certificate(&h).unwrap());
        let iso = isomorphic(&g, &h).unwrap().unwrap();
        prop_assert!(is_isomorphism(&g, &h, &iso));
    }

    #[test]
    fn relabelled_copy_has_full_profile((g, perm) in graph_and_perm(8)) {
        let h = g.relabel(&perm).unwrap();
        let a = analyze_pair(&g, &h).unwrap();
        prop_assert_eq!(a.profile, RelationProfile::all_true());
        let w = a.tf_witness.unwrap();
        prop_assert!(verify_tf(&g, &h, &w));
    }

    #[test]
    fn random_pairs_respect_hierarchy(g in graph_strategy(7), h in graph_strategy(7)) {
        let (g, h) = dcover::hierarchy::pad_to_common_order(&g, &h).unwrap();
        let a = analyze_pair(&g, &h).unwrap();
        prop_assert!(a.violations.is_empty(), "{:?}", a.profile);
        if let Some(w) = &a.tf_witness {
            prop_assert!(verify_tf(&g, &h, w));
        }
    }

    #[test]
    fn cover_distributes_over_union(g in graph_strategy(5), h in graph_strategy(5)) {
        let joined = cdc(&g.disjoint_union(&h).unwrap()).unwrap();
        let parts = cdc(&g).unwrap().into_graph().disjoint_union(cdc(&h).unwrap().graph()).unwrap();
        prop_assert_eq!(certificate(joined.graph()).unwrap(), certificate(&parts).unwrap());
    }

    #[test]
    fn comain_is_label_free((g, perm) in graph_and_perm(8)) {
        let h = g.relabel(&perm).unwrap();
        prop_assert!(comain(&g, &h).unwrap());
        prop_assert_eq!(exact_main_polynomial(&g).unwrap().degree(), main_decomposition(&h).unwrap().p);
    }
}

#[test]
fn certificates_agree_with_brute_force() {
    let graphs = corpus_up_to(6);
    let canon: Vec<Vec<bool>> = graphs.iter().map(brute_canonical).collect();
    let certs: Vec<_> = graphs.iter().map(|g| certificate(g).unwrap()).collect();
    for i in 0..graphs.len() {
        for j in i..graphs.len() {
            let same_order = graphs[i].order() == graphs[j].order();
            assert_eq!(
                same_order && canon[i] == canon[j],
                certs[i] == certs[j],
                "{:?} {:?}",
                graphs[i],
                graphs[j]
            );
        }
    }
}

#[test]
fn tf_pairs_in_seven_vertex_corpus_verify() {
    let graphs = corpus(7);
    let by_cover: Vec<_> = graphs
        .iter()
        .map(|g| certificate(cdc(g).unwrap().graph()).unwrap())
        .collect();
    let mut found = 0;
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            if by_cover[i] == by_cover[j] {
                let w = tf_isomorphism(&graphs[i], &graphs[j]).unwrap().unwrap();
                assert!(verify_tf(&graphs[i], &graphs[j], &w));
                found += 1;
            }
        }
    }
    assert!(found > 0);
}
