#![allow(dead_code)]

use std::path::PathBuf;

use dcover::{read_graph6_file, Graph};

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// Every graph on exactly `n` vertices, one per isomorphism class.
pub fn corpus(n: usize) -> Vec<Graph> {
    read_graph6_file(data_dir().join(format!("graph{n}.g6"))).expect("corpus file")
}

pub fn corpus_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(corpus).collect()
}

fn one_based(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges_one_based(n, edges).unwrap()
}

/// Zelinka's pair of 7-vertex graphs with isomorphic double covers.
pub fn zelinka() -> (Graph, Graph) {
    let g = one_based(
        7,
        &[
            (1, 2),
            (2, 3),
            (3, 1),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 5),
        ],
    );
    let h = one_based(
        7,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 1),
            (2, 7),
            (7, 5),
        ],
    );
    (g, h)
}

/// Same walk matrix, non-isomorphic double covers.
pub fn same_walk_different_cover() -> (Graph, Graph) {
    let g = one_based(
        7,
        &[
            (1, 2),
            (2, 3),
            (3, 6),
            (6, 2),
            (2, 4),
            (4, 1),
            (1, 5),
            (5, 3),
            (4, 7),
            (7, 6),
            (5, 7),
        ],
    );
    let h = one_based(
        7,
        &[
            (1, 2),
            (2, 3),
            (3, 6),
            (6, 2),
            (2, 4),
            (4, 1),
            (1, 5),
            (5, 4),
            (3, 7),
            (7, 6),
            (5, 7),
        ],
    );
    (g, h)
}

/// Comain, with different walk matrices.
pub fn comain_different_walks() -> (Graph, Graph) {
    let g = one_based(
        7,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 1),
            (5, 6),
            (6, 7),
            (7, 5),
        ],
    );
    let h = one_based(
        7,
        &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 1),
            (6, 7),
            (4, 2),
        ],
    );
    (g, h)
}

/// Same principal main eigenvectors, different main eigenvalues.
pub fn same_vectors_different_values() -> (Graph, Graph) {
    let g = one_based(
        8,
        &[
            (1, 5),
            (1, 6),
            (2, 6),
            (2, 7),
            (3, 7),
            (3, 8),
            (4, 5),
            (4, 8),
            (5, 7),
            (5, 8),
            (6, 7),
            (6, 8),
        ],
    );
    let h = one_based(
        8,
        &[
            (1, 5),
            (1, 6),
            (1, 8),
            (3, 5),
            (3, 6),
            (3, 7),
            (4, 5),
            (4, 8),
            (4, 7),
            (2, 6),
            (2, 8),
            (2, 7),
            (5, 6),
            (5, 8),
            (5, 7),
            (6, 8),
            (6, 7),
            (8, 7),
        ],
    );
    (g, h)
}

/// Same main eigenspace with related but unequal walk matrices.
pub fn related_walks() -> (Graph, Graph) {
    let spokes = [
        (1, 5),
        (1, 6),
        (2, 5),
        (2, 6),
        (3, 5),
        (3, 6),
        (4, 5),
        (4, 6),
    ];
    let mut g_edges = spokes.to_vec();
    g_edges.push((5, 6));
    let mut h_edges = spokes.to_vec();
    h_edges.extend([(1, 2), (3, 4)]);
    (one_based(6, &g_edges), one_based(6, &h_edges))
}

/// Graph6 strings of the two same-W pairs on 8 vertices, in `graph8.g6` order.
pub const SAME_W_PAIRS: [(&str, &str); 2] = [("G?~vvg", "GQyuzw"), ("G?~v~w", "GQy}z{")];

pub fn i64_rows(rows: &[&[i64]]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

/// Lexicographically smallest upper-triangle bit string over all relabellings.
pub fn brute_canonical(g: &Graph) -> Vec<bool> {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let code: Vec<bool> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| g.has_edge(perm[i], perm[j]))
            .collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
        if !next_permutation(&mut perm) {
            return best.unwrap();
        }
    }
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Characteristic polynomial `det(xI - A)` by Leibniz expansion, lowest degree first.
pub fn characteristic_polynomial(g: &Graph) -> Vec<i64> {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = vec![0i64; n + 1];
    loop {
        // product over i of (x δ_{i,σi} - a_{i,σi})
        let mut term = vec![1i64];
        for (i, &s) in perm.iter().enumerate() {
            let (c1, c0) = if i == s {
                (1, 0)
            } else {
                (0, -(g.has_edge(i, s) as i64))
            };
            let mut next = vec![0i64; term.len() + 1];
            for (d, &t) in term.iter().enumerate() {
                next[d] += t * c0;
                next[d + 1] += t * c1;
            }
            term = next;
        }
        let sign = if inversions(&perm).is_multiple_of(2) {
            1
        } else {
            -1
        };
        for (d, t) in term.iter().enumerate().take(n + 1) {
            total[d] += sign * t;
        }
        if !next_permutation(&mut perm) {
            return total;
        }
    }
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}

/// Exact polynomial remainder of `a` by a monic `b`, both lowest degree first.
pub fn remainder(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (k, &c) in b.iter().enumerate() {
            r[shift + k] -= lead * c;
        }
        r.pop();
    }
    r
}
