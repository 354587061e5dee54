//! Simple undirected graphs on at most 64 vertices, stored as adjacency bitsets.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;

/// A simple undirected graph. Row `u` of `adj` has bit `v` set iff `{u, v}` is an edge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// The two colour classes of a bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        return Err(Error::UnsupportedSize {
            what: "graph order",
            got: n,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 0-based edge pairs. Loops and out-of-range endpoints are rejected;
    /// repeated edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Precondition(format!(
                    "edge ({u}, {v}) out of range for order {n}"
                )));
            }
            if u == v {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Same as [`Graph::from_edges`] with vertices numbered from 1, as in printed figures.
    pub fn from_edges_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.iter().any(|&(u, v)| u == 0 || v == 0) {
            return Err(Error::Precondition(
                "vertex label 0 in 1-based edge list".into(),
            ));
        }
        let shifted: Vec<_> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
        Graph::from_edges(n, &shifted)
    }

    /// Builds a graph from raw adjacency rows, validating symmetry, loops and range.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mask = if n == 64 { u64::MAX } else { bit(n) - 1 };
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::Precondition(format!(
                    "row {u} has neighbours >= {n}"
                )));
            }
            if row & bit(u) != 0 {
                return Err(Error::Precondition(format!("loop at vertex {u}")));
            }
            let mut rest = row;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if rows[v] & bit(u) == 0 {
                    return Err(Error::Precondition(format!(
                        "edge ({u}, {v}) is not symmetric"
                    )));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Precondition(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// `K_{a,b}` with the `a`-side on vertices `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let mut g = Graph::empty(a + b)?;
        for u in 0..a {
            for v in a..a + b {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> {
        BitIter(self.adj[u])
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !((bit(u) << 1).wrapping_sub(1))) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&u| self.adj[u] == 0).collect()
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| self.has_edge(u, v) as u8).collect())
            .collect()
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]` of the result.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if !is_permutation(perm, self.n) {
            return Err(Error::Precondition(format!(
                "relabelling is not a permutation of 0..{}",
                self.n
            )));
        }
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.neighbors(u) {
                rows[perm[u]] |= bit(perm[v]);
            }
        }
        Ok(Graph {
            n: self.n,
            adj: rows,
        })
    }

    /// Subgraph induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut rows = vec![0u64; vertices.len()];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    rows[i] |= bit(j);
                }
            }
        }
        Graph {
            n: vertices.len(),
            adj: rows,
        }
    }

    /// `g ⊔ h` with the vertices of `h` shifted past those of `g`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        check_order(n)?;
        let mut rows = self.adj.clone();
        rows.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph { n, adj: rows })
    }

    /// Appends `m` isolated vertices.
    pub fn add_isolated(&self, m: usize) -> Result<Graph> {
        let n = self.n + m;
        check_order(n)?;
        let mut rows = self.adj.clone();
        rows.resize(n, 0);
        Ok(Graph { n, adj: rows })
    }

    /// Connected components, ordered by smallest vertex. Each vertex list is ascending and the
    /// accompanying graph is the induced subgraph in that order.
    pub fn components(&self) -> Vec<(Vec<usize>, Graph)> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen & bit(start) != 0 {
                continue;
            }
            let mut comp = bit(start);
            let mut frontier = bit(start);
            while frontier != 0 {
                let mut next = 0u64;
                for u in BitIter(frontier) {
                    next |= self.adj[u];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            let verts: Vec<usize> = BitIter(comp).collect();
            let sub = self.induced(&verts);
            out.push((verts, sub));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Two-colouring by breadth-first layering; the smallest vertex of each component goes left.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for v in self.neighbors(u) {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (v, c) in color.into_iter().enumerate() {
            if c == Some(false) {
                left.push(v);
            } else {
                right.push(v);
            }
        }
        Some(Bipartition { left, right })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// `true` iff every vertex has the same degree.
    pub fn is_regular(&self) -> bool {
        let d = self.degree_sequence();
        d.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Iterates the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

pub fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}
