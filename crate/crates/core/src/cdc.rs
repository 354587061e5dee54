//! Canonical double covering `CDC(G) = G × K_2`.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

/// `CDC(G)` with layer 0 on vertices `0..n` and layer 1 on `n..2n`, so that its adjacency
/// matrix has the block form `[[O, A], [A, O]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdcGraph {
    base_order: usize,
    graph: Graph,
}

impl CdcGraph {
    pub fn base_order(&self) -> usize {
        self.base_order
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// Copy index (0 or 1) of a cover vertex.
    pub fn layer(&self, v: usize) -> usize {
        v / self.base_order
    }

    /// Base vertex that a cover vertex lies over.
    pub fn base_vertex(&self, v: usize) -> usize {
        v % self.base_order
    }

    /// Cover vertex `(u, layer)`.
    pub fn lift(&self, u: usize, layer: usize) -> usize {
        layer * self.base_order + u
    }
}

pub fn cdc(g: &Graph) -> Result<CdcGraph> {
    let n = g.order();
    if 2 * n > MAX_ORDER {
        return Err(Error::UnsupportedSize {
            what: "double cover order",
            got: 2 * n,
            max: MAX_ORDER,
        });
    }
    let mut rows = vec![0u64; 2 * n];
    for u in 0..n {
        // (u,0) ~ (v,1) and (u,1) ~ (v,0) for every edge {u,v}
        rows[u] = g.row(u) << n;
        rows[n + u] = g.row(u);
    }
    let graph = Graph::from_rows(rows)?;
    Ok(CdcGraph {
        base_order: n,
        graph,
    })
}
