//! TF-isomorphisms: pairs of vertex permutations `(Q, R)` with `Q A_G R = A_H`.
//!
//! Such a pair exists exactly when `CDC(G) ≅ CDC(H)`. A witness is extracted from an
//! isomorphism of the double covers by reading off, for each vertex `i` of `H`, which base
//! vertex of `G` the cover vertices `(i, 0)` and `(i, 1)` come from.

use serde::Serialize;

use crate::canon::{isomorphic, isomorphic_colored, MAX_CANON_ORDER};
use crate::cdc::cdc;
use crate::error::{Error, Result};
use crate::graph::{is_permutation, Graph};

pub const MAX_TF_ORDER: usize = MAX_CANON_ORDER / 2;

/// Row and column selections: `A_H[i][k] = A_G[q[i]][r[k]]` for all `i, k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TfWitness {
    pub q: Vec<usize>,
    pub r: Vec<usize>,
}

impl TfWitness {
    pub fn identity(n: usize) -> Self {
        TfWitness {
            q: (0..n).collect(),
            r: (0..n).collect(),
        }
    }

    /// 1-based copies of `q` and `r` for reports.
    pub fn one_based(&self) -> (Vec<usize>, Vec<usize>) {
        (
            self.q.iter().map(|x| x + 1).collect(),
            self.r.iter().map(|x| x + 1).collect(),
        )
    }
}

/// `true` iff `q` and `r` are permutations and selecting rows by `q` and columns by `r`
/// from `A_G` reproduces `A_H` entrywise.
pub fn verify_tf(g: &Graph, h: &Graph, w: &TfWitness) -> bool {
    let n = g.order();
    h.order() == n
        && is_permutation(&w.q, n)
        && is_permutation(&w.r, n)
        && (0..n).all(|i| (0..n).all(|k| h.has_edge(i, k) == g.has_edge(w.q[i], w.r[k])))
}

/// Splits a double-cover isomorphism into a TF pair.
///
/// `psi` maps vertices of `CDC(H)` to vertices of `CDC(G)`, both layer-0-first on `n`
/// base vertices. In block terms, with `P` the permutation matrix of `psi`, this is
/// `Q = (P11 + P21)ᵀ` and `R = P22 + P12`. The result may fail to be a pair of
/// permutations when `psi` sends both copies of some base vertex into one layer; callers
/// verify it.
pub fn witness_from_cover_map(n: usize, psi: &[usize]) -> TfWitness {
    TfWitness {
        q: (0..n).map(|i| psi[i] % n).collect(),
        r: (0..n).map(|k| psi[n + k] % n).collect(),
    }
}

/// TF witness between graphs without isolated vertices.
fn tf_core(g: &Graph, h: &Graph) -> Result<Option<TfWitness>> {
    let n = g.order();
    if n == 0 {
        return Ok(Some(TfWitness::identity(0)));
    }
    let cg = cdc(g)?.into_graph();
    let ch = cdc(h)?.into_graph();
    let Some(phi) = isomorphic(&ch, &cg)? else {
        return Ok(None);
    };
    let w = witness_from_cover_map(n, &phi);
    if verify_tf(g, h, &w) {
        return Ok(Some(w));
    }
    // The unrestricted isomorphism mixed the layers. Some isomorphism keeps them apart
    // (it is built from any TF pair), so search again with the layers as colours.
    let layers: Vec<usize> = (0..2 * n).map(|v| v / n).collect();
    let psi = isomorphic_colored(&ch, &layers, &cg, &layers)?.ok_or_else(|| {
        Error::Internal(
            "double covers are isomorphic but no layer-preserving isomorphism exists".into(),
        )
    })?;
    let w = witness_from_cover_map(n, &psi);
    if !verify_tf(g, h, &w) {
        return Err(Error::Internal(format!(
            "layer-preserving cover isomorphism gave an invalid TF pair {w:?}"
        )));
    }
    Ok(Some(w))
}

/// Finds `(Q, R)` with `Q A_G R = A_H`, or `None` when the double covers differ.
pub fn tf_isomorphism(g: &Graph, h: &Graph) -> Result<Option<TfWitness>> {
    let n = g.order();
    if h.order() != n {
        return Err(Error::Dimension(format!(
            "graphs of order {n} and {}",
            h.order()
        )));
    }
    if n > MAX_TF_ORDER {
        return Err(Error::UnsupportedSize {
            what: "order for TF-isomorphism",
            got: n,
            max: MAX_TF_ORDER,
        });
    }
    let iso_g = g.isolated_vertices();
    let iso_h = h.isolated_vertices();
    if iso_g.len() != iso_h.len() {
        // double covers differ in their number of isolated vertices
        return Ok(None);
    }
    let rest_g: Vec<usize> = (0..n).filter(|v| !iso_g.contains(v)).collect();
    let rest_h: Vec<usize> = (0..n).filter(|v| !iso_h.contains(v)).collect();
    let Some(core) = tf_core(&g.induced(&rest_g), &h.induced(&rest_h))? else {
        return Ok(None);
    };

    let mut q = vec![0; n];
    let mut r = vec![0; n];
    for (i, &hv) in rest_h.iter().enumerate() {
        q[hv] = rest_g[core.q[i]];
        r[hv] = rest_g[core.r[i]];
    }
    for (&hv, &gv) in iso_h.iter().zip(&iso_g) {
        q[hv] = gv;
        r[hv] = gv;
    }
    let w = TfWitness { q, r };
    if !verify_tf(g, h, &w) {
        return Err(Error::Internal(format!(
            "assembled TF witness {w:?} fails verification"
        )));
    }
    Ok(Some(w))
}
