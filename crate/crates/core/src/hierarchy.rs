//! Pairwise relations between graphs and the implications that must hold among them.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{certificate, Certificate};
use crate::cdc::cdc;
use crate::error::{Error, Result};
use crate::exact::{column_space_equal, RatMatrix};
use crate::graph::Graph;
use crate::spectral::{exact_main_polynomial, main_decomposition, principal_vectors_match};
use crate::tf::{tf_isomorphism, TfWitness};
use crate::walk::{related_walk_matrices, WalkMatrixFamily};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct RelationProfile {
    pub comain: bool,
    /// Entrywise equal degree vectors `A j`, the second walk column.
    pub same_degree_vector: bool,
    pub same_walk_matrix: bool,
    pub same_all_k_walk_matrices: bool,
    pub same_main_eigenspace: bool,
    pub same_principal_main_vectors: bool,
    pub related_walk_matrices: bool,
    /// Equivalently, TF-isomorphic.
    pub cdc_isomorphic: bool,
}

impl RelationProfile {
    pub fn all_true() -> Self {
        RelationProfile {
            comain: true,
            same_degree_vector: true,
            same_walk_matrix: true,
            same_all_k_walk_matrices: true,
            same_main_eigenspace: true,
            same_principal_main_vectors: true,
            related_walk_matrices: true,
            cdc_isomorphic: true,
        }
    }
}

/// A broken edge of the implication diagram. The string forms are stable report labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Violation {
    /// isomorphic double covers ⇒ same walk matrix
    #[serde(rename = "THM_3_2")]
    CdcImpliesSameWalk,
    /// same walk matrix ⇒ same main eigenspace
    #[serde(rename = "COR_3_6")]
    SameWalkImpliesSameSpace,
    /// same principal main eigenvectors ⇒ same main eigenspace
    #[serde(rename = "MAIN_SPAN")]
    SameVectorsImpliesSameSpace,
    /// comain ∧ same principal main eigenvectors ⇒ same walk matrices for every k
    #[serde(rename = "THM_5_5")]
    ComainVectorsImplyAllWalks,
    /// same principal main eigenvectors ∧ ¬comain ⇒ different degree vectors, hence
    /// different `W(k)` for every `k ≥ 2`
    #[serde(rename = "PROP_5_3")]
    VectorsWithoutComainSeparateWalks,
    /// related walk matrices ⇔ same main eigenspace
    #[serde(rename = "THM_5_6")]
    RelatedIffSameSpace,
}

impl Violation {
    pub fn label(self) -> &'static str {
        match self {
            Violation::CdcImpliesSameWalk => "THM_3_2",
            Violation::SameWalkImpliesSameSpace => "COR_3_6",
            Violation::SameVectorsImpliesSameSpace => "MAIN_SPAN",
            Violation::ComainVectorsImplyAllWalks => "THM_5_5",
            Violation::VectorsWithoutComainSeparateWalks => "PROP_5_3",
            Violation::RelatedIffSameSpace => "THM_5_6",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn implication_violations(pr: &RelationProfile) -> Vec<Violation> {
    let implies = |a: bool, b: bool| !a || b;
    let mut out = Vec::new();
    if !implies(pr.cdc_isomorphic, pr.same_walk_matrix) {
        out.push(Violation::CdcImpliesSameWalk);
    }
    if !implies(pr.same_walk_matrix, pr.same_main_eigenspace) {
        out.push(Violation::SameWalkImpliesSameSpace);
    }
    if !implies(pr.same_principal_main_vectors, pr.same_main_eigenspace) {
        out.push(Violation::SameVectorsImpliesSameSpace);
    }
    if !implies(
        pr.comain && pr.same_principal_main_vectors,
        pr.same_all_k_walk_matrices,
    ) {
        out.push(Violation::ComainVectorsImplyAllWalks);
    }
    if !implies(
        pr.same_principal_main_vectors && !pr.comain,
        !pr.same_degree_vector,
    ) {
        out.push(Violation::VectorsWithoutComainSeparateWalks);
    }
    if pr.related_walk_matrices != pr.same_main_eigenspace {
        out.push(Violation::RelatedIffSameSpace);
    }
    out
}

/// Everything computed for one ordered pair `(G, H)`.
#[derive(Clone, Debug)]
pub struct PairAnalysis {
    pub profile: RelationProfile,
    pub tf_witness: Option<TfWitness>,
    /// Relabelling applied to `H` before the labelling-sensitive comparisons: vertex `i`
    /// of `H` becomes `relabeling[i]`. Present exactly when the double covers are
    /// isomorphic.
    pub relabeling: Option<Vec<usize>>,
    /// `Q` with `W_G Q = W_H'`, where `H'` is `H` after the relabelling above.
    pub related_q: Option<RatMatrix>,
    pub violations: Vec<Violation>,
}

/// Computes every relation for a pair of graphs of equal order.
///
/// Walk matrices depend on the vertex labelling. When the double covers are isomorphic,
/// `H` is first relabelled by the row permutation `q` of the TF witness: the cover
/// isomorphism preserves walk counts, so `(A_H^l j)_i = (A_G^l j)_{q(i)}` for every `l`.
/// All labelling-sensitive relations are then evaluated on that relabelled copy;
/// otherwise the given labellings are used.
pub fn analyze_pair(g: &Graph, h: &Graph) -> Result<PairAnalysis> {
    if g.order() != h.order() {
        return Err(Error::Dimension(format!(
            "graphs of order {} and {}",
            g.order(),
            h.order()
        )));
    }
    let tf_witness = tf_isomorphism(g, h)?;
    let relabeling = tf_witness.as_ref().map(|w| w.q.clone());
    let h_eff = match &relabeling {
        Some(perm) => h.relabel(perm)?,
        None => h.clone(),
    };

    let comain = exact_main_polynomial(g)? == exact_main_polynomial(h)?;
    let fg = WalkMatrixFamily::new(g, 0);
    let fh = WalkMatrixFamily::new(&h_eff, 0);
    let same_degree_vector = fg.columns.get(1) == fh.columns.get(1);
    let same_walk_matrix = fg.p == fh.p && fg.columns[..fg.p] == fh.columns[..fh.p];
    let horizon = fg.p.max(fh.p) + 1;
    let same_all_k_walk_matrices = fg.columns[..horizon] == fh.columns[..horizon];
    let same_main_eigenspace = column_space_equal(&fg.walk_matrix(), &fh.walk_matrix())?;
    let related_q = related_walk_matrices(g, &h_eff)?;
    let same_principal_main_vectors =
        principal_vectors_match(&main_decomposition(g)?, &main_decomposition(&h_eff)?);

    let profile = RelationProfile {
        comain,
        same_degree_vector,
        same_walk_matrix,
        same_all_k_walk_matrices,
        same_main_eigenspace,
        same_principal_main_vectors,
        related_walk_matrices: related_q.is_some(),
        cdc_isomorphic: tf_witness.is_some(),
    };
    let violations = implication_violations(&profile);
    Ok(PairAnalysis {
        profile,
        tf_witness,
        relabeling,
        related_q,
        violations,
    })
}

pub fn relation_profile(g: &Graph, h: &Graph) -> Result<RelationProfile> {
    Ok(analyze_pair(g, h)?.profile)
}

/// Pads the smaller graph with isolated vertices so both have the same order.
pub fn pad_to_common_order(g: &Graph, h: &Graph) -> Result<(Graph, Graph)> {
    let n = g.order().max(h.order());
    Ok((
        g.add_isolated(n - g.order())?,
        h.add_isolated(n - h.order())?,
    ))
}

/// Pairs `(i, j)`, `i < j`, whose double covers are isomorphic but which are not comain.
/// Graphs of different orders are never paired.
pub fn check_question_cdc_implies_comain(corpus: &[Graph]) -> Result<Vec<(usize, usize)>> {
    let certs: Vec<Certificate> = corpus
        .par_iter()
        .map(|g| certificate(cdc(g)?.graph()))
        .collect::<Result<_>>()?;
    let mut buckets: HashMap<&Certificate, Vec<usize>> = HashMap::new();
    for (i, c) in certs.iter().enumerate() {
        buckets.entry(c).or_default().push(i);
    }
    let mut offenders = Vec::new();
    for members in buckets.values() {
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                if exact_main_polynomial(&corpus[i])? != exact_main_polynomial(&corpus[j])? {
                    offenders.push((i.min(j), i.max(j)));
                }
            }
        }
    }
    offenders.sort_unstable();
    Ok(offenders)
}
