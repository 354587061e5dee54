//! Serializable summaries for single graphs, pairs and double covers.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::cdc::cdc;
use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::hierarchy::{analyze_pair, pad_to_common_order, RelationProfile, Violation};
use crate::spectral::main_decomposition;

/// Exact integers as JSON numbers when they fit in 64 bits, decimal strings otherwise.
fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<Value>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(int_value).collect())
        .collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenvalueEntry {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MainEntry {
    pub value: f64,
    /// `‖P_i j‖²`
    pub weight: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentEntry {
    pub vertices: Vec<usize>,
    pub order: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CdcReport {
    pub base_order: usize,
    pub order: usize,
    pub edges: usize,
    pub graph6: String,
    /// Vertices `1..=n` form layer 0, `n+1..=2n` layer 1.
    pub components: Vec<ComponentEntry>,
}

impl CdcReport {
    pub fn new(g: &Graph) -> Result<Self> {
        let c = cdc(g)?.into_graph();
        let components = c
            .components()
            .into_iter()
            .map(|(vs, sub)| ComponentEntry {
                vertices: one_based(&vs),
                order: vs.len(),
                edges: sub.edge_count(),
            })
            .collect();
        Ok(CdcReport {
            base_order: g.order(),
            order: c.order(),
            edges: c.edge_count(),
            graph6: write_graph6(&c)?,
            components,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "cdc graph6     {}", self.graph6);
        let _ = writeln!(s, "order          {}", self.order);
        let _ = writeln!(s, "edges          {}", self.edges);
        let _ = writeln!(s, "components     {}", self.components.len());
        for c in &self.components {
            let vs: Vec<String> = c.vertices.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                s,
                "  {:>3} vertices {:>3} edges  [{}]",
                c.order,
                c.edges,
                vs.join(" ")
            );
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphReport {
    pub graph6: String,
    pub order: usize,
    pub edges: usize,
    pub degree_sequence: Vec<usize>,
    pub spectrum: Vec<EigenvalueEntry>,
    pub main_eigenvalues: Vec<MainEntry>,
    pub p: usize,
    pub main_polynomial: String,
    /// Highest degree first.
    pub main_polynomial_coefficients: Vec<Value>,
    pub walk_matrix: Vec<Vec<Value>>,
    pub cdc: CdcReport,
}

impl GraphReport {
    pub fn new(g: &Graph) -> Result<Self> {
        let d = main_decomposition(g)?;
        let fam = crate::walk::WalkMatrixFamily::new(g, 0);
        Ok(GraphReport {
            graph6: write_graph6(g)?,
            order: g.order(),
            edges: g.edge_count(),
            degree_sequence: g.degree_sequence(),
            spectrum: d
                .spectrum
                .groups
                .iter()
                .map(|grp| EigenvalueEntry {
                    value: grp.value,
                    multiplicity: grp.multiplicity,
                })
                .collect(),
            main_eigenvalues: d
                .mains
                .iter()
                .map(|m| MainEntry {
                    value: m.value,
                    weight: m.weight,
                })
                .collect(),
            p: d.p,
            main_polynomial: d.main_poly.to_string(),
            main_polynomial_coefficients: d
                .main_poly
                .coefficients()
                .iter()
                .rev()
                .map(int_value)
                .collect(),
            walk_matrix: int_rows(&fam.walk_matrix()),
            cdc: CdcReport::new(g)?,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph6         {}", self.graph6);
        let _ = writeln!(s, "order          {}", self.order);
        let _ = writeln!(s, "edges          {}", self.edges);
        let degs: Vec<String> = self
            .degree_sequence
            .iter()
            .map(ToString::to_string)
            .collect();
        let _ = writeln!(s, "degrees        {}", degs.join(" "));
        let spec: Vec<String> = self
            .spectrum
            .iter()
            .map(|e| {
                if e.multiplicity == 1 {
                    format!("{:.6}", e.value)
                } else {
                    format!("{:.6}^{}", e.value, e.multiplicity)
                }
            })
            .collect();
        let _ = writeln!(s, "spectrum       {}", spec.join("  "));
        let mains: Vec<String> = self
            .main_eigenvalues
            .iter()
            .map(|m| format!("{:.6}", m.value))
            .collect();
        let _ = writeln!(s, "main           {}", mains.join("  "));
        let _ = writeln!(s, "p              {}", self.p);
        let _ = writeln!(s, "main poly      {}", self.main_polynomial);
        let _ = writeln!(s, "walk matrix");
        let cells: Vec<Vec<String>> = self
            .walk_matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.to_string().trim_matches('"').to_string())
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            let _ = writeln!(s, "  {}", padded.join(" "));
        }
        let _ = writeln!(
            s,
            "cdc            order {}, {} edges, {} components",
            self.cdc.order,
            self.cdc.edges,
            self.cdc.components.len()
        );
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessEntry {
    pub q: Vec<usize>,
    pub r: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub graph6_a: String,
    pub graph6_b: String,
    pub order: usize,
    pub padded: bool,
    pub profile: RelationProfile,
    /// `A_b[i][k] = A_a[q[i]][r[k]]`, 1-based.
    pub tf_witness: Option<WitnessEntry>,
    /// Vertex `i` of graph b is renamed `relabeling[i]` before labelling-sensitive checks.
    pub relabeling: Option<Vec<usize>>,
    /// `Q` with `W_a Q = W_b`, entries as reduced fractions.
    pub related_q: Option<Vec<Vec<String>>>,
    pub violations: Vec<Violation>,
}

impl PairReport {
    pub fn new(a: &Graph, b: &Graph, pad: bool) -> Result<Self> {
        let padded = pad && a.order() != b.order();
        let (g, h) = if pad {
            pad_to_common_order(a, b)?
        } else if a.order() != b.order() {
            return Err(Error::Dimension(format!(
                "graphs of order {} and {}; pass --pad to add isolated vertices",
                a.order(),
                b.order()
            )));
        } else {
            (a.clone(), b.clone())
        };
        let an = analyze_pair(&g, &h)?;
        Ok(PairReport {
            graph6_a: write_graph6(a)?,
            graph6_b: write_graph6(b)?,
            order: g.order(),
            padded,
            profile: an.profile,
            tf_witness: an.tf_witness.map(|w| WitnessEntry {
                q: one_based(&w.q),
                r: one_based(&w.r),
            }),
            relabeling: an.relabeling.as_deref().map(one_based),
            related_q: an.related_q.map(|q| q.to_strings()),
            violations: an.violations,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let pr = &self.profile;
        let _ = writeln!(s, "a                            {}", self.graph6_a);
        let _ = writeln!(s, "b                            {}", self.graph6_b);
        let _ = writeln!(
            s,
            "order                        {}{}",
            self.order,
            if self.padded { " (padded)" } else { "" }
        );
        for (name, v) in [
            ("comain", pr.comain),
            ("same degree vector", pr.same_degree_vector),
            ("same walk matrix", pr.same_walk_matrix),
            ("same W(k) for all k", pr.same_all_k_walk_matrices),
            ("same main eigenspace", pr.same_main_eigenspace),
            (
                "same principal main vectors",
                pr.same_principal_main_vectors,
            ),
            ("related walk matrices", pr.related_walk_matrices),
            ("isomorphic double covers", pr.cdc_isomorphic),
        ] {
            let _ = writeln!(s, "{name:<29}{v}");
        }
        if let Some(w) = &self.tf_witness {
            let _ = writeln!(s, "witness q                    {:?}", w.q);
            let _ = writeln!(s, "witness r                    {:?}", w.r);
        }
        if let Some(q) = &self.related_q {
            let rows: Vec<String> = q.iter().map(|r| format!("({})", r.join(", "))).collect();
            let _ = writeln!(s, "Q                            {}", rows.join(" "));
        }
        let labels: Vec<&str> = self.violations.iter().map(|v| v.label()).collect();
        let _ = writeln!(
            s,
            "violations                   {}",
            if labels.is_empty() {
                "none".to_string()
            } else {
                labels.join(",")
            }
        );
        s
    }
}
