//! Corpus-wide census: comain buckets, same-CDC pairs with TF witnesses, walk-matrix
//! anomalies and hierarchy checks, with deterministic output for any worker count.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{certificate, Certificate};
use crate::cdc::cdc;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::read_graph6_file;
use crate::hierarchy::{analyze_pair, pad_to_common_order, Violation};
use crate::spectral::{exact_main_polynomial, MainPolynomial};
use crate::tf::{tf_isomorphism, verify_tf};
use crate::walk::WalkMatrixFamily;

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
    /// Leave `timings_ms` out so that reports are byte-identical across runs.
    pub omit_timings: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphSummary {
    pub index: usize,
    pub order: usize,
    pub p: usize,
    /// Highest degree first.
    pub main_polynomial: Vec<i64>,
    pub degree_sequence: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SameCdcPair {
    pub i: usize,
    pub j: usize,
    pub cdc_certificate_hex: String,
    /// `A_j[a][b] = A_i[q[a]][r[b]]`, 1-based.
    pub q: Vec<usize>,
    pub r: Vec<usize>,
    pub comain: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalkPair {
    pub i: usize,
    pub j: usize,
    pub p: usize,
    /// Column `A^p j` of each graph, where the two first differ.
    pub next_column_i: Vec<String>,
    pub next_column_j: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationRecord {
    pub i: usize,
    pub j: usize,
    pub labels: Vec<Violation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IndexPair {
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub corpus_size: usize,
    pub comain_pair_count: u64,
    pub same_cdc_pairs: Vec<SameCdcPair>,
    pub same_w_diff_kw_pairs: Vec<WalkPair>,
    /// Pairs of regular graphs of different degrees. Their walk matrix is the all-ones
    /// column, so they trivially share it; they are counted here, not listed above.
    pub regular_same_w_diff_kw_pair_count: u64,
    pub violations: Vec<ViolationRecord>,
    pub profiled_pair_count: usize,
    pub question_5_8_offenders: Vec<IndexPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, u64>>,
    pub graphs: Vec<GraphSummary>,
}

struct GraphData {
    poly: MainPolynomial,
    walks: WalkMatrixFamily,
    cert: Certificate,
    cdc_cert: Certificate,
}

fn poly_coefficients(poly: &MainPolynomial) -> Result<Vec<i64>> {
    poly.coefficients()
        .iter()
        .rev()
        .map(|c| {
            c.to_i64()
                .ok_or_else(|| Error::Internal(format!("coefficient {c} exceeds 64 bits")))
        })
        .collect()
}

fn pairs_within<K>(buckets: HashMap<K, Vec<usize>>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for members in buckets.into_values() {
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                out.push((i, j));
            }
        }
    }
    out.sort_unstable();
    out
}

fn run_in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn column_strings(col: &[BigInt]) -> Vec<String> {
    col.iter().map(ToString::to_string).collect()
}

pub fn run_census(path: impl AsRef<Path>, opts: &CensusOptions) -> Result<CensusReport> {
    let start = Instant::now();
    let graphs = read_graph6_file(path)?;
    let parse_ms = start.elapsed().as_millis() as u64;
    let mut report = census_of_graphs(&graphs, opts)?;
    if let Some(t) = report.timings_ms.as_mut() {
        t.insert("1_parse".into(), parse_ms);
    }
    Ok(report)
}

/// Runs every census stage over an in-memory corpus. Indices in the report are 1-based
/// positions in `graphs`.
pub fn census_of_graphs(graphs: &[Graph], opts: &CensusOptions) -> Result<CensusReport> {
    run_in_pool(opts.jobs, || census_stages(graphs, opts))?
}

fn census_stages(graphs: &[Graph], opts: &CensusOptions) -> Result<CensusReport> {
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, u64>| {
        timings.insert(name.to_string(), clock.elapsed().as_millis() as u64);
        clock = Instant::now();
    };

    let polys: Vec<MainPolynomial> = graphs
        .par_iter()
        .map(exact_main_polynomial)
        .collect::<Result<_>>()?;
    let walks: Vec<WalkMatrixFamily> = graphs
        .par_iter()
        .map(|g| WalkMatrixFamily::new(g, 0))
        .collect();
    lap("2_main_polynomials", &mut timings);

    let mut by_poly: HashMap<(usize, &MainPolynomial), Vec<usize>> = HashMap::new();
    for (i, poly) in polys.iter().enumerate() {
        by_poly
            .entry((graphs[i].order(), poly))
            .or_default()
            .push(i);
    }
    let comain_pairs = pairs_within(by_poly);
    lap("3_comain_buckets", &mut timings);

    let certs: Vec<(Certificate, Certificate)> = graphs
        .par_iter()
        .map(|g| Ok((certificate(g)?, certificate(cdc(g)?.graph())?)))
        .collect::<Result<_>>()?;
    let data: Vec<GraphData> = polys
        .into_iter()
        .zip(walks)
        .zip(certs)
        .map(|((poly, walks), (cert, cdc_cert))| GraphData {
            poly,
            walks,
            cert,
            cdc_cert,
        })
        .collect();
    let mut by_cdc: HashMap<&Certificate, Vec<usize>> = HashMap::new();
    for (i, d) in data.iter().enumerate() {
        by_cdc.entry(&d.cdc_cert).or_default().push(i);
    }
    let cdc_pairs: Vec<(usize, usize)> = pairs_within(by_cdc)
        .into_iter()
        .filter(|&(i, j)| data[i].cert != data[j].cert)
        .collect();
    lap("4_cdc_certificates", &mut timings);

    let same_cdc_pairs: Vec<SameCdcPair> = cdc_pairs
        .par_iter()
        .map(|&(i, j)| {
            let w = tf_isomorphism(&graphs[i], &graphs[j])?.ok_or_else(|| {
                Error::Internal(format!(
                    "graphs {} and {} share a CDC certificate but no TF pair",
                    i + 1,
                    j + 1
                ))
            })?;
            if !verify_tf(&graphs[i], &graphs[j], &w) {
                return Err(Error::Internal(format!(
                    "TF witness for {} and {} fails",
                    i + 1,
                    j + 1
                )));
            }
            let (q, r) = w.one_based();
            Ok(SameCdcPair {
                i: i + 1,
                j: j + 1,
                cdc_certificate_hex: data[i].cdc_cert.to_hex(),
                q,
                r,
                comain: data[i].poly == data[j].poly,
            })
        })
        .collect::<Result<_>>()?;
    lap("5_tf_witnesses", &mut timings);

    let mut by_walk: HashMap<(usize, &[Vec<BigInt>]), Vec<usize>> = HashMap::new();
    for (i, d) in data.iter().enumerate() {
        by_walk
            .entry((d.walks.order, &d.walks.columns[..d.walks.p]))
            .or_default()
            .push(i);
    }
    let same_w_pairs = pairs_within(by_walk);
    let mut same_w_diff_kw_pairs = Vec::new();
    let mut regular_same_w_diff_kw_pair_count = 0;
    for &(i, j) in &same_w_pairs {
        let (a, b) = (&data[i].walks, &data[j].walks);
        if a.columns[a.p] == b.columns[b.p] {
            continue;
        }
        if a.p <= 1 {
            regular_same_w_diff_kw_pair_count += 1;
        } else {
            same_w_diff_kw_pairs.push(WalkPair {
                i: i + 1,
                j: j + 1,
                p: a.p,
                next_column_i: column_strings(&a.columns[a.p]),
                next_column_j: column_strings(&b.columns[b.p]),
            });
        }
    }
    lap("6_walk_matrices", &mut timings);

    let mut profiled: Vec<(usize, usize)> = comain_pairs
        .iter()
        .chain(&cdc_pairs)
        .chain(same_w_pairs.iter().filter(|&&(i, _)| data[i].walks.p > 1))
        .copied()
        .collect();
    profiled.sort_unstable();
    profiled.dedup();
    let violations: Vec<ViolationRecord> = profiled
        .par_iter()
        .map(|&(i, j)| {
            let a = analyze_pair(&graphs[i], &graphs[j])?;
            Ok((!a.violations.is_empty()).then(|| ViolationRecord {
                i: i + 1,
                j: j + 1,
                labels: a.violations,
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let question_5_8_offenders: Vec<IndexPair> = cdc_pairs
        .iter()
        .filter(|&&(i, j)| data[i].poly != data[j].poly)
        .map(|&(i, j)| IndexPair { i: i + 1, j: j + 1 })
        .collect();
    lap("7_hierarchy_and_question", &mut timings);

    let summaries: Vec<GraphSummary> = graphs
        .iter()
        .zip(&data)
        .enumerate()
        .map(|(i, (g, d))| {
            Ok(GraphSummary {
                index: i + 1,
                order: g.order(),
                p: d.walks.p,
                main_polynomial: poly_coefficients(&d.poly)?,
                degree_sequence: g.degree_sequence(),
            })
        })
        .collect::<Result<_>>()?;

    Ok(CensusReport {
        corpus_size: graphs.len(),
        comain_pair_count: comain_pairs.len() as u64,
        same_cdc_pairs,
        same_w_diff_kw_pairs,
        regular_same_w_diff_kw_pair_count,
        violations,
        profiled_pair_count: profiled.len(),
        question_5_8_offenders,
        timings_ms: (!opts.omit_timings).then_some(timings),
        graphs: summaries,
    })
}

impl CensusReport {
    pub fn has_findings(&self) -> bool {
        !self.violations.is_empty() || !self.question_5_8_offenders.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "corpus size                 {:>8}", self.corpus_size);
        let _ = writeln!(
            s,
            "comain pairs                {:>8}",
            self.comain_pair_count
        );
        let _ = writeln!(
            s,
            "same-CDC pairs              {:>8}",
            self.same_cdc_pairs.len()
        );
        let _ = writeln!(
            s,
            "same W, different W(k)      {:>8}",
            self.same_w_diff_kw_pairs.len()
        );
        let _ = writeln!(
            s,
            "  regular, different degree {:>8}",
            self.regular_same_w_diff_kw_pair_count
        );
        let _ = writeln!(
            s,
            "pairs profiled              {:>8}",
            self.profiled_pair_count
        );
        let _ = writeln!(
            s,
            "hierarchy violations        {:>8}",
            self.violations.len()
        );
        let _ = writeln!(
            s,
            "CDC-but-not-comain pairs    {:>8}",
            self.question_5_8_offenders.len()
        );

        if !self.same_cdc_pairs.is_empty() {
            let _ = writeln!(s, "\nsame-CDC pairs");
            let _ = writeln!(
                s,
                "{:>6} {:>6}  {:<6}  {:<24} {:<24}",
                "i", "j", "comain", "q", "r"
            );
            for p in &self.same_cdc_pairs {
                let _ = writeln!(
                    s,
                    "{:>6} {:>6}  {:<6}  {:<24} {:<24}",
                    p.i,
                    p.j,
                    p.comain,
                    join(&p.q),
                    join(&p.r)
                );
            }
        }
        if !self.same_w_diff_kw_pairs.is_empty() {
            let _ = writeln!(s, "\nsame W, different W(k)");
            let _ = writeln!(
                s,
                "{:>6} {:>6} {:>3}  {:<32} {:<32}",
                "i", "j", "p", "A^p j (i)", "A^p j (j)"
            );
            for p in &self.same_w_diff_kw_pairs {
                let _ = writeln!(
                    s,
                    "{:>6} {:>6} {:>3}  {:<32} {:<32}",
                    p.i,
                    p.j,
                    p.p,
                    p.next_column_i.join(","),
                    p.next_column_j.join(",")
                );
            }
        }
        for v in &self.violations {
            let labels: Vec<&str> = v.labels.iter().map(|l| l.label()).collect();
            let _ = writeln!(s, "violation {:>6} {:>6}  {}", v.i, v.j, labels.join(","));
        }
        for o in &self.question_5_8_offenders {
            let _ = writeln!(s, "CDC-isomorphic, not comain {:>6} {:>6}", o.i, o.j);
        }
        if let Some(t) = &self.timings_ms {
            let _ = writeln!(s, "\ntimings (ms)");
            for (stage, ms) in t {
                let _ = writeln!(s, "  {stage:<28}{ms:>8}");
            }
        }
        s
    }

    /// One row per reported pair: `kind,i,j,detail`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("kind,i,j,detail\n");
        for p in &self.same_cdc_pairs {
            let _ = writeln!(s, "same_cdc,{},{},{}", p.i, p.j, p.cdc_certificate_hex);
        }
        for p in &self.same_w_diff_kw_pairs {
            let _ = writeln!(s, "same_w_diff_kw,{},{},p={}", p.i, p.j, p.p);
        }
        for v in &self.violations {
            let labels: Vec<&str> = v.labels.iter().map(|l| l.label()).collect();
            let _ = writeln!(s, "violation,{},{},{}", v.i, v.j, labels.join(";"));
        }
        for o in &self.question_5_8_offenders {
            let _ = writeln!(s, "cdc_not_comain,{},{},", o.i, o.j);
        }
        s
    }
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Clone, Debug, Serialize)]
pub struct HierarchyScan {
    pub graphs_considered: usize,
    pub pairs_checked: u64,
    pub violations: Vec<ViolationRecord>,
}

/// Profiles every unordered pair (including each graph with itself) of the graphs with at
/// most `max_order` vertices, padding the smaller graph of a pair with isolated vertices.
pub fn scan_hierarchy(
    graphs: &[Graph],
    max_order: Option<usize>,
    jobs: Option<usize>,
) -> Result<HierarchyScan> {
    let chosen: Vec<usize> = (0..graphs.len())
        .filter(|&i| max_order.is_none_or(|k| graphs[i].order() <= k))
        .collect();
    let pairs: Vec<(usize, usize)> = chosen
        .iter()
        .enumerate()
        .flat_map(|(a, &i)| chosen[a..].iter().map(move |&j| (i, j)))
        .collect();
    let violations = run_in_pool(jobs, || {
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let (g, h) = pad_to_common_order(&graphs[i], &graphs[j])?;
                let a = analyze_pair(&g, &h)?;
                Ok((!a.violations.is_empty()).then(|| ViolationRecord {
                    i: i + 1,
                    j: j + 1,
                    labels: a.violations,
                }))
            })
            .collect::<Result<Vec<_>>>()
    })??
    .into_iter()
    .flatten()
    .collect();
    Ok(HierarchyScan {
        graphs_considered: chosen.len(),
        pairs_checked: pairs.len() as u64,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::parse_graph6;

    fn quiet() -> CensusOptions {
        CensusOptions {
            jobs: Some(2),
            omit_timings: true,
        }
    }

    #[test]
    fn triangle_alone() {
        let r = census_of_graphs(&[parse_graph6("Bw").unwrap()], &quiet()).unwrap();
        assert_eq!(r.corpus_size, 1);
        assert_eq!(r.comain_pair_count, 0);
        assert!(r.same_cdc_pairs.is_empty());
        assert_eq!(r.graphs[0].main_polynomial, vec![1, -2]);
    }

    #[test]
    fn hexagon_and_two_triangles() {
        let c6 = Graph::cycle(6).unwrap();
        let c3 = Graph::cycle(3).unwrap();
        let two = c3.disjoint_union(&c3).unwrap();
        let r = census_of_graphs(&[c6, two], &quiet()).unwrap();
        assert_eq!(r.comain_pair_count, 1);
        assert_eq!(r.same_cdc_pairs.len(), 1);
        assert_eq!((r.same_cdc_pairs[0].i, r.same_cdc_pairs[0].j), (1, 2));
        assert!(r.violations.is_empty());
        assert!(r.question_5_8_offenders.is_empty());
        // both 2-regular: same W = j, same W(k) for all k
        assert_eq!(r.regular_same_w_diff_kw_pair_count, 0);
    }

    #[test]
    fn regular_pairs_are_counted_apart() {
        let r = census_of_graphs(
            &[Graph::cycle(4).unwrap(), Graph::complete(4).unwrap()],
            &quiet(),
        )
        .unwrap();
        assert_eq!(r.regular_same_w_diff_kw_pair_count, 1);
        assert!(r.same_w_diff_kw_pairs.is_empty());
    }

    #[test]
    fn csv_header() {
        let r = census_of_graphs(&[Graph::cycle(3).unwrap()], &quiet()).unwrap();
        assert_eq!(r.to_csv(), "kind,i,j,detail\n");
        assert!(r.to_text().contains("corpus size"));
    }

    #[test]
    fn scan_small() {
        let graphs = vec![Graph::path(3).unwrap(), Graph::cycle(4).unwrap()];
        let s = scan_hierarchy(&graphs, None, Some(1)).unwrap();
        assert_eq!(s.pairs_checked, 3);
        assert!(s.violations.is_empty());
        let s = scan_hierarchy(&graphs, Some(3), Some(1)).unwrap();
        assert_eq!(s.pairs_checked, 1);
    }
}
