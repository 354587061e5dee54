//! Canonical labelling of small graphs by individualisation and refinement.
//!
//! The search tree has ordered partitions as nodes. Each node is refined to an equitable
//! partition, the first smallest non-singleton cell is chosen as target, and each of its
//! vertices is individualised in turn. Every leaf is a discrete partition, read as a
//! labelling; the canonical form is the lexicographically smallest relabelled adjacency
//! matrix over all leaves. Automorphisms found when two leaves give the same matrix prune
//! the search: siblings in one orbit of the stabiliser of the current prefix are skipped,
//! and a leaf matching the first leaf abandons the rest of its subtree.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};

pub const MAX_CANON_ORDER: usize = 20;

/// Relabelling-invariant byte string; equal certificates mean isomorphic graphs.
///
/// Layout: the order `n`, then for coloured forms the number of colour classes and their
/// sizes, then the upper triangle of the canonical adjacency matrix in graph6 bit order,
/// packed eight bits per byte, most significant first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Certificate({})", self.to_hex())
    }
}

/// A certificate together with the labelling that produced it: `labeling[i]` is the
/// original vertex placed at canonical position `i`.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub certificate: Certificate,
    pub labeling: Vec<usize>,
}

type Cells = Vec<Vec<usize>>;

fn check_size(n: usize) -> Result<()> {
    if n > MAX_CANON_ORDER {
        return Err(Error::UnsupportedSize {
            what: "order for canonical labelling",
            got: n,
            max: MAX_CANON_ORDER,
        });
    }
    Ok(())
}

fn mask_of(cell: &[usize]) -> u64 {
    cell.iter().fold(0, |m, &v| m | 1 << v)
}

/// Splits cells by neighbour counts into every cell until nothing changes.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| mask_of(c)).collect();
        let mut next: Cells = Vec::with_capacity(cells.len());
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| {
                    let sig = masks
                        .iter()
                        .map(|&m| (g.row(v) & m).count_ones() as u8)
                        .collect();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut pieces = 0;
            for run in keyed.chunk_by(|a, b| a.0 == b.0) {
                next.push(run.iter().map(|&(_, v)| v).collect());
                pieces += 1;
            }
            if pieces > 1 {
                changed = true;
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn individualize(cells: &Cells, target: usize, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for (i, cell) in cells.iter().enumerate() {
        if i == target {
            out.push(vec![v]);
            out.push(cell.iter().copied().filter(|&w| w != v).collect());
        } else {
            out.push(cell.clone());
        }
    }
    out
}

fn relabelled_rows(g: &Graph, lab: &[usize]) -> Vec<u64> {
    let n = lab.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in lab.iter().enumerate() {
        pos[v] = i;
    }
    lab.iter()
        .map(|&v| BitIter(g.row(v)).fold(0u64, |r, w| r | 1 << pos[w]))
        .collect()
}

struct Leaf {
    rows: Vec<u64>,
    labeling: Vec<usize>,
    prefix: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
}

enum Flow {
    Continue,
    /// Unwind to the node at this depth.
    JumpTo(usize),
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Search<'_> {
    fn orbit_roots(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        for gen in &self.generators {
            if prefix.iter().all(|&v| gen[v] == v) {
                for (v, &w) in gen.iter().enumerate() {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    fn leaf(&mut self, cells: &Cells, prefix: &[usize]) -> Flow {
        let labeling: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let rows = relabelled_rows(self.g, &labeling);
        let leaf = Leaf {
            rows,
            labeling,
            prefix: prefix.to_vec(),
        };
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                rows: leaf.rows.clone(),
                labeling: leaf.labeling.clone(),
                prefix: leaf.prefix.clone(),
            });
            self.best = Some(leaf);
            return Flow::Continue;
        };
        if first.rows == leaf.rows {
            self.generators
                .push(automorphism(&first.labeling, &leaf.labeling));
            let common = first
                .prefix
                .iter()
                .zip(&leaf.prefix)
                .take_while(|(a, b)| a == b)
                .count();
            return Flow::JumpTo(common);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.rows.cmp(&best.rows) {
            Ordering::Less => self.best = Some(leaf),
            Ordering::Equal => {
                self.generators
                    .push(automorphism(&best.labeling, &leaf.labeling));
            }
            Ordering::Greater => {}
        }
        Flow::Continue
    }

    fn visit(&mut self, cells: Cells, prefix: &mut Vec<usize>) -> Flow {
        let cells = refine(self.g, cells);
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(target) = target else {
            return self.leaf(&cells, prefix);
        };
        let depth = prefix.len();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if !tried.is_empty() {
                let roots = self.orbit_roots(prefix);
                if tried.iter().any(|&w| roots[w] == roots[v]) {
                    continue;
                }
            }
            tried.push(v);
            prefix.push(v);
            let flow = self.visit(individualize(&cells, target, v), prefix);
            prefix.pop();
            if let Flow::JumpTo(level) = flow {
                if level < depth {
                    return flow;
                }
            }
        }
        Flow::Continue
    }
}

/// Vertex map sending `from[i]` to `to[i]`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

fn encode(rows: &[u64], class_sizes: Option<&[usize]>) -> Certificate {
    let n = rows.len();
    let mut bytes = vec![n as u8];
    if let Some(sizes) = class_sizes {
        bytes.push(sizes.len() as u8);
        bytes.extend(sizes.iter().map(|&s| s as u8));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | ((rows[i] >> j) & 1) as u8;
            filled += 1;
            if filled == 8 {
                bytes.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(acc << (8 - filled));
    }
    Certificate(bytes)
}

fn search(g: &Graph, initial: Cells, class_sizes: Option<&[usize]>) -> CanonicalForm {
    let n = g.order();
    if n == 0 {
        return CanonicalForm {
            certificate: encode(&[], class_sizes),
            labeling: Vec::new(),
        };
    }
    let mut s = Search {
        g,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    s.visit(initial, &mut Vec::new());
    let best = s.best.expect("search visits at least one leaf");
    CanonicalForm {
        certificate: encode(&best.rows, class_sizes),
        labeling: best.labeling,
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    check_size(g.order())?;
    let all: Vec<usize> = (0..g.order()).collect();
    let initial = if all.is_empty() { vec![] } else { vec![all] };
    Ok(search(g, initial, None))
}

/// Canonical form for vertex-coloured graphs: isomorphisms must preserve colours, and the
/// colour classes are ordered by colour value.
pub fn canonical_form_colored(g: &Graph, colors: &[usize]) -> Result<CanonicalForm> {
    check_size(g.order())?;
    if colors.len() != g.order() {
        return Err(Error::Dimension(format!(
            "{} colours for {} vertices",
            colors.len(),
            g.order()
        )));
    }
    let mut values: Vec<usize> = colors.to_vec();
    values.sort_unstable();
    values.dedup();
    let initial: Cells = values
        .iter()
        .map(|&c| (0..g.order()).filter(|&v| colors[v] == c).collect())
        .collect();
    let sizes: Vec<usize> = initial.iter().map(Vec::len).collect();
    Ok(search(g, initial, Some(&sizes)))
}

pub fn certificate(g: &Graph) -> Result<Certificate> {
    Ok(canonical_form(g)?.certificate)
}

/// `true` iff `perm` (vertex `v` of `g` ↦ `perm[v]` of `h`) maps edges onto edges exactly.
pub fn is_isomorphism(g: &Graph, h: &Graph, perm: &[usize]) -> bool {
    g.order() == h.order()
        && crate::graph::is_permutation(perm, g.order())
        && (0..g.order())
            .all(|u| (0..g.order()).all(|v| g.has_edge(u, v) == h.has_edge(perm[u], perm[v])))
}

fn witness_from_forms(
    g: &Graph,
    h: &Graph,
    fg: &CanonicalForm,
    fh: &CanonicalForm,
) -> Result<Option<Vec<usize>>> {
    if fg.certificate != fh.certificate {
        return Ok(None);
    }
    let perm = automorphism(&fg.labeling, &fh.labeling);
    if !is_isomorphism(g, h, &perm) {
        return Err(Error::Internal(format!(
            "canonical labellings of {g:?} and {h:?} agree but do not give an isomorphism"
        )));
    }
    Ok(Some(perm))
}

/// An isomorphism from `g` to `h` as a vertex map, or `None` when they are not isomorphic.
pub fn isomorphic(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    witness_from_forms(g, h, &canonical_form(g)?, &canonical_form(h)?)
}

/// Colour-preserving isomorphism from `g` to `h`.
pub fn isomorphic_colored(
    g: &Graph,
    g_colors: &[usize],
    h: &Graph,
    h_colors: &[usize],
) -> Result<Option<Vec<usize>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    let fg = canonical_form_colored(g, g_colors)?;
    let fh = canonical_form_colored(h, h_colors)?;
    let Some(perm) = witness_from_forms(g, h, &fg, &fh)? else {
        return Ok(None);
    };
    // equal class sizes and canonical positions line the colour classes up in order
    let mut gv: Vec<usize> = g_colors.to_vec();
    let mut hv: Vec<usize> = h_colors.to_vec();
    gv.sort_unstable();
    gv.dedup();
    hv.sort_unstable();
    hv.dedup();
    let rank = |vals: &[usize], c: usize| vals.binary_search(&c).unwrap();
    if (0..g.order()).any(|v| rank(&gv, g_colors[v]) != rank(&hv, h_colors[perm[v]])) {
        return Err(Error::Internal(
            "coloured isomorphism mixes colour classes".into(),
        ));
    }
    Ok(Some(perm))
}
