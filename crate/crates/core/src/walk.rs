//! Exact walk matrices `W(k) = [j, Aj, ..., A^{k-1} j]` and the relations between them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{column_space_equal, int_rank, solve_rational, IntMatrix, RatMatrix};
use crate::graph::Graph;

/// The first `k` walk vectors `A^0 j, ..., A^{k-1} j`.
pub fn walk_columns(g: &Graph, k: usize) -> Vec<Vec<BigInt>> {
    let n = g.order();
    let mut cols = Vec::with_capacity(k);
    if k == 0 {
        return cols;
    }
    cols.push(vec![BigInt::one(); n]);
    for _ in 1..k {
        let prev: &Vec<BigInt> = cols.last().unwrap();
        let next: Vec<BigInt> = (0..n)
            .map(|u| g.neighbors(u).fold(BigInt::zero(), |acc, v| acc + &prev[v]))
            .collect();
        cols.push(next);
    }
    cols
}

/// `n × k` walk matrix.
pub fn walk_matrix_k(g: &Graph, k: usize) -> IntMatrix {
    IntMatrix::from_columns(g.order(), &walk_columns(g, k)).expect("walk columns have length n")
}

/// Walk vectors of a graph up to a requested length, together with the main count `p`.
#[derive(Clone, Debug)]
pub struct WalkMatrixFamily {
    pub order: usize,
    pub p: usize,
    pub columns: Vec<Vec<BigInt>>,
}

impl WalkMatrixFamily {
    /// Computes at least `max(k, n + 1)` columns so that `p` can be read off exactly.
    pub fn new(g: &Graph, k: usize) -> Self {
        let n = g.order();
        let columns = walk_columns(g, k.max(n + 1));
        let p = if n == 0 {
            0
        } else {
            int_rank(&IntMatrix::from_columns(n, &columns[..n]).unwrap())
        };
        WalkMatrixFamily {
            order: n,
            p,
            columns,
        }
    }

    /// `W(k)`; `k` must not exceed the number of stored columns.
    pub fn matrix(&self, k: usize) -> IntMatrix {
        IntMatrix::from_columns(self.order, &self.columns[..k]).unwrap()
    }

    /// The walk matrix proper, `W(p)`.
    pub fn walk_matrix(&self) -> IntMatrix {
        self.matrix(self.p)
    }
}

/// The `p`-walk matrix, where `p` is the number of main eigenvalues.
pub fn walk_matrix(g: &Graph) -> IntMatrix {
    WalkMatrixFamily::new(g, 0).walk_matrix()
}

/// Entrywise equality of the walk matrices under the given labellings.
pub fn same_walk_matrix(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let fg = WalkMatrixFamily::new(g, 0);
    let fh = WalkMatrixFamily::new(h, 0);
    fg.p == fh.p && fg.columns[..fg.p] == fh.columns[..fh.p]
}

/// Equality of `W(k)` for every `k`.
///
/// Checking `K = max(p_G, p_H) + 1` columns suffices. If the first `K` columns agree then
/// `W_G(p) = W_H(p)` has rank `p = p_G = p_H`, and the `(p+1)`-th column `A^p j` is the same
/// vector in both. Its coordinates in the common basis are unique, so both graphs satisfy
/// the same recurrence `A^p j = Σ c_i A^i j`, which produces every later column from the
/// previous `p` identically.
pub fn same_walk_matrices_all_k(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let fg = WalkMatrixFamily::new(g, 0);
    let fh = WalkMatrixFamily::new(h, 0);
    let k = fg.p.max(fh.p) + 1;
    fg.columns[..k] == fh.columns[..k]
}

fn check_orders(g: &Graph, h: &Graph) -> Result<()> {
    if g.order() != h.order() {
        return Err(Error::Dimension(format!(
            "graphs of order {} and {}",
            g.order(),
            h.order()
        )));
    }
    Ok(())
}

/// The invertible `p × p` matrix `Q` with `W_G Q = W_H`, if the walk matrices span the
/// same space. Column `i` of `Q` holds the coordinates of column `i` of `W_H` in the basis
/// formed by the columns of `W_G`.
pub fn related_walk_matrices(g: &Graph, h: &Graph) -> Result<Option<RatMatrix>> {
    check_orders(g, h)?;
    let wg = walk_matrix(g);
    let wh = walk_matrix(h);
    if wg.cols() != wh.cols() {
        return Ok(None);
    }
    let mut columns = Vec::with_capacity(wh.cols());
    for i in 0..wh.cols() {
        match solve_rational(&wg, &wh.column(i))? {
            Some(c) => columns.push(c),
            None => return Ok(None),
        }
    }
    Ok(Some(RatMatrix::from_columns(wg.cols(), &columns)?))
}

/// `Main(G) = Main(H)`, decided as equality of the column spaces of the walk matrices.
pub fn main_eigenspace_equal(g: &Graph, h: &Graph) -> Result<bool> {
    check_orders(g, h)?;
    column_space_equal(&walk_matrix(g), &walk_matrix(h))
}
