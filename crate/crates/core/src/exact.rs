//! Exact integer and rational linear algebra.
//!
//! Rank and solves use fraction-free (Bareiss) elimination: every intermediate entry is a
//! minor of the input and stays an integer, so no rational arithmetic happens until back
//! substitution.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        IntMatrix::new(r, c, data)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`. All columns must share a length.
    pub fn from_columns(nrows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != nrows) {
            return Err(Error::Dimension(
                "column length differs from row count".into(),
            ));
        }
        let cols = columns.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for i in 0..nrows {
            for c in columns {
                data.push(c[i].clone());
            }
        }
        Ok(IntMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// The first `k` columns.
    pub fn leading_columns(&self, k: usize) -> IntMatrix {
        let k = k.min(self.cols);
        let mut data = Vec::with_capacity(self.rows * k);
        for i in 0..self.rows {
            data.extend_from_slice(&self.row(i)[..k]);
        }
        IntMatrix {
            rows: self.rows,
            cols: k,
            data,
        }
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "cannot join {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Rows permuted so that row `i` of the result is row `perm[i]` of `self`.
    pub fn select_rows(&self, perm: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(perm.len() * self.cols);
        for &i in perm {
            data.extend_from_slice(self.row(i));
        }
        IntMatrix {
            rows: perm.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

/// Vector of rationals kept in lowest terms with positive denominators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatVector(pub Vec<BigRational>);

impl RatVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn from_columns(nrows: usize, columns: &[RatVector]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != nrows) {
            return Err(Error::Dimension(
                "column length differs from row count".into(),
            ));
        }
        let mut data = Vec::with_capacity(nrows * columns.len());
        for i in 0..nrows {
            for c in columns {
                data.push(c.0[i].clone());
            }
        }
        Ok(RatMatrix {
            rows: nrows,
            cols: columns.len(),
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let c = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .flatten()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        RatMatrix {
            rows: rows.len(),
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// `lhs · self`, exactly.
    pub fn left_mul_int(&self, lhs: &IntMatrix) -> Result<RatMatrix> {
        if lhs.cols() != self.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                lhs.rows(),
                lhs.cols(),
                self.rows,
                self.cols
            )));
        }
        let mut data = Vec::with_capacity(lhs.rows() * self.cols);
        for i in 0..lhs.rows() {
            for j in 0..self.cols {
                let mut acc = BigRational::zero();
                for k in 0..self.rows {
                    acc += BigRational::from_integer(lhs.get(i, k).clone()) * self.get(k, j);
                }
                data.push(acc);
            }
        }
        Ok(RatMatrix {
            rows: lhs.rows(),
            cols: self.cols,
            data,
        })
    }

    pub fn equals_int(&self, other: &IntMatrix) -> bool {
        self.rows == other.rows()
            && self.cols == other.cols()
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.is_integer() && &a.to_integer() == b)
    }

    /// Entries rendered as `"a"` or `"a/b"`, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix{:?}", self.to_strings())
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// Row echelon form by Bareiss elimination, in place. Returns the pivot positions
/// `(row, col)` in order. Only columns `< pivot_cols` are eligible as pivots; the remaining
/// columns are carried along.
fn bareiss_echelon(m: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<(usize, usize)> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols.min(ncols) {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for k in c + 1..ncols {
                let num = &m[r][c] * &m[i][k] - &m[i][c] * &m[r][k];
                let (q, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][k] = q;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Rank over the rationals.
pub fn int_rank(m: &IntMatrix) -> usize {
    let mut rows = m.to_rows();
    bareiss_echelon(&mut rows, m.cols()).len()
}

/// Solves `a x = b` for a matrix with full column rank. Returns `None` when `b` is outside
/// the column space of `a`.
pub fn solve_rational(a: &IntMatrix, b: &[BigInt]) -> Result<Option<RatVector>> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has {} entries, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let k = a.cols();
    let mut aug: Vec<Vec<BigInt>> = (0..a.rows())
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = bareiss_echelon(&mut aug, k + 1);
    let a_rank = pivots.iter().filter(|&&(_, c)| c < k).count();
    if a_rank < k {
        return Err(Error::Precondition(format!(
            "coefficient matrix has rank {a_rank} < {k} columns"
        )));
    }
    if pivots.len() > k {
        return Ok(None);
    }
    // Full column rank puts the pivots on the diagonal of the leading k x k block.
    let mut x = vec![BigRational::zero(); k];
    for i in (0..k).rev() {
        let mut acc = BigRational::from_integer(aug[i][k].clone());
        for j in i + 1..k {
            acc -= BigRational::from_integer(aug[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(aug[i][i].clone());
    }
    Ok(Some(RatVector(x)))
}

/// `true` iff the two matrices have the same column space.
pub fn column_space_equal(m1: &IntMatrix, m2: &IntMatrix) -> Result<bool> {
    let joined = m1.hconcat(m2)?;
    let r1 = int_rank(m1);
    let r2 = int_rank(m2);
    Ok(r1 == r2 && int_rank(&joined) == r1)
}

/// Absolute value of the largest entry, used in diagnostics.
pub fn max_abs_entry(m: &IntMatrix) -> BigInt {
    m.data.iter().map(|x| x.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Plain Gaussian elimination over the rationals.
    fn rational_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect();
        let ncols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    for k in 0..ncols {
                        let t = &f * &m[r][k];
                        m[i][k] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn rank_basic() {
        assert_eq!(int_rank(&IntMatrix::identity(4)), 4);
        assert_eq!(int_rank(&IntMatrix::zeros(3, 5)), 0);
        assert_eq!(int_rank(&IntMatrix::zeros(0, 0)), 0);
        let w = IntMatrix::from_i64_rows(&[
            vec![1, 2],
            vec![1, 2],
            vec![1, 2],
            vec![1, 2],
            vec![1, 5],
            vec![1, 5],
        ])
        .unwrap();
        assert_eq!(int_rank(&w), 2);
    }

    #[test]
    fn rank_with_skipped_columns() {
        let m = IntMatrix::from_i64_rows(&[vec![0, 1, 2, 3], vec![0, 2, 4, 7], vec![0, 3, 6, 1]])
            .unwrap();
        assert_eq!(int_rank(&m), 2);
    }

    #[test]
    fn solve_identity() {
        let b = bi(&[3, -1, 7]);
        let x = solve_rational(&IntMatrix::identity(3), &b)
            .unwrap()
            .unwrap();
        assert_eq!(x.to_integers().unwrap(), b);
    }

    #[test]
    fn solve_outside_span() {
        let a = IntMatrix::from_i64_rows(&[vec![1], vec![1]]).unwrap();
        assert_eq!(solve_rational(&a, &bi(&[1, 0])).unwrap(), None);
    }

    #[test]
    fn solve_fractional() {
        // 2x = 1, 3y = 1 stacked with a redundant row
        let a = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3], vec![2, 3]]).unwrap();
        let x = solve_rational(&a, &bi(&[1, 1, 2])).unwrap().unwrap();
        assert_eq!(x.0, vec![rat(1, 2), rat(1, 3)]);
        assert!(!x.is_integral());
    }

    #[test]
    fn solve_rank_deficient_is_error() {
        let a = IntMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(matches!(
            solve_rational(&a, &bi(&[1, 2])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn column_spaces() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2], vec![1, 5], vec![1, 2]]).unwrap();
        assert!(column_space_equal(&m, &m).unwrap());
        let other = IntMatrix::from_i64_rows(&[vec![1, 3], vec![1, 4], vec![1, 3]]).unwrap();
        assert!(column_space_equal(&m, &other).unwrap());
        let off = IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 1], vec![0, 0]]).unwrap();
        assert!(!column_space_equal(&m, &off).unwrap());
        let short = IntMatrix::zeros(2, 1);
        assert!(matches!(
            column_space_equal(&m, &short),
            Err(Error::Dimension(_))
        ));
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-9i64..=9, 8), 8)
    }

    fn arb_low_rank() -> impl Strategy<Value = Vec<Vec<i64>>> {
        // products of 8x3 and 3x8 factors give rank <= 3
        (
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 8),
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, 8), 3),
        )
            .prop_map(|(l, r)| {
                (0..8)
                    .map(|i| {
                        (0..8)
                            .map(|j| (0..3).map(|k| l[i][k] * r[k][j]).sum())
                            .collect()
                    })
                    .collect()
            })
    }

    proptest! {
        #[test]
        fn rank_matches_rational_oracle(rows in arb_matrix()) {
            let m = IntMatrix::from_i64_rows(&rows).unwrap();
            prop_assert_eq!(int_rank(&m), rational_rank(&rows));
        }

        #[test]
        fn low_rank_matches_rational_oracle(rows in arb_low_rank()) {
            let m = IntMatrix::from_i64_rows(&rows).unwrap();
            prop_assert_eq!(int_rank(&m), rational_rank(&rows));
        }

        #[test]
        fn joined_rank_dominates(a in arb_low_rank(), b in arb_low_rank()) {
            let ma = IntMatrix::from_i64_rows(&a).unwrap();
            let mb = IntMatrix::from_i64_rows(&b).unwrap();
            let joined = int_rank(&ma.hconcat(&mb).unwrap());
            prop_assert!(joined >= int_rank(&ma).max(int_rank(&mb)));
        }
    }
}
