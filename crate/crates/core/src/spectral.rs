//! Adjacency spectra, principal main eigenvectors and the main characteristic polynomial.
//!
//! The eigendecomposition is floating point (cyclic Jacobi). Everything that decides a
//! discrete question is cross-checked against, or computed by, exact integer arithmetic:
//! the number of main eigenvalues must equal the rank of the walk matrix, and the main
//! polynomial comes from the walk recurrence.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int_rank, solve_rational};
use crate::graph::Graph;
use crate::walk::{walk_columns, walk_matrix_k};

/// Off-diagonal Frobenius norm must fall below this multiple of `‖A‖_F`.
pub const JACOBI_REL_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues closer than this are merged into one group.
pub const GROUPING_TOL: f64 = 1e-7;
/// An eigenvalue is main iff `‖P_i j‖² > MAIN_THRESHOLD_PER_VERTEX · n`.
pub const MAIN_THRESHOLD_PER_VERTEX: f64 = 1e-8;
/// Entrywise tolerance when comparing principal main eigenvectors.
pub const VECTOR_TOL: f64 = 1e-6;

/// One distinct eigenvalue with an orthonormal basis of its eigenspace.
#[derive(Clone, Debug, Serialize)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
    pub basis: Vec<Vec<f64>>,
}

/// Distinct eigenvalues in ascending order.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub groups: Vec<EigenGroup>,
}

impl Spectrum {
    /// All eigenvalues with multiplicity, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.groups
            .iter()
            .flat_map(|g| std::iter::repeat_n(g.value, g.multiplicity))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.groups.iter().map(|g| g.multiplicity).sum()
    }
}

/// Eigenvalues and orthonormal eigenvectors (as columns of the returned matrix, i.e.
/// `vectors[k]` is the `k`-th eigenvector) of a dense symmetric matrix by cyclic Jacobi
/// rotations. The pairs come back unsorted.
pub fn jacobi_eigen(matrix: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let frob = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let threshold = JACOBI_REL_TOL * frob;
    let off_norm = |a: &[Vec<f64>]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NumericFailure {
                sweeps,
                off_norm: off,
                matrix: format!("{matrix:?}"),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r][p];
                    let arq = a[r][q];
                    a[r][p] = c * arp - s * arq;
                    a[p][r] = a[r][p];
                    a[r][q] = s * arp + c * arq;
                    a[q][r] = a[r][q];
                }
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for row in v.iter_mut() {
                    let vrp = row[p];
                    let vrq = row[q];
                    row[p] = c * vrp - s * vrq;
                    row[q] = s * vrp + c * vrq;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i][i]).collect();
    let vectors = (0..n).map(|k| (0..n).map(|i| v[i][k]).collect()).collect();
    Ok((values, vectors))
}

pub fn spectrum(g: &Graph) -> Result<Spectrum> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Precondition("spectrum of the null graph".into()));
    }
    let a: Vec<Vec<f64>> = g
        .adjacency_matrix()
        .into_iter()
        .map(|r| r.into_iter().map(f64::from).collect())
        .collect();
    let (values, vectors) = jacobi_eigen(&a)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));

    let mut groups: Vec<EigenGroup> = Vec::new();
    let mut members: Vec<usize> = Vec::new();
    let flush = |members: &mut Vec<usize>, groups: &mut Vec<EigenGroup>| {
        if members.is_empty() {
            return;
        }
        let value = members.iter().map(|&i| values[i]).sum::<f64>() / members.len() as f64;
        groups.push(EigenGroup {
            value,
            multiplicity: members.len(),
            basis: members.iter().map(|&i| vectors[i].clone()).collect(),
        });
        members.clear();
    };
    for &i in &order {
        if let Some(&last) = members.last() {
            if values[i] - values[last] >= GROUPING_TOL {
                flush(&mut members, &mut groups);
            }
        }
        members.push(i);
    }
    flush(&mut members, &mut groups);
    Ok(Spectrum { groups })
}

/// Monic integer polynomial, coefficients stored lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MainPolynomial {
    coeffs: Vec<BigInt>,
}

impl MainPolynomial {
    /// `x^p - c_{p-1} x^{p-1} - ... - c_0` from the recurrence coefficients `c_0 .. c_{p-1}`.
    pub fn from_recurrence(c: &[BigInt]) -> Self {
        let mut coeffs: Vec<BigInt> = c.iter().map(|x| -x).collect();
        coeffs.push(BigInt::one());
        MainPolynomial { coeffs }
    }

    /// Coefficients lowest degree first; the last one is 1.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Recurrence coefficients `c_i` with `A^p j = Σ c_i A^i j`.
    pub fn recurrence(&self) -> Vec<BigInt> {
        self.coeffs[..self.degree()].iter().map(|x| -x).collect()
    }
}

impl fmt::Display for MainPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = !mag.is_one() || deg == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match deg {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{deg}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MainPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MainPolynomial({self})")
    }
}

/// Number of main eigenvalues, computed exactly as the rank of the `n`-walk matrix.
pub fn exact_main_count(g: &Graph) -> usize {
    if g.order() == 0 {
        return 0;
    }
    int_rank(&walk_matrix_k(g, g.order()))
}

/// Main characteristic polynomial from the walk recurrence `W(p) c = A^p j`.
pub fn exact_main_polynomial(g: &Graph) -> Result<MainPolynomial> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Precondition(
            "main polynomial of the null graph".into(),
        ));
    }
    let cols = walk_columns(g, n + 1);
    let w_n = crate::exact::IntMatrix::from_columns(n, &cols[..n])?;
    let p = int_rank(&w_n);
    let w_p = w_n.leading_columns(p);
    let c = solve_rational(&w_p, &cols[p])?.ok_or_else(|| {
        Error::Internal(format!(
            "A^{p} j is outside the span of the first {p} walk columns"
        ))
    })?;
    let ints = c.to_integers().ok_or_else(|| {
        Error::Internal(format!(
            "main polynomial has non-integral recurrence coefficients {:?} for {g:?}",
            c.0.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        ))
    })?;
    Ok(MainPolynomial::from_recurrence(&ints))
}

/// A main eigenvalue with its principal main eigenvector `P_i j` and weight `‖P_i j‖²`.
#[derive(Clone, Debug, Serialize)]
pub struct MainEigen {
    pub value: f64,
    pub vector: Vec<f64>,
    pub weight: f64,
}

#[derive(Clone, Debug)]
pub struct MainDecomposition {
    pub p: usize,
    pub mains: Vec<MainEigen>,
    pub main_poly: MainPolynomial,
    /// Projections of `j` onto every eigenspace, main or not, in spectrum order.
    pub projections: Vec<Vec<f64>>,
    pub spectrum: Spectrum,
}

fn project_ones(basis: &[Vec<f64>]) -> Vec<f64> {
    let n = basis.first().map_or(0, Vec::len);
    let mut out = vec![0.0; n];
    for b in basis {
        let dot: f64 = b.iter().sum();
        for (o, x) in out.iter_mut().zip(b) {
            *o += dot * x;
        }
    }
    out
}

pub fn main_decomposition(g: &Graph) -> Result<MainDecomposition> {
    let n = g.order();
    let spectrum = spectrum(g)?;
    let threshold = MAIN_THRESHOLD_PER_VERTEX * n as f64;
    let mut mains = Vec::new();
    let mut projections = Vec::with_capacity(spectrum.groups.len());
    for group in &spectrum.groups {
        let pj = project_ones(&group.basis);
        let weight: f64 = pj.iter().map(|x| x * x).sum();
        if weight > threshold {
            mains.push(MainEigen {
                value: group.value,
                vector: pj.clone(),
                weight,
            });
        }
        projections.push(pj);
    }

    let p_exact = exact_main_count(g);
    if mains.len() != p_exact {
        let weights: Vec<String> = spectrum
            .groups
            .iter()
            .zip(&projections)
            .map(|(grp, pj)| {
                format!(
                    "{:.12}: {:e}",
                    grp.value,
                    pj.iter().map(|x| x * x).sum::<f64>()
                )
            })
            .collect();
        return Err(Error::ToleranceFailure(format!(
            "float classification found {} main eigenvalues but the walk matrix has rank {p_exact}; \
             graph {g:?}; eigenvalue: ‖P j‖² = [{}]; threshold {threshold:e}",
            mains.len(),
            weights.join(", ")
        )));
    }

    let main_poly = exact_main_polynomial(g)?;
    Ok(MainDecomposition {
        p: p_exact,
        mains,
        main_poly,
        projections,
        spectrum,
    })
}

/// Same set of main eigenvalues, decided on the exact main polynomials.
pub fn comain(g: &Graph, h: &Graph) -> Result<bool> {
    Ok(exact_main_polynomial(g)? == exact_main_polynomial(h)?)
}

fn vectors_close(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= VECTOR_TOL)
}

/// Matches two families of principal main eigenvectors. Distinct principal main
/// eigenvectors are mutually orthogonal, so a vector can be close to at most one partner
/// and greedy matching is optimal.
pub fn principal_vectors_match(a: &MainDecomposition, b: &MainDecomposition) -> bool {
    if a.p != b.p {
        return false;
    }
    let mut used = vec![false; b.mains.len()];
    for x in &a.mains {
        let hit = b
            .mains
            .iter()
            .enumerate()
            .find(|(k, y)| !used[*k] && vectors_close(&x.vector, &y.vector));
        match hit {
            Some((k, _)) => used[k] = true,
            None => return false,
        }
    }
    true
}

pub fn same_principal_main_vectors(g: &Graph, h: &Graph) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    Ok(principal_vectors_match(
        &main_decomposition(g)?,
        &main_decomposition(h)?,
    ))
}

/// Total number of walks of length `k`, the sum of the entries of `A^k j`.
pub fn walk_count_total(g: &Graph, k: usize) -> BigInt {
    let cols = walk_columns(g, k + 1);
    cols[k].iter().sum()
}
