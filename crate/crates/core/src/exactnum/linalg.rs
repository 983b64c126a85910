//! Rank, kernels, linear solves and inverses over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Matrix, Rational};
use crate::error::{contract, shape, Result};

/// Scales every row to integers (multiplying by the lcm of its denominators).
fn integer_rows(a: &Matrix) -> Vec<Vec<BigInt>> {
    (0..a.rows())
        .map(|i| {
            let row = a.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Rank over ℚ by fraction-free (Bareiss) elimination on integer rows.
pub fn mat_rank(a: &Matrix) -> usize {
    let mut m = integer_rows(a);
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                // Exact division: Sylvester's identity guarantees divisibility.
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square matrix, by Bareiss elimination over ℚ.
pub fn determinant(a: &Matrix) -> Result<Rational> {
    if !a.is_square() {
        return Err(shape("determinant of a non-square matrix"));
    }
    let n = a.rows();
    let mut scale = Rational::one();
    let mut m = integer_rows(a);
    for i in 0..n {
        let l = (0..a.cols()).fold(BigInt::one(), |acc, j| acc.lcm(a.get(i, j).denom()));
        scale = scale / Rational::from_integer(l);
    }
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k {
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = if n == 0 { BigInt::one() } else { m[n - 1][n - 1].clone() };
    Ok(Rational::from_integer(det) * scale * Rational::from(sign))
}

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref(a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut rows = a.to_rows();
    let (nr, nc) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (Matrix::from_rows(rows).unwrap_or_else(|_| Matrix::zeros(nr, nc)), pivots)
}

/// Scales a rational vector to coprime integers with first nonzero entry positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| Rational::from_integer(x / &g * &sign)).collect()
}

/// Basis of the right null space, one vector per free column in increasing
/// order, each scaled to primitive integers with first nonzero entry positive.
pub fn mat_kernel(a: &Matrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(a);
    let nc = a.cols();
    let free = (0..nc).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut v = vec![Rational::zero(); nc];
        v[f] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.get(row, f);
        }
        primitive_integer_vector(&v)
    })
    .collect()
}

/// Kernel basis as column matrices.
pub fn mat_kernel_columns(a: &Matrix) -> Vec<Matrix> {
    mat_kernel(a).iter().map(|v| Matrix::column(v)).collect()
}

/// Some solution of `a·x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero, so the answer is unique when `a` has full column rank.
pub fn solve(a: &Matrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.rows() {
        return Err(shape(format!("right-hand side of length {} for {} rows", b.len(), a.rows())));
    }
    let nc = a.cols();
    let aug = Matrix::from_rows(
        (0..a.rows())
            .map(|i| {
                let mut row = a.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect(),
    )?;
    let aug = if a.rows() == 0 { Matrix::zeros(0, nc + 1) } else { aug };
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&nc) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); nc];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, nc).clone();
    }
    Ok(Some(x))
}

pub fn inverse(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(shape("inverse of a non-square matrix"));
    }
    let n = a.rows();
    let aug = Matrix::from_rows(
        (0..n)
            .map(|i| {
                let mut row = a.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect(),
    )?;
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(contract("matrix is singular"));
    }
    Matrix::from_rows((0..n).map(|i| r.row(i)[n..].to_vec()).collect())
}

/// Stacks vectors as the rows of a matrix.
pub fn rows_matrix(vectors: &[Vec<Rational>], width: usize) -> Matrix {
    let mut m = Matrix::zeros(vectors.len(), width);
    for (i, v) in vectors.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

/// A linear subspace of ℚᵈ held in reduced echelon form.
///
/// Reduction modulo the subspace yields a canonical representative that is
/// zero in every pivot coordinate, i.e. a projection onto the complement
/// spanned by the non-pivot unit vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    dim_ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(vectors: &[Vec<Rational>], dim_ambient: usize) -> Self {
        let (r, pivots) = rref(&rows_matrix(vectors, dim_ambient));
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { dim_ambient, basis, pivots }
    }

    pub fn zero(dim_ambient: usize) -> Self {
        Subspace { dim_ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Canonical representative of `v` modulo the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (x, y) in out.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Rational::is_zero)
    }
}
