use super::MatrixLieBasis;
use crate::error::{contract, Result};
use crate::exactnum::{Matrix, Rational};

/// `η = diag(1,…,1,−1,…,−1)` with `p` ones and `q` minus-ones.
pub fn pq_form(p: usize, q: usize) -> Matrix {
    let diag: Vec<Rational> = (0..p + q).map(|i| if i < p { Rational::one() } else { Rational::from(-1) }).collect();
    Matrix::diagonal(&diag)
}

/// Basis of `so(p,q) = {X : Xᵀη + ηX = 0}`.
///
/// Order: rotations `Eᵢⱼ − Eⱼᵢ` inside the positive block, then inside the
/// negative block, then boosts `Eᵢⱼ + Eⱼᵢ` across the blocks, each lexicographic.
pub fn so_pq_basis(p: usize, q: usize) -> Result<MatrixLieBasis> {
    let n = p + q;
    if n == 0 {
        return Err(contract("so(p,q) needs p + q >= 1"));
    }
    let unit = |i, j| Matrix::unit(n, i, j);
    let mut basis = Vec::with_capacity(n * (n - 1) / 2);
    let rotations = (0..p).flat_map(|i| (i + 1..p).map(move |j| (i, j))).chain((p..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))));
    for (i, j) in rotations {
        basis.push(unit(i, j).sub(&unit(j, i))?);
    }
    for i in 0..p {
        for j in p..n {
            basis.push(unit(i, j).add(&unit(j, i))?);
        }
    }
    MatrixLieBasis::new(n, basis)
}
