use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::StructureConstants;
use crate::error::{shape, Error, Result};
use crate::exactnum::vector::{axpy, zero_vec};
use crate::exactnum::{inverse, mat_rank, rref, Matrix, Rational};

/// Linearly independent `n × n` matrices spanning a subalgebra of `gl_n`.
///
/// A square invertible minor of the flattened basis is cached so that
/// coordinates of a matrix in the span cost one small product.
#[derive(Clone)]
pub struct MatrixLieBasis {
    ambient: usize,
    basis: Vec<Matrix>,
    pick: Vec<usize>,
    minor_inv: Matrix,
}

impl PartialEq for MatrixLieBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for MatrixLieBasis {}

impl std::fmt::Debug for MatrixLieBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixLieBasis").field("ambient", &self.ambient).field("basis", &self.basis).finish()
    }
}

impl MatrixLieBasis {
    /// Checks shapes and linear independence. Closure is checked by
    /// [`structure_constants_from_matrices`].
    pub fn new(ambient: usize, basis: Vec<Matrix>) -> Result<Self> {
        if let Some(bad) = basis.iter().position(|m| m.rows() != ambient || m.cols() != ambient) {
            return Err(shape(format!("basis element {bad} is not {ambient}x{ambient}")));
        }
        let d = basis.len();
        let nn = ambient * ambient;
        // Columns are the flattened basis matrices.
        let mut flat = Matrix::zeros(nn, d);
        for (j, m) in basis.iter().enumerate() {
            for (r, x) in m.entries().iter().enumerate() {
                flat.set(r, j, x.clone());
            }
        }
        let rank = mat_rank(&flat);
        if rank < d {
            return Err(Error::DependentBasis { rank, count: d });
        }
        // Pivot columns of the transposed echelon form index d independent rows.
        let (_, pick) = rref(&flat.transpose());
        let rows: Vec<Vec<Rational>> = pick.iter().map(|&r| flat.row(r).to_vec()).collect();
        let minor_inv = if d == 0 { Matrix::zeros(0, 0) } else { inverse(&Matrix::from_rows(rows)?)? };
        Ok(MatrixLieBasis { ambient, basis, pick, minor_inv })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// `Σ xᵢ bᵢ`.
    pub fn matrix_of(&self, x: &[Rational]) -> Result<Matrix> {
        if x.len() != self.dim() {
            return Err(shape(format!("{} coefficients for a {}-dim basis", x.len(), self.dim())));
        }
        let mut acc = zero_vec(self.ambient * self.ambient);
        for (xi, b) in x.iter().zip(&self.basis) {
            axpy(&mut acc, xi, b.entries());
        }
        Matrix::new(self.ambient, self.ambient, acc)
    }

    /// Coordinates of `m` in the basis, or `None` when `m` is outside the span.
    pub fn coordinates(&self, m: &Matrix) -> Result<Option<Vec<Rational>>> {
        if m.rows() != self.ambient || m.cols() != self.ambient {
            return Err(shape("matrix does not match the ambient size"));
        }
        let picked: Vec<Rational> = self.pick.iter().map(|&r| m.entries()[r].clone()).collect();
        let x = if self.dim() == 0 { Vec::new() } else { self.minor_inv.apply(&picked)? };
        if &self.matrix_of(&x)? == m {
            Ok(Some(x))
        } else {
            Ok(None)
        }
    }
}

/// Structure constants of a closed matrix basis: solves `[bᵢ,bⱼ] = Σ c_{ij}^k bₖ`.
pub fn structure_constants_from_matrices(b: &MatrixLieBasis) -> Result<StructureConstants> {
    let d = b.dim();
    let mut sc = StructureConstants::abelian(d);
    for i in 0..d {
        for j in i + 1..d {
            let comm = b.basis[i].commutator(&b.basis[j])?;
            let coeffs = b.coordinates(&comm)?.ok_or(Error::NotClosed { i, j })?;
            for (k, x) in coeffs.into_iter().enumerate() {
                sc.set(j, i, k, -&x);
                sc.set(i, j, k, x);
            }
        }
    }
    Ok(sc)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixLieBasisJson {
    ambient: usize,
    basis: Vec<Matrix>,
}

impl Serialize for MatrixLieBasis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixLieBasisJson { ambient: self.ambient, basis: self.basis.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MatrixLieBasis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixLieBasisJson::deserialize(deserializer)?;
        MatrixLieBasis::new(raw.ambient, raw.basis).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::vector::ints;

    fn e(n: usize, i: usize, j: usize) -> Matrix {
        Matrix::unit(n, i - 1, j - 1)
    }

    fn su2_frame() -> MatrixLieBasis {
        let a1 = e(3, 1, 3).sub(&e(3, 3, 1)).unwrap();
        let a2 = e(3, 1, 2).sub(&e(3, 2, 1)).unwrap().scale(&Rational::from(2));
        let a3 = e(3, 2, 3).sub(&e(3, 3, 2)).unwrap().scale(&Rational::from(4));
        MatrixLieBasis::new(3, vec![a1, a2, a3]).unwrap()
    }

    #[test]
    fn single_generator_is_abelian() {
        let b = MatrixLieBasis::new(2, vec![e(2, 1, 2)]).unwrap();
        let sc = structure_constants_from_matrices(&b).unwrap();
        assert_eq!(sc.dim(), 1);
        assert!(sc.is_abelian());
    }

    #[test]
    fn su2_frame_constants() {
        let sc = structure_constants_from_matrices(&su2_frame()).unwrap();
        // [A2,A3]=8A1, [A3,A1]=2A2, [A1,A2]=½A3
        assert_eq!(sc.bracket_basis(1, 2), &ints(&[8, 0, 0])[..]);
        assert_eq!(sc.bracket_basis(2, 0), &ints(&[0, 2, 0])[..]);
        assert_eq!(sc.bracket_basis(0, 1), &[Rational::zero(), Rational::zero(), Rational::frac(1, 2)][..]);
        assert_eq!(sc, StructureConstants::unimodular3(Rational::from(8), Rational::from(2), Rational::frac(1, 2)));
        assert!(sc.check_jacobi().is_ok());
    }

    #[test]
    fn not_closed_in_gl2() {
        let b = MatrixLieBasis::new(2, vec![e(2, 1, 1), e(2, 1, 2), e(2, 2, 1)]).unwrap();
        assert_eq!(structure_constants_from_matrices(&b), Err(Error::NotClosed { i: 1, j: 2 }));
    }

    #[test]
    fn dependent_basis_rejected() {
        let m = e(2, 1, 2);
        let err = MatrixLieBasis::new(2, vec![m.clone(), m.scale(&Rational::from(3))]).unwrap_err();
        assert_eq!(err, Error::DependentBasis { rank: 1, count: 2 });
        assert!(MatrixLieBasis::new(3, vec![e(2, 1, 2)]).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let b = su2_frame();
        let x = vec![Rational::frac(1, 3), Rational::from(-2), Rational::frac(5, 4)];
        let m = b.matrix_of(&x).unwrap();
        assert_eq!(b.coordinates(&m).unwrap(), Some(x));
        assert_eq!(b.coordinates(&Matrix::identity(3)).unwrap(), None);
    }
}
