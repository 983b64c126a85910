//! Adjoint maps, Killing forms, automorphism tests and fingerprints.

use serde::{Deserialize, Serialize};

use super::StructureConstants;
use crate::error::{contract, shape, Result};
use crate::exactnum::vector::unit_vec;
use crate::exactnum::{determinant, mat_kernel, sym_signature, Matrix, Rational, Signature, Subspace};

/// Matrix of `[x, ·]`: column `j` holds the coefficients of `[x, bⱼ]`.
pub fn ad(sc: &StructureConstants, x: &[Rational]) -> Result<Matrix> {
    let d = sc.dim();
    if x.len() != d {
        return Err(shape(format!("ad of a length-{} vector in dimension {d}", x.len())));
    }
    let mut m = Matrix::zeros(d, d);
    for j in 0..d {
        let col = sc.bracket(x, &unit_vec(d, j))?;
        for (k, v) in col.into_iter().enumerate() {
            m.set(k, j, v);
        }
    }
    Ok(m)
}

/// `B[i][j] = tr(ad bᵢ · ad bⱼ)`.
pub fn killing_form(sc: &StructureConstants) -> Matrix {
    let d = sc.dim();
    let ads: Vec<Matrix> = (0..d).map(|i| ad(sc, &unit_vec(d, i)).expect("basis vector has length d")).collect();
    let mut b = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let t = ads[i].mul(&ads[j]).expect("square").trace();
            b.set(j, i, t.clone());
            b.set(i, j, t);
        }
    }
    b
}

/// Whether `g` (acting on coefficient columns) preserves every basis bracket.
pub fn is_automorphism(sc: &StructureConstants, g: &Matrix) -> Result<bool> {
    let d = sc.dim();
    if g.rows() != d || g.cols() != d {
        return Err(shape(format!("automorphism candidate must be {d}x{d}")));
    }
    if determinant(g)?.is_zero() {
        return Err(contract("automorphism candidate is singular"));
    }
    let images: Vec<Vec<Rational>> = (0..d).map(|i| g.col(i)).collect();
    for i in 0..d {
        for j in i + 1..d {
            let lhs = g.apply(sc.bracket_basis(i, j))?;
            let rhs = sc.bracket(&images[i], &images[j])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `D[x,y] = [Dx,y] + [x,Dy]` on all basis pairs.
pub fn is_derivation(sc: &StructureConstants, dmat: &Matrix) -> Result<bool> {
    let d = sc.dim();
    if dmat.rows() != d || dmat.cols() != d {
        return Err(shape(format!("derivation candidate must be {d}x{d}")));
    }
    for i in 0..d {
        for j in i + 1..d {
            let lhs = dmat.apply(sc.bracket_basis(i, j))?;
            let a = sc.bracket(&dmat.col(i), &unit_vec(d, j))?;
            let b = sc.bracket(&unit_vec(d, i), &dmat.col(j))?;
            let rhs: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Span of `[a, b]` over basis vectors of `a` and `b`.
pub fn bracket_span(sc: &StructureConstants, a: &Subspace, b: &Subspace) -> Subspace {
    let mut gens = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            gens.push(sc.bracket(x, y).expect("vectors of length d"));
        }
    }
    Subspace::span(&gens, sc.dim())
}

/// Whether the span of `vectors` is closed under the bracket.
pub fn is_subalgebra(sc: &StructureConstants, vectors: &[Vec<Rational>]) -> Result<bool> {
    if let Some(v) = vectors.iter().find(|v| v.len() != sc.dim()) {
        return Err(shape(format!("vector of length {} in dimension {}", v.len(), sc.dim())));
    }
    let s = Subspace::span(vectors, sc.dim());
    Ok(vectors.iter().all(|x| vectors.iter().all(|y| s.contains(&sc.bracket(x, y).expect("checked lengths")))))
}

/// Isomorphism-invariant data of a Lie algebra. Equal fingerprints are a
/// necessary, not sufficient, condition for isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraFingerprint {
    pub dim: usize,
    pub killing_signature: Signature,
    pub center_dim: usize,
    pub derived_series_dims: Vec<usize>,
    pub lower_central_dims: Vec<usize>,
}

impl AlgebraFingerprint {
    pub fn verdict(&self, other: &AlgebraFingerprint) -> &'static str {
        if self == other {
            "fingerprints match"
        } else {
            "fingerprints differ (non-isomorphic)"
        }
    }
}

/// Iterates `next` from the full algebra until a dimension repeats or hits 0.
fn series(sc: &StructureConstants, next: impl Fn(&Subspace) -> Subspace) -> Vec<usize> {
    let d = sc.dim();
    let mut current = Subspace::span(&(0..d).map(|i| unit_vec(d, i)).collect::<Vec<_>>(), d);
    let mut dims = vec![current.dim()];
    while current.dim() > 0 {
        let following = next(&current);
        let repeat = following.dim() == current.dim();
        dims.push(following.dim());
        if repeat {
            break;
        }
        current = following;
    }
    dims
}

pub fn center_dim(sc: &StructureConstants) -> usize {
    let d = sc.dim();
    // x ↦ ad(x) flattened: row (j, k) column i holds c[i][j][k].
    let mut m = Matrix::zeros(d * d, d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                m.set(j * d + k, i, sc.get(i, j, k).clone());
            }
        }
    }
    mat_kernel(&m).len()
}

pub fn fingerprint(sc: &StructureConstants) -> Result<AlgebraFingerprint> {
    let d = sc.dim();
    let full = Subspace::span(&(0..d).map(|i| unit_vec(d, i)).collect::<Vec<_>>(), d);
    Ok(AlgebraFingerprint {
        dim: d,
        killing_signature: sym_signature(&killing_form(sc))?,
        center_dim: center_dim(sc),
        derived_series_dims: series(sc, |s| bracket_span(sc, s, s)),
        lower_central_dims: series(sc, |s| bracket_span(sc, &full, s)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::vector::ints;

    fn so3() -> StructureConstants {
        StructureConstants::unimodular3(Rational::one(), Rational::one(), Rational::one())
    }

    /// so(2) ⋉ ℝ² in the basis (J, t₁, t₂): [J,t₁]=t₂, [J,t₂]=−t₁.
    fn iso2() -> StructureConstants {
        StructureConstants::from_brackets(3, [(0, 1, ints(&[0, 0, 1])), (0, 2, ints(&[0, -1, 0]))]).unwrap()
    }

    #[test]
    fn ad_examples() {
        assert!(ad(&so3(), &ints(&[0, 0, 0])).unwrap().is_zero());
        let a = ad(&so3(), &ints(&[1, 0, 0])).unwrap();
        let mut want = Matrix::zeros(3, 3);
        want.set(2, 1, Rational::one());
        want.set(1, 2, Rational::from(-1));
        assert_eq!(a, want);
        assert!(ad(&StructureConstants::abelian(3), &ints(&[4, 5, 6])).unwrap().is_zero());
        assert!(ad(&so3(), &ints(&[1])).is_err());
    }

    #[test]
    fn killing_examples() {
        assert!(killing_form(&StructureConstants::abelian(3)).is_zero());
        assert_eq!(killing_form(&so3()), Matrix::identity(3).scale(&Rational::from(-2)));
        let two = StructureConstants::from_brackets(2, [(0, 1, ints(&[0, 1]))]).unwrap();
        assert_eq!(killing_form(&two), Matrix::from_ints(&[[1, 0], [0, 0]]));
    }

    #[test]
    fn automorphism_examples() {
        assert!(is_automorphism(&so3(), &Matrix::identity(3)).unwrap());
        let su2 = StructureConstants::unimodular3(Rational::from(8), Rational::from(2), Rational::frac(1, 2));
        assert!(is_automorphism(&su2, &Matrix::from_ints(&[[1, 0, 0], [0, -1, 0], [0, 0, -1]])).unwrap());
        assert!(!is_automorphism(&so3(), &Matrix::from_ints(&[[2, 0, 0], [0, 1, 0], [0, 0, 1]])).unwrap());
        assert!(is_automorphism(&so3(), &Matrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn derivations() {
        // ad(x) is always a derivation.
        let sc = so3();
        assert!(is_derivation(&sc, &ad(&sc, &ints(&[1, 2, 3])).unwrap()).unwrap());
        assert!(!is_derivation(&sc, &Matrix::identity(3)).unwrap());
    }

    #[test]
    fn fingerprint_examples() {
        let f = fingerprint(&so3()).unwrap();
        assert_eq!(f.dim, 3);
        assert_eq!(f.killing_signature, Signature::new(0, 3, 0));
        assert_eq!(f.center_dim, 0);
        assert_eq!(f.derived_series_dims, vec![3, 3]);
        assert_eq!(f.lower_central_dims, vec![3, 3]);

        let f = fingerprint(&StructureConstants::abelian(2)).unwrap();
        assert_eq!(f.killing_signature, Signature::new(0, 0, 2));
        assert_eq!(f.center_dim, 2);
        assert_eq!(f.derived_series_dims, vec![2, 0]);

        let f = fingerprint(&iso2()).unwrap();
        assert_eq!(f.killing_signature, Signature::new(0, 1, 2));
        assert_eq!(f.center_dim, 0);
        assert_eq!(f.derived_series_dims, vec![3, 2, 0]);
        assert_eq!(f.lower_central_dims, vec![3, 2, 2]);
        assert_eq!(f.verdict(&fingerprint(&so3()).unwrap()), "fingerprints differ (non-isomorphic)");
    }

    #[test]
    fn subalgebra_check() {
        let sc = so3();
        assert!(is_subalgebra(&sc, &[ints(&[1, 0, 0])]).unwrap());
        assert!(!is_subalgebra(&sc, &[ints(&[1, 0, 0]), ints(&[0, 1, 0])]).unwrap());
        assert!(is_subalgebra(&iso2(), &[ints(&[0, 1, 0]), ints(&[0, 0, 1])]).unwrap());
    }
}
