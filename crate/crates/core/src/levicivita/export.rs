use std::collections::VecDeque;

use super::{koszul_connection, CurvatureTensor, MetricLieGroupSpec};
use crate::cartan::{BaseDescriptor, CartanData, HomMap2};
use crate::error::{contract, Error, Result};
use crate::exactnum::{determinant, Matrix};
use crate::liealg::{is_automorphism, is_derivation, so_pq_basis};

pub const DEFAULT_CLOSURE_CAP: usize = 64;

/// The group generated by `gens` under multiplication, in discovery order.
pub fn isotropy_group_closure(gens: &[Matrix]) -> Result<Vec<Matrix>> {
    isotropy_group_closure_with_cap(gens, DEFAULT_CLOSURE_CAP)
}

pub fn isotropy_group_closure_with_cap(gens: &[Matrix], cap: usize) -> Result<Vec<Matrix>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let n = first.rows();
    for g in gens {
        if g.rows() != n || g.cols() != n {
            return Err(crate::error::shape(format!("generators must all be {n}x{n}")));
        }
        if determinant(g)?.is_zero() {
            return Err(contract("isotropy generator is singular"));
        }
    }
    let mut elems: Vec<Matrix> = Vec::new();
    let mut queue: VecDeque<Matrix> = VecDeque::new();
    for g in gens {
        if !elems.contains(g) {
            elems.push(g.clone());
            queue.push_back(g.clone());
        }
    }
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g)?;
            if !elems.contains(&y) {
                if elems.len() == cap {
                    return Err(Error::ClosureCapExceeded { cap });
                }
                elems.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    if elems.len() > cap {
        return Err(Error::ClosureCapExceeded { cap });
    }
    Ok(elems)
}

fn is_orthogonal(k: &Matrix) -> bool {
    k.transpose().mul(k).map(|p| p == Matrix::identity(k.rows())).unwrap_or(false)
}

/// Cartan data of the orthonormal frame bundle of a left-invariant metric,
/// modeled at the identity frame:
/// `𝔤 = so(n)`, homogeneous base with isotropy `𝔨`, `T = 0`, `R` the
/// curvature and `F(u) = −∇_u` in `so(n)` coordinates.
///
/// The sign of `F` comes from the left translations: they are isometries
/// fixing every invariant function, and at the identity frame the one
/// generated by `u ∈ 𝔥` has components `(u, ∇_u)`, so `ρ(u, ∇_u) = 0`.
///
/// `group` holds isometries fixing the identity (orthogonal automorphisms of
/// `𝔥`); a finite group contributes nothing to `𝔨`. `algebra` holds matrices
/// spanning a continuous isotropy `𝔨`, each an antisymmetric derivation.
pub fn export_cartan_data_with_algebra(
    spec: &MetricLieGroupSpec,
    curv: &CurvatureTensor,
    group: &[Matrix],
    algebra: &[Matrix],
) -> Result<CartanData> {
    let n = spec.dim();
    let sc = spec.constants();
    if curv.n() != n {
        return Err(contract(format!("curvature is {}-dimensional, the algebra {n}", curv.n())));
    }
    if n < 2 {
        return Err(contract("export needs dim 𝔥 >= 2"));
    }
    for (idx, k) in group.iter().enumerate() {
        if k.rows() != n || k.cols() != n {
            return Err(contract(format!("isotropy element {idx} is not {n}x{n}")));
        }
        if !is_orthogonal(k) {
            return Err(contract(format!("isotropy element {idx} is not orthogonal")));
        }
        if !is_automorphism(sc, k)? {
            return Err(contract(format!("isotropy element {idx} is not an automorphism")));
        }
    }
    let g = so_pq_basis(n, 0)?;
    let mut isotropy = Vec::with_capacity(algebra.len());
    for (idx, a) in algebra.iter().enumerate() {
        if a.rows() != n || a.cols() != n || !a.is_antisymmetric() || !is_derivation(sc, a)? {
            return Err(contract(format!("isotropy algebra element {idx} is not a skew derivation")));
        }
        isotropy.push(g.coordinates(a)?.expect("antisymmetric matrices lie in so(n)"));
    }
    let conn = koszul_connection(spec);
    let mut f0 = Matrix::zeros(g.dim(), n);
    for u in 0..n {
        let col = g.coordinates(&conn.matrix(u))?.expect("Levi-Civita is metric");
        for (r, x) in col.into_iter().enumerate() {
            f0.set(r, u, -x);
        }
    }
    let r0 = curv.to_hom_map(&g)?;
    CartanData::new(n, g, BaseDescriptor::Homogeneous { isotropy }, HomMap2::zero(n, n), r0, Some(f0))
}

/// [`export_cartan_data_with_algebra`] for a finite isotropy group.
pub fn export_cartan_data(spec: &MetricLieGroupSpec, curv: &CurvatureTensor, group: &[Matrix]) -> Result<CartanData> {
    export_cartan_data_with_algebra(spec, curv, group, &[])
}
