//! Homogeneity and local-symmetry criteria, and the first-Bianchi subspace.

use serde::{Deserialize, Serialize};

use super::data::CartanData;
use super::hommap::HomMap2;
use crate::error::{shape, Result};
use crate::exactnum::vector::{add_vec, is_zero_vec};
use crate::exactnum::Rational;

/// `T = 0` and `F ≡ 0 (mod 𝔨)`. By equivariance, vanishing at the base
/// point is vanishing on the whole orbit.
pub fn is_locally_symmetric_data(d: &CartanData) -> bool {
    // F is stored canonically modulo 𝔨, so "zero mod 𝔨" is plain zero.
    d.torsion().is_zero() && d.anchor_map().is_zero()
}

/// Always true: both base kinds are a single orbit of the `G`-action.
pub fn is_homogeneous_data(_d: &CartanData) -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BianchiMembership {
    pub holds: bool,
    /// `(i, j, k)` and `K(eᵢ)(eⱼ,eₖ) + K(eⱼ)(eₖ,eᵢ) + K(eₖ)(eᵢ,eⱼ)`.
    pub witness: Option<(usize, usize, usize, Vec<Rational>)>,
}

/// Whether `K(u)(v,w) + K(v)(w,u) + K(w)(u,v) = 0`, with `K` given by its
/// slices `K(e₀), …, K(eₙ₋₁)`.
///
/// Triples with a repeated index vanish for any `K`, because each term is
/// antisymmetric in its last two slots, so only `i < j < k` are checked.
pub fn first_bianchi_membership(k: &[HomMap2]) -> Result<BianchiMembership> {
    let n = k.len();
    let t = k.first().map_or(0, HomMap2::target_dim);
    if let Some(bad) = k.iter().position(|m| m.n() != n || m.target_dim() != t) {
        return Err(shape(format!("slice {bad} does not match n = {n} and target dimension {t}")));
    }
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let s = add_vec(&add_vec(&k[i].at(j, l), &k[j].at(l, i)), &k[l].at(i, j));
                if !is_zero_vec(&s) {
                    return Ok(BianchiMembership { holds: false, witness: Some((i, j, l, s)) });
                }
            }
        }
    }
    Ok(BianchiMembership { holds: true, witness: None })
}
