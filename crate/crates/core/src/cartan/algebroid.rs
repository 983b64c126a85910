//! Bracket, anchor and the infinitesimal equivariance calculus at the base point.

use super::data::{CartanData, Section};
use super::hommap::HomMap2;
use crate::error::{contract, shape, Result};
use crate::exactnum::vector::{add_vec, sub_vec, zero_vec};
use crate::exactnum::Rational;
use crate::liealg::StructureConstants;

/// Which space a [`HomMap2`] takes values in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapTarget {
    /// `ℝⁿ`, acted on through the matrix realization of `𝔤`.
    Rn,
    /// `𝔤`, acted on by the adjoint action.
    G,
}

pub(crate) fn constants(d: &CartanData) -> Result<&StructureConstants> {
    d.g_constants().ok_or_else(|| contract("g is not closed under the commutator"))
}

fn check_section(d: &CartanData, s: &Section) -> Result<()> {
    if s.u.len() != d.n() || s.alpha.len() != d.g_dim() {
        return Err(shape(format!("section ({}, {}) for ℝ^{} ⊕ 𝔤 with dim 𝔤 = {}", s.u.len(), s.alpha.len(), d.n(), d.g_dim())));
    }
    Ok(())
}

/// `α·v` through the matrix realization `𝔤 ⊂ gl_n`.
pub fn act(d: &CartanData, alpha: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
    d.g().matrix_of(alpha)?.apply(v)
}

/// `[(u,α),(v,β)] = (α·v − β·u − T(u,v), [α,β] − R(u,v))` at the base point.
pub fn bracket_constant_sections(d: &CartanData, s1: &Section, s2: &Section) -> Result<Section> {
    check_section(d, s1)?;
    check_section(d, s2)?;
    let sc = constants(d)?;
    let w = sub_vec(&sub_vec(&act(d, &s1.alpha, &s2.u)?, &act(d, &s2.alpha, &s1.u)?), &d.torsion().eval(&s1.u, &s2.u)?);
    let gamma = sub_vec(&sc.bracket(&s1.alpha, &s2.alpha)?, &d.curvature().eval(&s1.u, &s2.u)?);
    Ok(Section { u: w, alpha: gamma })
}

/// A `𝔤`-vector representing `ρ(u,α) = F(u) + ψ(α)` in `T_{x₀}X = 𝔤/𝔨`.
/// Not reduced modulo `𝔨`; see [`anchor`] for the canonical class.
pub fn anchor_representative(d: &CartanData, s: &Section) -> Result<Vec<Rational>> {
    check_section(d, s)?;
    if d.is_point_base() {
        return Ok(zero_vec(d.g_dim()));
    }
    Ok(add_vec(&d.anchor_map().apply(&s.u)?, &s.alpha))
}

/// The anchor as the canonical representative of its class in `𝔤/𝔨`.
/// Over a point base it is identically zero.
pub fn anchor(d: &CartanData, s: &Section) -> Result<Vec<Rational>> {
    let rep = anchor_representative(d, s)?;
    Ok(d.isotropy().reduce(&rep))
}

/// Derivative of an equivariant map along `ψ(β)` at the base point:
/// `−[β, m(u,v)] + m(βu, v) + m(u, βv)` for `𝔤`-valued `m` and
/// `−β·m(u,v) + m(βu, v) + m(u, βv)` for `ℝⁿ`-valued `m`.
pub fn equivariant_derivative(d: &CartanData, beta: &[Rational], m: &HomMap2, target: MapTarget) -> Result<HomMap2> {
    let n = d.n();
    if beta.len() != d.g_dim() {
        return Err(shape(format!("direction of length {} in 𝔤 of dim {}", beta.len(), d.g_dim())));
    }
    let want = match target {
        MapTarget::Rn => n,
        MapTarget::G => d.g_dim(),
    };
    if m.n() != n || m.target_dim() != want {
        return Err(shape(format!("map does not take values in the declared target {target:?}")));
    }
    let bmat = d.g().matrix_of(beta)?;
    // Column j of β is β·eⱼ.
    let beta_e: Vec<Vec<Rational>> = (0..n).map(|j| bmat.col(j)).collect();
    let sc = match target {
        MapTarget::G => Some(constants(d)?),
        MapTarget::Rn => None,
    };
    HomMap2::from_fn(n, want, |i, j| {
        let value = m.at(i, j);
        let acted = match sc {
            Some(sc) => sc.bracket(beta, &value)?,
            None => bmat.apply(&value)?,
        };
        let ei = crate::exactnum::vector::unit_vec(n, i);
        let ej = crate::exactnum::vector::unit_vec(n, j);
        let shifted = add_vec(&m.eval(&beta_e[i], &ej)?, &m.eval(&ei, &beta_e[j])?);
        Ok(sub_vec(&shifted, &acted))
    })
}

/// Derivative along `ψ(γ)` of the `𝔤`-valued lift `g ↦ Ad_{g⁻¹} F(g·u)` of the
/// vector field `F(u)`: `F(γ·u) − [γ, F(u)]`.
pub fn anchor_map_derivative(d: &CartanData, gamma: &[Rational], u: &[Rational]) -> Result<Vec<Rational>> {
    let sc = constants(d)?;
    let f = d.anchor_map();
    let gu = act(d, gamma, u)?;
    Ok(sub_vec(&f.apply(&gu)?, &sc.bracket(gamma, &f.apply(u)?)?))
}
