//! The validity checker for Cartan data and the Bianchi cross-check.
//!
//! Every identity is evaluated at the base point only. Equivariance and
//! transitivity of the `G`-action carry it over the whole orbit.

use serde::{Deserialize, Serialize};

use super::algebroid::{act, anchor_map_derivative, bracket_constant_sections, constants, equivariant_derivative, MapTarget};
use super::data::{CartanData, Section};
use super::hommap::HomMap2;
use crate::error::{contract, Result};
use crate::exactnum::vector::{add_vec, axpy, is_zero_vec, neg_vec, sub_vec, unit_vec, zero_vec};
use crate::exactnum::Rational;
use crate::liealg::is_subalgebra;

pub const SCOPE_NOTE: &str = "identities evaluated at the base point; equivariance propagates them over the orbit";

/// A violated identity: the basis indices involved and the nonzero residual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub residual: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl Check {
    fn pass(name: &str) -> Self {
        Check { name: name.into(), passed: true, witness: None }
    }

    fn from_witness(name: &str, witness: Option<Witness>) -> Self {
        Check { name: name.into(), passed: witness.is_none(), witness }
    }

    fn skipped(name: &str, after: &str) -> Self {
        Check {
            name: name.into(),
            passed: false,
            witness: Some(Witness { indices: vec![], residual: vec![], note: Some(format!("skipped: {after} failed")) }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub checks: Vec<Check>,
    pub note: String,
}

impl ValidationReport {
    fn new(checks: Vec<Check>) -> Self {
        ValidationReport { valid: checks.iter().all(|c| c.passed), checks, note: SCOPE_NOTE.into() }
    }

    /// A report over arbitrary checks; `valid` is their conjunction.
    pub fn from_checks(checks: Vec<Check>) -> Self {
        ValidationReport::new(checks)
    }

    pub fn valid(&self) -> bool {
        self.valid
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Name of the first failed check that actually ran.
    pub fn first_failure(&self) -> Option<&str> {
        self.checks
            .iter()
            .find(|c| !c.passed && !c.witness.as_ref().and_then(|w| w.note.as_deref()).is_some_and(|n| n.starts_with("skipped")))
            .map(|c| c.name.as_str())
    }
}

pub const G_JACOBI: &str = "g_jacobi";
pub const ISOTROPY_SUBALGEBRA: &str = "isotropy_subalgebra";
pub const ISOTROPY_STATIONARITY: &str = "isotropy_stationarity";
pub const ALGEBROID_JACOBI: &str = "algebroid_jacobi";
pub const ANCHOR_COMPATIBILITY: &str = "anchor_compatibility";
pub const BIANCHI_FIRST: &str = "bianchi_first";
pub const BIANCHI_SECOND: &str = "bianchi_second";

fn check_g(d: &CartanData) -> Check {
    let Some(sc) = d.g_constants() else {
        // Recover which pair escapes the span for the witness.
        let note = crate::liealg::structure_constants_from_matrices(d.g()).err().map(|e| e.to_string());
        let indices = match crate::liealg::structure_constants_from_matrices(d.g()) {
            Err(crate::Error::NotClosed { i, j }) => vec![i, j],
            _ => vec![],
        };
        return Check::from_witness(G_JACOBI, Some(Witness { indices, residual: vec![], note }));
    };
    let rep = sc.check_jacobi();
    let witness = rep.jacobi.first().map(|v| Witness { indices: vec![v.i, v.j, v.k], residual: v.residual.clone(), note: None });
    Check::from_witness(G_JACOBI, witness)
}

fn check_isotropy_subalgebra(d: &CartanData) -> Result<Check> {
    let sc = constants(d)?;
    let gens = d.isotropy_generators();
    if is_subalgebra(sc, gens)? {
        return Ok(Check::pass(ISOTROPY_SUBALGEBRA));
    }
    for (a, x) in gens.iter().enumerate() {
        for (b, y) in gens.iter().enumerate().skip(a + 1) {
            let z = sc.bracket(x, y)?;
            let r = d.isotropy().reduce(&z);
            if !is_zero_vec(&r) {
                let w = Witness { indices: vec![a, b], residual: r, note: Some("[k_a, k_b] mod k".into()) };
                return Ok(Check::from_witness(ISOTROPY_SUBALGEBRA, Some(w)));
            }
        }
    }
    unreachable!("is_subalgebra reported a failure on some pair")
}

fn first_nonzero(m: &HomMap2) -> Option<(usize, usize, Vec<Rational>)> {
    super::hommap::pairs(m.n()).find_map(|(i, j)| {
        let v = m.slot(i, j);
        (!is_zero_vec(v)).then(|| (i, j, v.to_vec()))
    })
}

fn check_stationarity(d: &CartanData) -> Result<Check> {
    let n = d.n();
    for (b, beta) in d.isotropy().basis().iter().enumerate() {
        let dt = equivariant_derivative(d, beta, d.torsion(), MapTarget::Rn)?;
        if let Some((i, j, r)) = first_nonzero(&dt) {
            let w = Witness { indices: vec![b, i, j], residual: r, note: Some("D_k T".into()) };
            return Ok(Check::from_witness(ISOTROPY_STATIONARITY, Some(w)));
        }
        let dr = equivariant_derivative(d, beta, d.curvature(), MapTarget::G)?;
        if let Some((i, j, r)) = first_nonzero(&dr) {
            let w = Witness { indices: vec![b, i, j], residual: r, note: Some("D_k R".into()) };
            return Ok(Check::from_witness(ISOTROPY_STATIONARITY, Some(w)));
        }
        for v in 0..n {
            let df = d.isotropy().reduce(&anchor_map_derivative(d, beta, &unit_vec(n, v))?);
            if !is_zero_vec(&df) {
                let w = Witness { indices: vec![b, v], residual: df, note: Some("D_k F mod k".into()) };
                return Ok(Check::from_witness(ISOTROPY_STATIONARITY, Some(w)));
            }
        }
    }
    Ok(Check::pass(ISOTROPY_STATIONARITY))
}

/// Derivatives of `T` and `R` along each basis vector of `𝔤`, so that any
/// direction is a linear combination.
pub(crate) struct Derivatives {
    dt: Vec<HomMap2>,
    dr: Vec<HomMap2>,
}

impl Derivatives {
    pub(crate) fn new(d: &CartanData) -> Result<Self> {
        let k = d.g_dim();
        let mut dt = Vec::with_capacity(k);
        let mut dr = Vec::with_capacity(k);
        for m in 0..k {
            let e = unit_vec(k, m);
            dt.push(equivariant_derivative(d, &e, d.torsion(), MapTarget::Rn)?);
            dr.push(equivariant_derivative(d, &e, d.curvature(), MapTarget::G)?);
        }
        Ok(Derivatives { dt, dr })
    }

    /// `(D_γT(u,v), D_γR(u,v))`.
    pub(crate) fn along(&self, gamma: &[Rational], u: &[Rational], v: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
        let n = u.len();
        let mut t = zero_vec(n);
        let mut r = zero_vec(self.dr.first().map_or(0, |m| m.target_dim()));
        for (m, g) in gamma.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            axpy(&mut t, g, &self.dt[m].eval(u, v)?);
            axpy(&mut r, g, &self.dr[m].eval(u, v)?);
        }
        Ok((t, r))
    }
}

/// The lift `F(u) + α` of the anchor, zero over a point.
fn lift(d: &CartanData, s: &Section) -> Result<Vec<Rational>> {
    if d.is_point_base() {
        return Ok(zero_vec(d.g_dim()));
    }
    Ok(add_vec(&d.anchor_map().apply(&s.u)?, &s.alpha))
}

/// `[[s₁,s₂],s₃]` at the base point, where the inner bracket is a
/// non-constant section whose `T`/`R` coefficients vary along `ρ(s₃)`.
fn nested(d: &CartanData, der: &Derivatives, s1: &Section, s2: &Section, s3: &Section) -> Result<Section> {
    let inner = bracket_constant_sections(d, s1, s2)?;
    let outer = bracket_constant_sections(d, &inner, s3)?;
    let gamma = lift(d, s3)?;
    // ρ(s₃)[s₁,s₂] = (−D T(u₁,u₂), −D R(u₁,u₂)); subtracting it adds the derivatives.
    let (dt, dr) = der.along(&gamma, &s1.u, &s2.u)?;
    Ok(Section { u: add_vec(&outer.u, &dt), alpha: add_vec(&outer.alpha, &dr) })
}

/// Jacobiator of three basis sections at the base point.
pub fn jacobiator(d: &CartanData, a: &Section, b: &Section, c: &Section) -> Result<Section> {
    let der = Derivatives::new(d)?;
    jacobiator_with(d, &der, a, b, c)
}

fn jacobiator_with(d: &CartanData, der: &Derivatives, a: &Section, b: &Section, c: &Section) -> Result<Section> {
    let x = nested(d, der, a, b, c)?;
    let y = nested(d, der, b, c, a)?;
    let z = nested(d, der, c, a, b)?;
    Ok(Section { u: add_vec(&add_vec(&x.u, &y.u), &z.u), alpha: add_vec(&add_vec(&x.alpha, &y.alpha), &z.alpha) })
}

fn check_algebroid_jacobi(d: &CartanData, der: &Derivatives) -> Result<Check> {
    let (n, k) = (d.n(), d.g_dim());
    let r = n + k;
    let basis: Vec<Section> = (0..r).map(|a| Section::basis(n, k, a)).collect();
    for a in 0..r {
        for b in a + 1..r {
            for c in b + 1..r {
                let j = jacobiator_with(d, der, &basis[a], &basis[b], &basis[c])?;
                if !j.is_zero() {
                    let w = Witness { indices: vec![a, b, c], residual: j.flat(), note: None };
                    return Ok(Check::from_witness(ALGEBROID_JACOBI, Some(w)));
                }
            }
        }
    }
    Ok(Check::pass(ALGEBROID_JACOBI))
}

/// `[ρs₁, ρs₂]` as a lift in `𝔤`, from the lifted fields `g ↦ Ad_{g⁻¹}F(g·u) + α`.
fn vector_field_bracket(d: &CartanData, s1: &Section, s2: &Section) -> Result<Vec<Rational>> {
    let sc = constants(d)?;
    let f1 = lift(d, s1)?;
    let f2 = lift(d, s2)?;
    let d12 = anchor_map_derivative(d, &f1, &s2.u)?;
    let d21 = anchor_map_derivative(d, &f2, &s1.u)?;
    Ok(add_vec(&sc.bracket(&f1, &f2)?, &sub_vec(&d12, &d21)))
}

fn check_anchor(d: &CartanData) -> Result<Check> {
    if d.is_point_base() {
        return Ok(Check::pass(ANCHOR_COMPATIBILITY));
    }
    let (n, k) = (d.n(), d.g_dim());
    let r = n + k;
    let basis: Vec<Section> = (0..r).map(|a| Section::basis(n, k, a)).collect();
    for a in 0..r {
        for b in a + 1..r {
            let br = bracket_constant_sections(d, &basis[a], &basis[b])?;
            let lhs = lift(d, &br)?;
            let rhs = vector_field_bracket(d, &basis[a], &basis[b])?;
            let res = d.isotropy().reduce(&sub_vec(&lhs, &rhs));
            if !is_zero_vec(&res) {
                let w = Witness { indices: vec![a, b], residual: res, note: Some("rho[s_a,s_b] - [rho s_a, rho s_b] mod k".into()) };
                return Ok(Check::from_witness(ANCHOR_COMPATIBILITY, Some(w)));
            }
        }
    }
    Ok(Check::pass(ANCHOR_COMPATIBILITY))
}

/// Runs the five checks in order. A failed `g_jacobi` skips everything after
/// it; a failed isotropy check skips the two algebroid checks, whose
/// derivative directions are only well defined modulo `𝔨` once both pass.
pub fn validate(d: &CartanData) -> ValidationReport {
    let g = check_g(d);
    if !g.passed {
        return ValidationReport::new(vec![
            g,
            Check::skipped(ISOTROPY_SUBALGEBRA, G_JACOBI),
            Check::skipped(ISOTROPY_STATIONARITY, G_JACOBI),
            Check::skipped(ALGEBROID_JACOBI, G_JACOBI),
            Check::skipped(ANCHOR_COMPATIBILITY, G_JACOBI),
        ]);
    }
    // Shapes are guaranteed by CartanData, so the remaining calls cannot fail.
    let sub = check_isotropy_subalgebra(d).expect("closed g");
    let stat = if sub.passed {
        check_stationarity(d).expect("consistent shapes")
    } else {
        Check::skipped(ISOTROPY_STATIONARITY, ISOTROPY_SUBALGEBRA)
    };
    if !sub.passed || !stat.passed {
        let failed = if sub.passed { ISOTROPY_STATIONARITY } else { ISOTROPY_SUBALGEBRA };
        return ValidationReport::new(vec![
            g,
            sub,
            stat,
            Check::skipped(ALGEBROID_JACOBI, failed),
            Check::skipped(ANCHOR_COMPATIBILITY, failed),
        ]);
    }
    let der = Derivatives::new(d).expect("consistent shapes");
    let jac = check_algebroid_jacobi(d, &der).expect("consistent shapes");
    let anc = check_anchor(d).expect("consistent shapes");
    ValidationReport::new(vec![g, sub, stat, jac, anc])
}

/// Directional derivative of a 2-form along a 𝔤-direction.
type DerivedForm<'a> = &'a dyn Fn(&[Rational], &Section, &Section) -> Result<Vec<Rational>>;

/// Chevalley–Eilenberg differential of a 2-form `Φ` on horizontal sections
/// `(uᵢ, 0)`; the connection term vanishes there, so `∇ = ρ`.
fn ce_differential(
    d: &CartanData,
    phi: &dyn Fn(&Section, &Section) -> Result<Vec<Rational>>,
    rho_phi: DerivedForm<'_>,
    s: [&Section; 3],
) -> Result<Vec<Rational>> {
    let mut acc: Option<Vec<Rational>> = None;
    let mut push = |v: Vec<Rational>, sign: i32| {
        let v = if sign < 0 { neg_vec(&v) } else { v };
        acc = Some(match acc.take() {
            None => v,
            Some(a) => add_vec(&a, &v),
        });
    };
    let f = |x: &Section| lift(d, x);
    push(rho_phi(&f(s[0])?, s[1], s[2])?, 1);
    push(rho_phi(&f(s[1])?, s[0], s[2])?, -1);
    push(rho_phi(&f(s[2])?, s[0], s[1])?, 1);
    push(phi(&bracket_constant_sections(d, s[0], s[1])?, s[2])?, -1);
    push(phi(&bracket_constant_sections(d, s[0], s[2])?, s[1])?, 1);
    push(phi(&bracket_constant_sections(d, s[1], s[2])?, s[0])?, -1);
    Ok(acc.expect("six terms"))
}

/// Evaluates both Bianchi identities on horizontal basis triples:
/// `d Tors = Σ_cyc R(u₁,u₂)u₃` and `d Curv = 0`, with
/// `Tors(s₁,s₂) = T(θs₁,θs₂)` and `Curv(s₁,s₂) = R(θs₁,θs₂)`.
pub fn check_bianchi(d: &CartanData) -> Result<ValidationReport> {
    if !validate(d).valid() {
        return Err(contract("check_bianchi requires data that passes validate()"));
    }
    let (n, k) = (d.n(), d.g_dim());
    let der = Derivatives::new(d)?;
    let tors = |a: &Section, b: &Section| d.torsion().eval(&a.u, &b.u);
    let curv = |a: &Section, b: &Section| d.curvature().eval(&a.u, &b.u);
    let rho_tors = |g: &[Rational], a: &Section, b: &Section| Ok(der.along(g, &a.u, &b.u)?.0);
    let rho_curv = |g: &[Rational], a: &Section, b: &Section| Ok(der.along(g, &a.u, &b.u)?.1);
    let basis: Vec<Section> = (0..n).map(|a| Section::basis(n, k, a)).collect();

    let mut first = None;
    let mut second = None;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let s = [&basis[a], &basis[b], &basis[c]];
                if second.is_none() {
                    let dtors = ce_differential(d, &tors, &rho_tors, s)?;
                    let mut cyc = zero_vec(n);
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        let r = d.curvature().at(x, y);
                        cyc = add_vec(&cyc, &act(d, &r, &unit_vec(n, z))?);
                    }
                    let res = sub_vec(&dtors, &cyc);
                    if !is_zero_vec(&res) {
                        second = Some(Witness { indices: vec![a, b, c], residual: res, note: Some("d Tors - sum_cyc R(u,v)w".into()) });
                    }
                }
                if first.is_none() {
                    let res = ce_differential(d, &curv, &rho_curv, s)?;
                    if !is_zero_vec(&res) {
                        first = Some(Witness { indices: vec![a, b, c], residual: res, note: Some("d Curv".into()) });
                    }
                }
            }
        }
    }
    Ok(ValidationReport::new(vec![Check::from_witness(BIANCHI_FIRST, first), Check::from_witness(BIANCHI_SECOND, second)]))
}
