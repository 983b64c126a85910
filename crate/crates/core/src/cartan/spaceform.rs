//! Generalized space forms: construction, the total Lie algebra and classification.

use serde::{Deserialize, Serialize};

use super::algebroid::constants;
use super::data::{BaseDescriptor, CartanData, Section};
use super::hommap::{pairs, HomMap2};
use super::validate::Witness;
use crate::error::{contract, Result};
use crate::exactnum::vector::{is_zero_vec, scale_vec, sub_vec};
use crate::exactnum::{mat_kernel, sym_signature, Matrix, Rational};
use crate::liealg::{fingerprint, so_pq_basis, structure_constants_from_matrices, AlgebraFingerprint, MatrixLieBasis, StructureConstants};

/// `R(eᵢ,eⱼ) = κ(eᵢ(ηeⱼ)ᵀ − eⱼ(ηeᵢ)ᵀ)`, i.e. `R(u,v)w = κ(⟨w,v⟩u − ⟨w,u⟩v)`.
fn template_matrix(eta: &Matrix, kappa: &Rational, i: usize, j: usize) -> Matrix {
    let n = eta.rows();
    let mut m = Matrix::zeros(n, n);
    for b in 0..n {
        let x = kappa * eta.get(j, b);
        let y = kappa * eta.get(i, b);
        m.set(i, b, m.get(i, b) + &x);
        m.set(j, b, m.get(j, b) - &y);
    }
    m
}

fn template(g: &MatrixLieBasis, eta: &Matrix, kappa: &Rational) -> Result<Option<HomMap2>> {
    let n = eta.rows();
    let mut r = HomMap2::zero(n, g.dim());
    for (i, j) in pairs(n) {
        match g.coordinates(&template_matrix(eta, kappa, i, j))? {
            Some(c) => r.set(i, j, c)?,
            None => return Ok(None),
        }
    }
    Ok(Some(r))
}

/// The space form of dimension `n`, curvature `κ` and form signature
/// `(p,q)` (default `(n,0)`): `𝔤 = so(p,q)`, point base, `T = 0`, `F = 0`.
pub fn space_form(n: usize, kappa: &Rational, signature: Option<(usize, usize)>) -> Result<CartanData> {
    if n < 2 {
        return Err(contract(format!("space forms need n >= 2, got {n}")));
    }
    let (p, q) = signature.unwrap_or((n, 0));
    if p + q != n {
        return Err(contract(format!("signature ({p},{q}) does not add up to n = {n}")));
    }
    let g = so_pq_basis(p, q)?;
    let eta = crate::liealg::pq_form(p, q);
    let r0 = template(&g, &eta, kappa)?.expect("so(p,q) contains the curvature template");
    CartanData::new(n, g, BaseDescriptor::Point, HomMap2::zero(n, n), r0, None)
}

/// Structure constants of `ℝⁿ ⊕ 𝔤` in the basis `(e₁…eₙ, b₁…b_d)`.
/// Only meaningful for data that passes validation.
pub fn total_algebra(d: &CartanData) -> Result<StructureConstants> {
    if !d.is_point_base() {
        return Err(contract("total_algebra needs a point base"));
    }
    constants(d)?;
    let (n, k) = (d.n(), d.g_dim());
    let r = n + k;
    let basis: Vec<Section> = (0..r).map(|a| Section::basis(n, k, a)).collect();
    let mut brackets = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            let s = super::algebroid::bracket_constant_sections(d, &basis[a], &basis[b])?;
            brackets.push((a, b, s.flat()));
        }
    }
    StructureConstants::from_brackets(r, brackets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceFormTag {
    CompactType,
    EuclideanType,
    LorentzType,
    Other,
}

impl SpaceFormTag {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceFormTag::CompactType => "compact_type",
            SpaceFormTag::EuclideanType => "euclidean_type",
            SpaceFormTag::LorentzType => "lorentz_type",
            SpaceFormTag::Other => "other",
        }
    }
}

/// Result of [`classify_space_form`], with the fingerprint evidence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFormClass {
    pub tag: SpaceFormTag,
    pub kappa: Option<Rational>,
    /// `(p, q)` of the recovered invariant form, normalized so its first
    /// nonzero entry is positive.
    pub signature: Option<(usize, usize)>,
    pub fingerprint: Option<AlgebraFingerprint>,
    pub expected_fingerprint: Option<AlgebraFingerprint>,
    pub verdict: Option<String>,
    pub witness: Option<Witness>,
}

impl SpaceFormClass {
    fn other(witness: Witness) -> Self {
        SpaceFormClass {
            tag: SpaceFormTag::Other,
            kappa: None,
            signature: None,
            fingerprint: None,
            expected_fingerprint: None,
            verdict: None,
            witness: Some(witness),
        }
    }
}

fn note(msg: &str) -> Witness {
    Witness { indices: vec![], residual: vec![], note: Some(msg.into()) }
}

/// The symmetric forms preserved by every element of `𝔤`; `None` unless the
/// solution space is one-dimensional. Normalized so the first nonzero entry is 1.
pub fn invariant_form(g: &MatrixLieBasis) -> Option<Matrix> {
    let n = g.ambient();
    let unknowns: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let sym = |x: &[Rational]| {
        let mut eta = Matrix::zeros(n, n);
        for (v, &(i, j)) in x.iter().zip(&unknowns) {
            eta.set(i, j, v.clone());
            eta.set(j, i, v.clone());
        }
        eta
    };
    // One row per entry of Xᵀη + ηX and basis element X.
    let mut rows = Vec::new();
    for x in g.basis() {
        let cols: Vec<Matrix> = (0..unknowns.len())
            .map(|u| {
                let eta = sym(&crate::exactnum::vector::unit_vec(unknowns.len(), u));
                x.transpose().mul(&eta).and_then(|a| a.add(&eta.mul(x)?)).expect("square")
            })
            .collect();
        for e in 0..n * n {
            rows.push(cols.iter().map(|c| c.entries()[e].clone()).collect::<Vec<_>>());
        }
    }
    let ker = mat_kernel(&crate::exactnum::rows_matrix(&rows, unknowns.len()));
    if ker.len() != 1 {
        return None;
    }
    let v = &ker[0];
    let lead = v.iter().find(|x| !x.is_zero())?.clone();
    Some(sym(&scale_vec(v, &lead.recip().expect("nonzero"))))
}

/// Recovers `κ` by exact inversion against the space-form template and tags
/// the data by its sign, with the total algebra's fingerprint compared to
/// the expected `so(p+1,q)`, `ℝⁿ ⋊ so(p,q)` or `so(p,q+1)`.
pub fn classify_space_form(d: &CartanData) -> Result<SpaceFormClass> {
    if !d.is_point_base() {
        return Err(contract("classify_space_form needs a point base"));
    }
    let n = d.n();
    if n < 2 {
        return Ok(SpaceFormClass::other(note("n < 2")));
    }
    if !d.torsion().is_zero() {
        return Ok(SpaceFormClass::other(note("torsion is nonzero")));
    }
    let Some(eta) = invariant_form(d.g()) else {
        return Ok(SpaceFormClass::other(note("g does not preserve a unique symmetric form")));
    };
    let sig = sym_signature(&eta)?;
    if sig.zero > 0 {
        return Ok(SpaceFormClass::other(note("invariant form is degenerate")));
    }
    let Some(unit) = template(d.g(), &eta, &Rational::one())? else {
        return Ok(SpaceFormClass::other(note("g does not contain the curvature template")));
    };
    let r0 = d.curvature();
    // κ from the first nonzero template coordinate.
    let kappa = pairs(n)
        .find_map(|(i, j)| unit.slot(i, j).iter().zip(r0.slot(i, j)).find(|(t, _)| !t.is_zero()).map(|(t, r)| r / t))
        .expect("nondegenerate template is nonzero");
    for (i, j) in pairs(n) {
        let res = sub_vec(r0.slot(i, j), &scale_vec(unit.slot(i, j), &kappa));
        if !is_zero_vec(&res) {
            let w = Witness { indices: vec![i, j], residual: res, note: Some("R - kappa * template".into()) };
            return Ok(SpaceFormClass::other(w));
        }
    }
    let (p, q) = (sig.positive, sig.negative);
    let tag = match kappa.signum() {
        1 => SpaceFormTag::CompactType,
        0 => SpaceFormTag::EuclideanType,
        _ => SpaceFormTag::LorentzType,
    };
    let fp = fingerprint(&total_algebra(d)?)?;
    let expected = match tag {
        SpaceFormTag::CompactType => fingerprint(&structure_constants_from_matrices(&so_pq_basis(p + 1, q)?)?)?,
        SpaceFormTag::LorentzType => fingerprint(&structure_constants_from_matrices(&so_pq_basis(p, q + 1)?)?)?,
        _ => fingerprint(&total_algebra(&space_form(n, &Rational::zero(), Some((p, q)))?)?)?,
    };
    Ok(SpaceFormClass {
        tag,
        kappa: Some(kappa),
        signature: Some((p, q)),
        verdict: Some(fp.verdict(&expected).into()),
        fingerprint: Some(fp),
        expected_fingerprint: Some(expected),
        witness: None,
    })
}
