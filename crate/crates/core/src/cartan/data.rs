use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::hommap::{HomMap2, HomMapEntry};
use crate::error::{shape, Result};
use crate::exactnum::vector::is_zero_vec;
use crate::exactnum::{Matrix, Rational, Subspace};
use crate::liealg::{structure_constants_from_matrices, MatrixLieBasis, StructureConstants};

/// The base of the algebroid: a point, or a single `G`-orbit `G/K` modeled
/// at its base point, where `𝔨` is spanned by `isotropy` (𝔤-coordinates).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum BaseDescriptor {
    Point,
    Homogeneous { isotropy: Vec<Vec<Rational>> },
}

/// A constant section `(u, α)` of `ℝⁿ ⊕ 𝔤`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Section {
    pub u: Vec<Rational>,
    pub alpha: Vec<Rational>,
}

impl Section {
    pub fn new(u: Vec<Rational>, alpha: Vec<Rational>) -> Self {
        Section { u, alpha }
    }

    /// The `a`-th vector of the basis `(e₁…eₙ, b₁…b_d)`.
    pub fn basis(n: usize, d: usize, a: usize) -> Self {
        let mut s = Section::zero(n, d);
        if a < n {
            s.u[a] = Rational::one();
        } else {
            s.alpha[a - n] = Rational::one();
        }
        s
    }

    pub fn zero(n: usize, d: usize) -> Self {
        Section { u: vec![Rational::zero(); n], alpha: vec![Rational::zero(); d] }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.u) && is_zero_vec(&self.alpha)
    }

    /// Concatenated coordinates `(u, α)`.
    pub fn flat(&self) -> Vec<Rational> {
        self.u.iter().chain(&self.alpha).cloned().collect()
    }
}

/// Cartan data `(n, 𝔤 ⊂ gl_n, base, T, R, F)` in canonical form, held by its
/// values at the base point.
///
/// `F` is stored as a `dim 𝔤 × n` matrix whose columns are only meaningful
/// modulo `𝔨`; construction reduces each column to the canonical
/// representative that vanishes on the echelon pivots of `𝔨`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    n: usize,
    g: MatrixLieBasis,
    g_constants: Option<StructureConstants>,
    base: BaseDescriptor,
    isotropy: Subspace,
    t0: HomMap2,
    r0: HomMap2,
    f0: Matrix,
}

impl CartanData {
    /// Checks the structural invariants. The algebraic identities are left to
    /// [`super::validate`]; in particular `𝔤` need not be closed here.
    pub fn new(n: usize, g: MatrixLieBasis, base: BaseDescriptor, t0: HomMap2, r0: HomMap2, f0: Option<Matrix>) -> Result<Self> {
        let d = g.dim();
        if g.ambient() != n {
            return Err(shape(format!("g: matrices are {0}x{0}, expected {n}x{n}", g.ambient())));
        }
        if t0.n() != n || t0.target_dim() != n {
            return Err(shape(format!("T: expected a map ∧²ℝ^{n} → ℝ^{n}")));
        }
        if r0.n() != n || r0.target_dim() != d {
            return Err(shape(format!("R: expected a map ∧²ℝ^{n} → 𝔤 (dim {d})")));
        }
        let f0 = f0.unwrap_or_else(|| Matrix::zeros(d, n));
        if f0.rows() != d || f0.cols() != n {
            return Err(shape(format!("F: expected a {d}x{n} matrix, got {}x{}", f0.rows(), f0.cols())));
        }
        let isotropy = match &base {
            BaseDescriptor::Point => {
                if !f0.is_zero() {
                    return Err(shape("F: must be zero over a point base"));
                }
                Subspace::zero(d)
            }
            BaseDescriptor::Homogeneous { isotropy } => {
                if let Some(k) = isotropy.iter().position(|v| v.len() != d) {
                    return Err(shape(format!("base.isotropy[{k}]: expected length {d}")));
                }
                Subspace::span(isotropy, d)
            }
        };
        let mut canon = Matrix::zeros(d, n);
        for j in 0..n {
            for (i, x) in isotropy.reduce(&f0.col(j)).into_iter().enumerate() {
                canon.set(i, j, x);
            }
        }
        let g_constants = structure_constants_from_matrices(&g).ok();
        Ok(CartanData { n, g, g_constants, base, isotropy, t0, r0, f0: canon })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim 𝔤`.
    pub fn g_dim(&self) -> usize {
        self.g.dim()
    }

    /// Rank of the bundle `ℝⁿ ⊕ 𝔤`.
    pub fn rank(&self) -> usize {
        self.n + self.g.dim()
    }

    pub fn g(&self) -> &MatrixLieBasis {
        &self.g
    }

    /// Structure constants of `𝔤`, `None` if the basis is not closed.
    pub fn g_constants(&self) -> Option<&StructureConstants> {
        self.g_constants.as_ref()
    }

    pub fn base(&self) -> &BaseDescriptor {
        &self.base
    }

    pub fn is_point_base(&self) -> bool {
        matches!(self.base, BaseDescriptor::Point)
    }

    /// `𝔨` as a subspace of `𝔤`; zero for a point base.
    pub fn isotropy(&self) -> &Subspace {
        &self.isotropy
    }

    /// Declared isotropy generators (empty for a point base).
    pub fn isotropy_generators(&self) -> &[Vec<Rational>] {
        match &self.base {
            BaseDescriptor::Point => &[],
            BaseDescriptor::Homogeneous { isotropy } => isotropy,
        }
    }

    pub fn torsion(&self) -> &HomMap2 {
        &self.t0
    }

    pub fn curvature(&self) -> &HomMap2 {
        &self.r0
    }

    /// `F` with columns in canonical form modulo `𝔨`.
    pub fn anchor_map(&self) -> &Matrix {
        &self.f0
    }

    /// Copy with `R` replaced (same shape required).
    pub fn with_curvature(&self, r0: HomMap2) -> Result<CartanData> {
        CartanData::new(self.n, self.g.clone(), self.base.clone(), self.t0.clone(), r0, Some(self.f0.clone()))
    }

    pub fn with_torsion(&self, t0: HomMap2) -> Result<CartanData> {
        CartanData::new(self.n, self.g.clone(), self.base.clone(), t0, self.r0.clone(), Some(self.f0.clone()))
    }

    pub fn with_anchor_map(&self, f0: Matrix) -> Result<CartanData> {
        CartanData::new(self.n, self.g.clone(), self.base.clone(), self.t0.clone(), self.r0.clone(), Some(f0))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CartanDataJson {
    n: usize,
    g: MatrixLieBasis,
    base: BaseDescriptor,
    #[serde(rename = "T")]
    t: Vec<HomMapEntry>,
    #[serde(rename = "R")]
    r: Vec<HomMapEntry>,
    #[serde(rename = "F")]
    f: Option<Matrix>,
}

impl Serialize for CartanData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CartanDataJson {
            n: self.n,
            g: self.g.clone(),
            base: self.base.clone(),
            t: self.t0.entries(),
            r: self.r0.entries(),
            f: if self.is_point_base() { None } else { Some(self.f0.clone()) },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CartanData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = CartanDataJson::deserialize(deserializer)?;
        let d = raw.g.dim();
        let t0 = HomMap2::from_entries(raw.n, raw.n, &raw.t).map_err(|e| de::Error::custom(format!("T: {e}")))?;
        let r0 = HomMap2::from_entries(raw.n, d, &raw.r).map_err(|e| de::Error::custom(format!("R: {e}")))?;
        CartanData::new(raw.n, raw.g, raw.base, t0, r0, raw.f).map_err(de::Error::custom)
    }
}
