use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{contract, shape, Result};
use crate::exactnum::vector::{axpy, is_zero_vec, zero_vec};
use crate::exactnum::{inverse, Matrix, Rational};

/// A Lie algebra of dimension `d` given by `[bᵢ, bⱼ] = Σₖ c[i][j][k] bₖ`.
///
/// Indices are 0-based. Construction does not check antisymmetry or the
/// Jacobi identity; run [`StructureConstants::check_jacobi`] before relying on them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<Rational>,
}

impl StructureConstants {
    /// Builds from a flat `d³` array in `[i][j][k]` order.
    pub fn new(dim: usize, c: Vec<Rational>) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(shape(format!("{} constants for dimension {dim}", c.len())));
        }
        Ok(StructureConstants { dim, c })
    }

    pub fn abelian(dim: usize) -> Self {
        StructureConstants { dim, c: vec![Rational::zero(); dim * dim * dim] }
    }

    /// Builds from the rows `[bᵢ, bⱼ]` for `i < j`; the `j > i` rows are filled by antisymmetry.
    pub fn from_brackets<I>(dim: usize, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<Rational>)>,
    {
        let mut sc = StructureConstants::abelian(dim);
        for (i, j, coeffs) in brackets {
            if i >= dim || j >= dim || coeffs.len() != dim {
                return Err(shape(format!("bracket row ({i},{j}) does not fit dimension {dim}")));
            }
            if i == j {
                if !is_zero_vec(&coeffs) {
                    return Err(contract(format!("[b{i}, b{i}] must vanish")));
                }
                continue;
            }
            for (k, x) in coeffs.into_iter().enumerate() {
                sc.set(j, i, k, -&x);
                sc.set(i, j, k, x);
            }
        }
        Ok(sc)
    }

    /// Three-dimensional algebra with `[e₂,e₃]=λ₁e₁`, `[e₃,e₁]=λ₂e₂`, `[e₁,e₂]=λ₃e₃`.
    pub fn unimodular3(l1: Rational, l2: Rational, l3: Rational) -> Self {
        let z = Rational::zero;
        StructureConstants::from_brackets(3, [(0, 1, vec![z(), z(), l3]), (1, 2, vec![l1, z(), z()]), (0, 2, vec![z(), -l2, z()])])
            .expect("well-formed rows")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let idx = self.idx(i, j, k);
        self.c[idx] = value;
    }

    /// Coefficients of `[bᵢ, bⱼ]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        let start = self.idx(i, j, 0);
        &self.c[start..start + self.dim]
    }

    /// `[x, y]` for coefficient vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(shape(format!("bracket arguments of length {} and {} in dimension {}", x.len(), y.len(), self.dim)));
        }
        let mut out = zero_vec(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.bracket_basis(i, j));
            }
        }
        Ok(out)
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    /// Index triples `(i, j, k)` with `c[i][j][k] ≠ −c[j][i][k]`, reported once with `i ≤ j`.
    pub fn antisymmetry_violations(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim;
        let mut out = Vec::new();
        for i in 0..d {
            for j in i..d {
                for k in 0..d {
                    if *self.get(i, j, k) != -self.get(j, i, k) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// `Σₘ c[i][j][m]c[m][k][l] + c[j][k][m]c[m][i][l] + c[k][i][m]c[m][j][l]` over `l`.
    pub fn jacobi_residual(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let d = self.dim;
        let mut out = zero_vec(d);
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for m in 0..d {
                let f = self.get(a, b, m);
                if f.is_zero() {
                    continue;
                }
                let start = self.idx(m, c, 0);
                axpy(&mut out, f, &self.c[start..start + d]);
            }
        }
        out
    }

    /// Antisymmetry first, then the Jacobi sum on every `i < j < k`.
    pub fn check_jacobi(&self) -> JacobiReport {
        let antisymmetry = self.antisymmetry_violations();
        let d = self.dim;
        let mut jacobi = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let residual = self.jacobi_residual(i, j, k);
                    if !is_zero_vec(&residual) {
                        jacobi.push(JacobiViolation { i, j, k, residual });
                    }
                }
            }
        }
        JacobiReport { antisymmetry, jacobi }
    }

    /// Re-expresses the constants in the basis `fᵢ = Σⱼ p[i][j] bⱼ`.
    pub fn change_basis(&self, p: &Matrix) -> Result<StructureConstants> {
        let d = self.dim;
        if p.rows() != d || p.cols() != d {
            return Err(shape("change of basis must be d x d"));
        }
        let p_inv = inverse(p)?;
        let mut out = StructureConstants::abelian(d);
        for i in 0..d {
            for j in i + 1..d {
                let b = self.bracket(p.row(i), p.row(j))?;
                // b is in old coordinates: Σ_m b_m b_m = Σ_m b_m Σ_k p_inv[m][k] f_k
                let new = p_inv.transpose().apply(&b)?;
                for (k, x) in new.into_iter().enumerate() {
                    out.set(j, i, k, -&x);
                    out.set(i, j, k, x);
                }
            }
        }
        Ok(out)
    }
}

impl std::fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut s = f.debug_struct("StructureConstants");
        s.field("dim", &self.dim);
        let rows: Vec<_> = (0..self.dim)
            .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
            .filter(|&(i, j)| !is_zero_vec(self.bracket_basis(i, j)))
            .map(|(i, j)| (i, j, self.bracket_basis(i, j).to_vec()))
            .collect();
        s.field("brackets", &rows).finish()
    }
}

/// Outcome of [`StructureConstants::check_jacobi`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiReport {
    pub antisymmetry: Vec<(usize, usize, usize)>,
    pub jacobi: Vec<JacobiViolation>,
}

impl JacobiReport {
    pub fn is_ok(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub residual: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketRow {
    i: usize,
    j: usize,
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureConstantsJson {
    dim: usize,
    brackets: Vec<BracketRow>,
}

impl Serialize for StructureConstants {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let row = self.bracket_basis(i, j);
                if !is_zero_vec(row) {
                    brackets.push(BracketRow { i, j, coeffs: row.to_vec() });
                }
            }
        }
        StructureConstantsJson { dim: self.dim, brackets }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StructureConstants {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = StructureConstantsJson::deserialize(deserializer)?;
        for row in &raw.brackets {
            if row.i >= row.j {
                return Err(de::Error::custom(format!("bracket rows need i < j, got ({}, {})", row.i, row.j)));
            }
        }
        StructureConstants::from_brackets(raw.dim, raw.brackets.into_iter().map(|r| (r.i, r.j, r.coeffs))).map_err(de::Error::custom)
    }
}
