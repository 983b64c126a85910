use std::collections::BTreeMap;

use super::MetricLieGroupSpec;
use crate::cartan::{pair_index, pairs, HomMap2};
use crate::error::{contract, Result};
use crate::exactnum::vector::{add_vec, is_zero_vec, unit_vec};
use crate::exactnum::{Matrix, Rational};
use crate::liealg::{MatrixLieBasis, StructureConstants};

/// Christoffel symbols of a left-invariant connection in a frame:
/// `∇_{eᵢ}eⱼ = Σₖ gamma[i][j][k] eₖ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionTable {
    n: usize,
    gamma: Vec<Rational>,
}

impl ConnectionTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.gamma[(i * self.n + j) * self.n + k]
    }

    /// Matrix of `∇_{eᵢ}` on frame coordinates: entry `(k, j)` is `gamma[i][j][k]`.
    pub fn matrix(&self, i: usize) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                m.set(k, j, self.get(i, j, k).clone());
            }
        }
        m
    }

    /// `∇_u` for a frame-coordinate vector `u`.
    pub fn matrix_along(&self, u: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for (i, ui) in u.iter().enumerate() {
            if !ui.is_zero() {
                m = m.add(&self.matrix(i).scale(ui)).expect("same shape");
            }
        }
        m
    }

    /// First `(i, j, k)` with `gamma[i][j][k] ≠ −gamma[i][k][j]`.
    pub fn metric_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .find(|&(i, j, k)| self.get(i, j, k) != &-self.get(i, k, j))
    }

    /// First `(i, j, k)` with `gamma[i][j][k] − gamma[j][i][k] ≠ c[i][j][k]`.
    pub fn torsion_violation(&self, sc: &StructureConstants) -> Option<(usize, usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .find(|&(i, j, k)| &(self.get(i, j, k) - self.get(j, i, k)) != sc.get(i, j, k))
    }
}

/// Levi-Civita connection of the metric making the frame orthonormal:
/// `⟨∇_{eᵢ}eⱼ, eₖ⟩ = ½(c[i][j][k] − c[j][k][i] + c[k][i][j])`.
pub fn koszul_connection(spec: &MetricLieGroupSpec) -> ConnectionTable {
    let sc = spec.constants();
    let n = sc.dim();
    let half = Rational::frac(1, 2);
    let mut gamma = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                gamma.push(&half * &(sc.get(i, j, k) - sc.get(j, k, i) + sc.get(k, i, j)));
            }
        }
    }
    ConnectionTable { n, gamma }
}

/// `R(eᵢ,eⱼ)` for `i < j`, each an antisymmetric matrix on frame coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureTensor {
    n: usize,
    values: Vec<Matrix>,
}

impl CurvatureTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `R(eᵢ,eⱼ)` for any `i, j`.
    pub fn matrix(&self, i: usize, j: usize) -> Matrix {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.values[pair_index(self.n, i, j)].clone(),
            Greater => self.values[pair_index(self.n, j, i)].scale(&Rational::from(-1)),
            Equal => Matrix::zeros(self.n, self.n),
        }
    }

    /// `⟨R(eᵢ,eⱼ)e_l, e_k⟩`.
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> Rational {
        self.matrix(i, j).get(k, l).clone()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Matrix::is_zero)
    }

    /// First pair whose matrix is not antisymmetric.
    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        pairs(self.n).find(|&(i, j)| !self.values[pair_index(self.n, i, j)].is_antisymmetric())
    }

    /// First triple with `R(u,v)w + R(v,w)u + R(w,u)v ≠ 0`, and the residual.
    pub fn first_bianchi_violation(&self) -> Option<(usize, usize, usize, Vec<Rational>)> {
        let n = self.n;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.matrix(i, j).col(k);
                    let b = self.matrix(j, k).col(i);
                    let c = self.matrix(k, i).col(j);
                    let s = add_vec(&add_vec(&a, &b), &c);
                    if !is_zero_vec(&s) {
                        return Some((i, j, k, s));
                    }
                }
            }
        }
        None
    }

    /// First `(i, j, k, l)` with `⟨R(eᵢ,eⱼ)e_l, e_k⟩ ≠ ⟨R(e_k,e_l)eⱼ, eᵢ⟩`.
    pub fn pair_symmetry_violation(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.n;
        for (i, j) in pairs(n) {
            for (k, l) in pairs(n) {
                if self.component(i, j, k, l) != self.component(k, l, i, j) {
                    return Some((i, j, k, l));
                }
            }
        }
        None
    }

    /// The tensor as a map `∧²ℝⁿ → 𝔤` in the coordinates of a matrix basis
    /// containing every `R(eᵢ,eⱼ)`.
    pub fn to_hom_map(&self, g: &MatrixLieBasis) -> Result<HomMap2> {
        HomMap2::from_fn(self.n, g.dim(), |i, j| {
            g.coordinates(&self.matrix(i, j))?.ok_or_else(|| contract(format!("R(e{i},e{j}) is outside the target algebra")))
        })
    }
}

/// `R(eᵢ,eⱼ) = ∇ᵢ∇ⱼ − ∇ⱼ∇ᵢ − Σₘ c[i][j][m] ∇ₘ` on left-invariant fields.
pub fn riemann_curvature(conn: &ConnectionTable, spec: &MetricLieGroupSpec) -> CurvatureTensor {
    let n = conn.n();
    let sc = spec.constants();
    let gammas: Vec<Matrix> = (0..n).map(|i| conn.matrix(i)).collect();
    let values = pairs(n)
        .map(|(i, j)| {
            let comm = gammas[i].commutator(&gammas[j]).expect("square");
            let along = conn.matrix_along(sc.bracket_basis(i, j));
            comm.sub(&along).expect("same shape")
        })
        .collect();
    CurvatureTensor { n, values }
}

/// `κ(eᵢ,eⱼ) = ⟨R(eᵢ,eⱼ)eⱼ, eᵢ⟩` for every pair `i < j`.
pub fn sectional_curvatures(curv: &CurvatureTensor) -> BTreeMap<(usize, usize), Rational> {
    pairs(curv.n()).map(|(i, j)| ((i, j), curv.component(i, j, i, j))).collect()
}

/// Sectional curvatures `(κ₁₂, κ₁₃, κ₂₃)` of the coordinate planes of a
/// three-dimensional unimodular group with `[e₂,e₃]=λ₁e₁`, `[e₃,e₁]=λ₂e₂`,
/// `[e₁,e₂]=λ₃e₃`, from the principal Ricci curvatures `rᵢ = 2μⱼμₖ`,
/// `μᵢ = ½(λ₁+λ₂+λ₃) − λᵢ`.
pub fn milnor_oracle(l1: &Rational, l2: &Rational, l3: &Rational) -> [Rational; 3] {
    let half = Rational::frac(1, 2);
    let s = &half * &(l1 + l2 + l3);
    let mu = [&s - l1, &s - l2, &s - l3];
    let two = Rational::from(2);
    let r = [&two * &mu[1] * &mu[2], &two * &mu[0] * &mu[2], &two * &mu[0] * &mu[1]];
    let k = |a: usize, b: usize, c: usize| &half * &(&r[a] + &r[b] - &r[c]);
    [k(0, 1, 2), k(0, 2, 1), k(1, 2, 0)]
}

/// Value of `∇_{eᵢ}` applied to `eⱼ`, as a frame-coordinate vector.
pub fn covariant_derivative(conn: &ConnectionTable, i: usize, j: usize) -> Vec<Rational> {
    conn.matrix(i).apply(&unit_vec(conn.n(), j)).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(l: [i64; 3]) -> MetricLieGroupSpec {
        MetricLieGroupSpec::unimodular3(Rational::from(l[0]), Rational::from(l[1]), Rational::from(l[2]))
    }

    #[test]
    fn abelian_is_flat() {
        let s = MetricLieGroupSpec::new(StructureConstants::abelian(3)).unwrap();
        let c = koszul_connection(&s);
        assert!(c.gamma.iter().all(Rational::is_zero));
        assert!(riemann_curvature(&c, &s).is_zero());
        assert!(sectional_curvatures(&riemann_curvature(&c, &s)).values().all(Rational::is_zero));
    }

    #[test]
    fn bi_invariant_round_sphere() {
        let s = spec([1, 1, 1]);
        let c = koszul_connection(&s);
        let sc = s.constants();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(c.get(i, j, k), &(sc.get(i, j, k) * &Rational::frac(1, 2)));
                }
            }
        }
        let k = sectional_curvatures(&riemann_curvature(&c, &s));
        assert!(k.values().all(|x| x == &Rational::frac(1, 4)));
    }

    #[test]
    fn milnor_examples() {
        let z = Rational::zero();
        assert_eq!(milnor_oracle(&z, &z, &z), [z.clone(), z.clone(), z]);
        let o = Rational::one();
        let q = Rational::frac(1, 4);
        assert_eq!(milnor_oracle(&o, &o, &o), [q.clone(), q.clone(), q]);
        assert_eq!(
            milnor_oracle(&Rational::from(8), &Rational::from(2), &Rational::frac(1, 2)),
            [Rational::frac(181, 16), Rational::frac(313, 16), Rational::frac(-599, 16)]
        );
    }

    #[test]
    fn tensor_invariants_on_a_skewed_frame() {
        let s = spec([3, -5, 7]);
        let c = koszul_connection(&s);
        assert_eq!(c.metric_violation(), None);
        assert_eq!(c.torsion_violation(s.constants()), None);
        let r = riemann_curvature(&c, &s);
        assert_eq!(r.antisymmetry_violation(), None);
        assert_eq!(r.first_bianchi_violation(), None);
        assert_eq!(r.pair_symmetry_violation(), None);
    }
}
