use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{contract, Result};
use crate::exactnum::{inverse, Matrix, Rational};
use crate::liealg::{structure_constants_from_matrices, MatrixLieBasis, StructureConstants};

/// A left-invariant metric on a Lie group, encoded by a frame of `𝔥` that
/// is declared orthonormal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricLieGroupSpec {
    constants: StructureConstants,
    frame: Option<MatrixLieBasis>,
}

impl MetricLieGroupSpec {
    /// Structure constants in an orthonormal frame.
    pub fn new(constants: StructureConstants) -> Result<Self> {
        let rep = constants.check_jacobi();
        if !rep.is_ok() {
            return Err(contract("frame constants violate antisymmetry or the Jacobi identity"));
        }
        Ok(MetricLieGroupSpec { constants, frame: None })
    }

    /// A matrix realization of the orthonormal frame.
    pub fn from_frame(frame: MatrixLieBasis) -> Result<Self> {
        let constants = structure_constants_from_matrices(&frame)?;
        let mut spec = MetricLieGroupSpec::new(constants)?;
        spec.frame = Some(frame);
        Ok(spec)
    }

    /// The frame `λ₁, λ₂, λ₃` of a three-dimensional unimodular algebra with
    /// `[e₂,e₃]=λ₁e₁`, `[e₃,e₁]=λ₂e₂`, `[e₁,e₂]=λ₃e₃`.
    pub fn unimodular3(l1: Rational, l2: Rational, l3: Rational) -> Self {
        MetricLieGroupSpec { constants: StructureConstants::unimodular3(l1, l2, l3), frame: None }
    }

    /// Orthonormalizes a basis with Gram matrix `gram` and re-expresses the
    /// constants (and frame, if any) in the orthonormal frame. Fails unless
    /// `gram = C Cᵀ` with `C` lower triangular and rational.
    pub fn with_gram(self, gram: &Matrix) -> Result<Self> {
        let d = self.constants.dim();
        if gram.rows() != d || gram.cols() != d || !gram.is_symmetric() {
            return Err(contract(format!("gram must be a symmetric {d}x{d} matrix")));
        }
        let c = rational_cholesky(gram)?;
        // fᵢ = Σⱼ (C⁻¹)ᵢⱼ bⱼ has ⟨fᵢ,fₖ⟩ = (C⁻¹ G C⁻ᵀ)ᵢₖ = δᵢₖ.
        let p = inverse(&c)?;
        let constants = self.constants.change_basis(&p)?;
        let frame = match self.frame {
            None => None,
            Some(f) => {
                let mats = (0..d).map(|i| f.matrix_of(p.row(i))).collect::<Result<Vec<_>>>()?;
                Some(MatrixLieBasis::new(f.ambient(), mats)?)
            }
        };
        Ok(MetricLieGroupSpec { constants, frame })
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn frame(&self) -> Option<&MatrixLieBasis> {
        self.frame.as_ref()
    }

    /// `(λ₁, λ₂, λ₃)` when the constants have the diagonal unimodular shape.
    pub fn milnor_lambda(&self) -> Option<[Rational; 3]> {
        if self.dim() != 3 {
            return None;
        }
        let c = &self.constants;
        let l = [c.get(1, 2, 0).clone(), c.get(2, 0, 1).clone(), c.get(0, 1, 2).clone()];
        let shaped = StructureConstants::unimodular3(l[0].clone(), l[1].clone(), l[2].clone());
        (&shaped == c).then_some(l)
    }
}

/// `G = C Cᵀ` through `LDLᵀ`, accepting only exact rational square roots of `D`.
pub fn rational_cholesky(gram: &Matrix) -> Result<Matrix> {
    let n = gram.rows();
    let mut l = Matrix::identity(n);
    let mut dvals = vec![Rational::zero(); n];
    for j in 0..n {
        let mut dj = gram.get(j, j).clone();
        for k in 0..j {
            dj -= l.get(j, k) * l.get(j, k) * &dvals[k];
        }
        if !dj.is_positive() {
            return Err(contract("gram matrix is not positive definite"));
        }
        for i in j + 1..n {
            let mut x = gram.get(i, j).clone();
            for k in 0..j {
                x -= l.get(i, k) * l.get(j, k) * &dvals[k];
            }
            l.set(i, j, x / &dj);
        }
        dvals[j] = dj;
    }
    let mut c = l;
    for (j, dj) in dvals.iter().enumerate() {
        let s = dj.sqrt_exact().ok_or_else(|| contract(format!("gram pivot {dj} has no rational square root")))?;
        for i in 0..n {
            let v = c.get(i, j) * &s;
            c.set(i, j, v);
        }
    }
    Ok(c)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    constants: Option<StructureConstants>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frame: Option<MatrixLieBasis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gram: Option<Matrix>,
}

impl Serialize for MetricLieGroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = match &self.frame {
            Some(f) => SpecJson { constants: None, frame: Some(f.clone()), gram: None },
            None => SpecJson { constants: Some(self.constants.clone()), frame: None, gram: None },
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MetricLieGroupSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = SpecJson::deserialize(deserializer)?;
        let spec = match (raw.constants, raw.frame) {
            (Some(c), None) => MetricLieGroupSpec::new(c),
            (None, Some(f)) => MetricLieGroupSpec::from_frame(f),
            (Some(c), Some(f)) => MetricLieGroupSpec::from_frame(f).and_then(|s| {
                if s.constants == c {
                    Ok(s)
                } else {
                    Err(contract("constants disagree with the frame"))
                }
            }),
            (None, None) => Err(contract("expected \"constants\" or \"frame\"")),
        }
        .map_err(de::Error::custom)?;
        match raw.gram {
            None => Ok(spec),
            Some(g) => spec.with_gram(&g).map_err(de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_exact_and_rejected() {
        let g = Matrix::from_ints(&[[4, 2], [2, 2]]);
        let c = rational_cholesky(&g).unwrap();
        assert_eq!(c.mul(&c.transpose()).unwrap(), g);
        assert!(rational_cholesky(&Matrix::from_ints(&[[2, 0], [0, 1]])).is_err());
        assert!(rational_cholesky(&Matrix::from_ints(&[[1, 2], [2, 1]])).is_err());
    }

    #[test]
    fn gram_rescales_unimodular_frame() {
        // so(3) with |b_i|² = 4: f_i = b_i / 2, so [f₂,f₃] = ½ f₁.
        let spec = MetricLieGroupSpec::unimodular3(Rational::one(), Rational::one(), Rational::one());
        let scaled = spec.with_gram(&Matrix::identity(3).scale(&Rational::from(4))).unwrap();
        let h = Rational::frac(1, 2);
        assert_eq!(scaled.milnor_lambda(), Some([h.clone(), h.clone(), h]));
    }

    #[test]
    fn json_requires_one_source() {
        assert!(serde_json::from_str::<MetricLieGroupSpec>("{}").is_err());
        let s: MetricLieGroupSpec = serde_json::from_str(r#"{"constants":{"dim":2,"brackets":[]}}"#).unwrap();
        assert_eq!(s.dim(), 2);
    }
}
