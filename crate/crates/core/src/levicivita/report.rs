use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{sectional_curvatures, CurvatureTensor, MetricLieGroupSpec};
use crate::cartan::pairs;
use crate::exactnum::{Matrix, Rational};

/// `"12"` for the plane `(e₁, e₂)`; 1-based, as planes are usually named.
/// Indices past 9 are comma-separated to stay unambiguous.
pub fn plane_label(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("{}{}", i + 1, j + 1)
    } else {
        format!("{},{}", i + 1, j + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureSlot {
    pub i: usize,
    pub j: usize,
    pub matrix: Matrix,
}

/// Curvature summary of a left-invariant metric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureReport {
    /// `(λ₁, λ₂, λ₃)` for a diagonal unimodular frame, otherwise absent.
    pub lambda: Option<Vec<Rational>>,
    pub sectional: BTreeMap<String, Rational>,
    /// `R(eᵢ,eⱼ)` for `i < j`, 0-based.
    pub curvature_matrices: Vec<CurvatureSlot>,
}

pub fn curvature_report(spec: &MetricLieGroupSpec, curv: &CurvatureTensor) -> CurvatureReport {
    let n = curv.n();
    CurvatureReport {
        lambda: spec.milnor_lambda().map(|l| l.to_vec()),
        sectional: sectional_curvatures(curv).into_iter().map(|((i, j), k)| (plane_label(n, i, j), k)).collect(),
        curvature_matrices: pairs(n).map(|(i, j)| CurvatureSlot { i, j, matrix: curv.matrix(i, j) }).collect(),
    }
}
