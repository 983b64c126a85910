use serde::{Deserialize, Serialize};

use crate::error::{shape, Result};
use crate::exactnum::vector::{axpy, is_zero_vec, neg_vec, zero_vec};
use crate::exactnum::Rational;

/// An element of `hom(∧²ℝⁿ, W)`, stored by its values on `eᵢ∧eⱼ` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomMap2 {
    n: usize,
    target_dim: usize,
    values: Vec<Vec<Rational>>,
}

/// Position of `(i, j)`, `i < j`, in lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All pairs `i < j < n` in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

impl HomMap2 {
    pub fn zero(n: usize, target_dim: usize) -> Self {
        HomMap2 { n, target_dim, values: vec![zero_vec(target_dim); n * n.saturating_sub(1) / 2] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vec(v))
    }

    /// Sets the value on `eᵢ∧eⱼ`; `i > j` stores the negation on `eⱼ∧eᵢ`.
    pub fn set(&mut self, i: usize, j: usize, value: Vec<Rational>) -> Result<()> {
        if i >= self.n || j >= self.n || i == j {
            return Err(shape(format!("wedge ({i},{j}) outside ∧²ℝ^{}", self.n)));
        }
        if value.len() != self.target_dim {
            return Err(shape(format!("value of length {} for target dimension {}", value.len(), self.target_dim)));
        }
        if i < j {
            let k = pair_index(self.n, i, j);
            self.values[k] = value;
        } else {
            let k = pair_index(self.n, j, i);
            self.values[k] = neg_vec(&value);
        }
        Ok(())
    }

    /// Value on `eᵢ∧eⱼ` for any `i, j`.
    pub fn at(&self, i: usize, j: usize) -> Vec<Rational> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.values[pair_index(self.n, i, j)].clone(),
            Greater => neg_vec(&self.values[pair_index(self.n, j, i)]),
            Equal => zero_vec(self.target_dim),
        }
    }

    /// Stored value for `i < j`, by reference.
    pub fn slot(&self, i: usize, j: usize) -> &[Rational] {
        &self.values[pair_index(self.n, i, j)]
    }

    /// Bilinear evaluation `m(u, v)`.
    pub fn eval(&self, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        if u.len() != self.n || v.len() != self.n {
            return Err(shape(format!("arguments of length {} and {} for n = {}", u.len(), v.len(), self.n)));
        }
        let mut out = zero_vec(self.target_dim);
        for (i, j) in pairs(self.n) {
            let w = &u[i] * &v[j] - &u[j] * &v[i];
            axpy(&mut out, &w, self.slot(i, j));
        }
        Ok(out)
    }

    /// Builds a map from its values on all basis wedges.
    pub fn from_fn(n: usize, target_dim: usize, mut f: impl FnMut(usize, usize) -> Result<Vec<Rational>>) -> Result<Self> {
        let mut m = HomMap2::zero(n, target_dim);
        for (i, j) in pairs(n) {
            m.set(i, j, f(i, j)?)?;
        }
        Ok(m)
    }

    pub fn add(&self, other: &HomMap2) -> Result<HomMap2> {
        if self.n != other.n || self.target_dim != other.target_dim {
            return Err(shape("adding maps of different shapes"));
        }
        Ok(HomMap2 {
            n: self.n,
            target_dim: self.target_dim,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> HomMap2 {
        HomMap2 { n: self.n, target_dim: self.target_dim, values: self.values.iter().map(|v| v.iter().map(|x| x * s).collect()).collect() }
    }

    /// Nonzero slots as JSON-ready entries.
    pub fn entries(&self) -> Vec<HomMapEntry> {
        pairs(self.n)
            .filter(|&(i, j)| !is_zero_vec(self.slot(i, j)))
            .map(|(i, j)| HomMapEntry { i, j, value: self.slot(i, j).to_vec() })
            .collect()
    }

    /// Inverse of [`HomMap2::entries`]; omitted wedges are zero.
    pub fn from_entries(n: usize, target_dim: usize, entries: &[HomMapEntry]) -> Result<Self> {
        let mut m = HomMap2::zero(n, target_dim);
        for (idx, e) in entries.iter().enumerate() {
            if e.i >= e.j {
                return Err(shape(format!("[{idx}]: wedge entries need i < j, got ({}, {})", e.i, e.j)));
            }
            m.set(e.i, e.j, e.value.clone()).map_err(|err| shape(format!("[{idx}]: {err}")))?;
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomMapEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<Rational>,
}
