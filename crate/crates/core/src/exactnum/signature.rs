use std::fmt;

use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::error::{contract, Result};

/// Inertia `(p, q, z)` of a real symmetric bilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Signature { positive, negative, zero }
    }

    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.positive, self.negative, self.zero)
    }
}

/// Signature by congruence diagonalization with rational pivots.
///
/// When every remaining diagonal entry is zero but some off-diagonal `s[i][j]`
/// is not, the substitution `xᵢ ← xᵢ + xⱼ` puts `2·s[i][j]` on the diagonal.
pub fn sym_signature(s: &Matrix) -> Result<Signature> {
    if !s.is_symmetric() {
        return Err(contract("sym_signature needs a square symmetric matrix"));
    }
    let n = s.rows();
    let mut a = s.to_rows();
    let mut sig = Signature::new(0, 0, 0);
    let mut k = 0;
    while k < n {
        let pivot = (k..n).find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let off = (k..n).find_map(|i| (i + 1..n).find(|&j| !a[i][j].is_zero()).map(|j| (i, j)));
                match off {
                    None => {
                        sig.zero += n - k;
                        break;
                    }
                    Some((i, j)) => {
                        // row_i += row_j, then col_i += col_j
                        for c in 0..n {
                            let v = a[j][c].clone();
                            a[i][c] += v;
                        }
                        for row in a.iter_mut() {
                            let v = row[j].clone();
                            row[i] += v;
                        }
                        i
                    }
                }
            }
        };
        a.swap(k, p);
        for row in a.iter_mut() {
            row.swap(k, p);
        }
        let d = a[k][k].clone();
        if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &d;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
        // Symmetric step: clear column k to match the cleared row.
        for row in a.iter_mut().skip(k + 1) {
            row[k] = crate::exactnum::Rational::zero();
        }
        for j in k + 1..n {
            a[k][j] = crate::exactnum::Rational::zero();
        }
        k += 1;
    }
    Ok(sig)
}
