#![allow(clippy::needless_range_loop)]
//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use cartankit::cartan::CartanData;
use cartankit::exactnum::{Matrix, Rational};
use cartankit::levicivita::MetricLieGroupSpec;
use cartankit::liealg::MatrixLieBasis;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

pub fn z(n: i64) -> Rational {
    Rational::from(n)
}

pub fn e(n: usize, i: usize, j: usize) -> Matrix {
    Matrix::unit(n, i - 1, j - 1)
}

/// The three frame matrices of the SU(2) example.
pub fn su2_frame_matrices() -> Vec<Matrix> {
    vec![
        Matrix::from_ints(&[[0, 0, 1], [0, 0, 0], [-1, 0, 0]]),
        Matrix::from_ints(&[[0, 2, 0], [-2, 0, 0], [0, 0, 0]]),
        Matrix::from_ints(&[[0, 0, 0], [0, 0, 4], [0, -4, 0]]),
    ]
}

pub fn su2_spec() -> MetricLieGroupSpec {
    MetricLieGroupSpec::from_frame(MatrixLieBasis::new(3, su2_frame_matrices()).unwrap()).unwrap()
}

/// The four diagonal sign matrices of the SU(2) isotropy group.
pub fn su2_isotropy() -> Vec<Matrix> {
    vec![
        Matrix::from_ints(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        Matrix::from_ints(&[[1, 0, 0], [0, -1, 0], [0, 0, -1]]),
        Matrix::from_ints(&[[-1, 0, 0], [0, 1, 0], [0, 0, -1]]),
        Matrix::from_ints(&[[-1, 0, 0], [0, -1, 0], [0, 0, 1]]),
    ]
}

/// `c[a][b]` of `ℝⁿ ⊕ 𝔤` for point-based data, assembled straight from the
/// matrices and the stored `T`, `R` slots. Shares no code with the library's
/// bracket: 𝔤 brackets go through matrix commutators and coordinates.
pub fn naive_total_constants(d: &CartanData) -> Vec<Vec<Vec<Rational>>> {
    let n = d.n();
    let g = d.g();
    let k = g.dim();
    let dim = n + k;
    let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let t = d.torsion().at(i, j);
            let r = d.curvature().at(i, j);
            for m in 0..n {
                c[i][j][m] = -t[m].clone();
            }
            for m in 0..k {
                c[i][j][n + m] = -r[m].clone();
            }
        }
    }
    for a in 0..k {
        let ma = &g.basis()[a];
        for j in 0..n {
            // [b_a, e_j] = b_a e_j, the j-th column of the matrix.
            for m in 0..n {
                c[n + a][j][m] = ma.get(m, j).clone();
                c[j][n + a][m] = -ma.get(m, j).clone();
            }
        }
        for b in 0..k {
            let comm = ma.mul(&g.basis()[b]).unwrap().sub(&g.basis()[b].mul(ma).unwrap()).unwrap();
            let coords = g.coordinates(&comm).unwrap().expect("closed");
            c[n + a][n + b][n..n + k].clone_from_slice(&coords);
        }
    }
    c
}

/// Jacobi residual of `[[x_a,x_b],x_c] + cyclic` from raw constants.
pub fn naive_jacobi_residual(c: &[Vec<Vec<Rational>>], a: usize, b: usize, cc: usize) -> Vec<Rational> {
    let dim = c.len();
    let mut out = vec![Rational::zero(); dim];
    for (x, y, w) in [(a, b, cc), (b, cc, a), (cc, a, b)] {
        for m in 0..dim {
            if c[x][y][m].is_zero() {
                continue;
            }
            for l in 0..dim {
                out[l] = &out[l] + &(&c[x][y][m] * &c[m][w][l]);
            }
        }
    }
    out
}

pub fn naive_jacobi_holds(d: &CartanData) -> bool {
    let c = naive_total_constants(d);
    let dim = c.len();
    for a in 0..dim {
        for b in a + 1..dim {
            for cc in b + 1..dim {
                if naive_jacobi_residual(&c, a, b, cc).iter().any(|x| !x.is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}
