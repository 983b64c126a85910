//! Exact rational scalars, dense matrices and the linear algebra built on them.
//!
//! Everything here is exact: there is no floating-point path.

mod linalg;
mod matrix;
mod rational;
mod signature;
pub mod vector;

pub use linalg::{
    determinant, inverse, mat_kernel, mat_kernel_columns, mat_rank, primitive_integer_vector, rows_matrix, rref, solve, Subspace,
};
pub use matrix::Matrix;
pub use rational::Rational;
pub use signature::{sym_signature, Signature};

/// `a · b`, exact.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> crate::Result<Matrix> {
    a.mul(b)
}

/// `ab − ba`, exact.
pub fn commutator(a: &Matrix, b: &Matrix) -> crate::Result<Matrix> {
    a.commutator(b)
}
