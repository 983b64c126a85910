//! Finite-dimensional Lie algebras over ℚ.

mod invariants;
mod matrix_basis;
mod sopq;
mod structure;

pub use invariants::{
    ad, bracket_span, center_dim, fingerprint, is_automorphism, is_derivation, is_subalgebra, killing_form, AlgebraFingerprint,
};
pub use matrix_basis::{structure_constants_from_matrices, MatrixLieBasis};
pub use sopq::{pq_form, so_pq_basis};
pub use structure::{JacobiReport, JacobiViolation, StructureConstants};
