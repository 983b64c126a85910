//! Exact computer algebra for G-structure Lie algebroids with connection.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactnum`]: rationals, matrices, rank/kernel/solve, inertia of symmetric forms;
//! - [`liealg`]: Lie algebras by structure constants or matrix bases, Killing
//!   forms and isomorphism fingerprints;
//! - [`cartan`]: Cartan data in canonical form (bracket, anchor, validator,
//!   Bianchi identities, space forms);
//! - [`levicivita`]: left-invariant metrics on Lie groups and their curvature;
//! - [`cli`]: the `cartankit` command-line front end.

// Index loops mirror the tensor formulas; iterator rewrites obscure them.
#![allow(clippy::needless_range_loop)]

pub mod cartan;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod levicivita;
pub mod liealg;

pub use error::{Error, Result};
