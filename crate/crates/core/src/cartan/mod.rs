//! Cartan data in canonical form: the algebroid `ℝⁿ ⊕ 𝔤` over a point or a
//! single orbit `G/K`, its bracket and anchor, and the validity checker.

mod algebroid;
mod data;
mod hommap;
mod spaceform;
mod symmetry;
mod validate;

pub use algebroid::{
    act, anchor, anchor_map_derivative, anchor_representative, bracket_constant_sections, equivariant_derivative, MapTarget,
};
pub use data::{BaseDescriptor, CartanData, Section};
pub use hommap::{pair_index, pairs, HomMap2, HomMapEntry};
pub use spaceform::{classify_space_form, invariant_form, space_form, total_algebra, SpaceFormClass, SpaceFormTag};
pub use symmetry::{first_bianchi_membership, is_homogeneous_data, is_locally_symmetric_data, BianchiMembership};
pub use validate::{
    check_bianchi, jacobiator, validate, Check, ValidationReport, Witness, ALGEBROID_JACOBI, ANCHOR_COMPATIBILITY, BIANCHI_FIRST,
    BIANCHI_SECOND, G_JACOBI, ISOTROPY_STATIONARITY, ISOTROPY_SUBALGEBRA, SCOPE_NOTE,
};
