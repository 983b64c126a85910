//! Left-invariant metrics on Lie groups: the Levi-Civita connection of an
//! orthonormal frame, its curvature, and export to Cartan data.

mod connection;
mod export;
mod metric;
mod report;

pub use connection::{
    covariant_derivative, koszul_connection, milnor_oracle, riemann_curvature, sectional_curvatures, ConnectionTable, CurvatureTensor,
};
pub use export::{
    export_cartan_data, export_cartan_data_with_algebra, isotropy_group_closure, isotropy_group_closure_with_cap, DEFAULT_CLOSURE_CAP,
};
pub use metric::{rational_cholesky, MetricLieGroupSpec};
pub use report::{curvature_report, plane_label, CurvatureReport, CurvatureSlot};
