//! Curvature of horizontal tangent spaces of period domains at a polarized
//! Hodge structure.

pub mod curvature;
pub mod graded;
pub mod phs;

pub use curvature::{
    ad_star, adjoint_residual, bisectional_curvature, is_abelian, kernel_dimension, kernel_dimension_direct,
    random_horizontal, sampled_quartic_minimum, sectional_quartic, BisectionalCurvature, BlockTerm, SectionalQuartic,
};
pub use graded::{block_of, graded_end_algebra, top_block, xi_from_top_block, GradedEnd};
pub use phs::PolarizedHS;
