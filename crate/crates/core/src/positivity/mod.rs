//! Pointwise curvature calculators for Hermitian bundles: norm-positivity
//! models, symmetric powers, projectivized bundles, quotients, Chern-class
//! symbols, Chern forms and monomial multiplier ideals.

pub mod chern_norm;
pub mod classes;
pub mod model;
pub mod multiplier;
pub mod projective;
pub mod quotient;
pub mod semipositivity;

pub use chern_norm::{chern_form_norm, tangent_rank, ChernFormValue};
pub use classes::{
    check_partition, grothendieck_residual, schur_matrix, schur_polynomial, segre_polynomial, segre_sequence,
    ChernSymbol,
};
pub use model::{
    curvature_from_model, grassmannian_model, hermitian_norm_sq, multi_factorial, random_model, random_vector,
    sym_basis, sym_power_model, sym_product, tensor, CurvatureTensor, NormPositivityModel,
};
pub use multiplier::{generates_up_to, in_multiplier_ideal, multiplier_ideal_monomials, MultiplierIdeal};
pub use projective::{
    flat_directions, projectivized_chern_form, projectivized_chern_form_at_line, FlatDirections, ProjectivizedForm,
};
pub use quotient::{quotient_curvature_at, zero_beta, QuotientCurvature};
pub use semipositivity::{strong_semipositivity_check, SemipositivityReport, SemipositivitySample};
