//! Exact scalars, dense matrices, subspaces, integer normal forms and
//! sparse multivariate polynomials.

pub mod field;
pub mod gaussian;
pub mod ldl;
pub mod mat;
pub mod poly;
pub mod quotient;
pub mod rational;
pub mod snf;
pub mod subspace;

pub use field::{Field, Ring};
pub use gaussian::{Gaussian, GaussianRational};
pub use ldl::{inertia, is_pd, is_psd, Definiteness};
pub use mat::{CMat, Mat, QMat, Rref};
pub use poly::{poly_mat_det, poly_mat_det_cofactor, CPoly, MultiPoly, PolyMat, QPoly};
pub use rational::Rational;
pub use snf::{smith_normal_form, SmithForm, ZMat};
pub use subspace::Subspace;
