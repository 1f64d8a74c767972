//! Exact computations for degenerations of polarized Hodge structures.

pub mod algebra;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod hodge;
pub mod horizontal;
pub mod io;
pub mod monomial;
pub mod orbit;
pub mod positivity;

pub use error::{Error, Result};
