//! Crate-wide error type.

use thiserror::Error;

/// Every failure an engine operation can report.
///
/// Check-style operations (validation, limit checks, compatibility) report
/// failures inside their result values instead; these variants are reserved
/// for malformed input and for violated preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("nilpotents do not commute")]
    NotCommuting,
    #[error("sl2 completion has no solution: {0}")]
    NoSolution(String),
    #[error("not a mixed Hodge structure: {0}")]
    NotMhs(String),
    #[error("Hodge numbers outside the effective range: {0}")]
    NotEffective(String),
    #[error("metric determinant vanishes identically on the piece of weight {0}")]
    DegenerateDet(usize),
    #[error("polynomial vanishes at the evaluation point")]
    ZeroAtPoint,
    #[error("leading part does not factor: {0}")]
    NoFactorization(String),
    #[error("non-negative cone does not span the subspace")]
    NotSpanned,
    #[error("fiber vector is not of unit length (norm squared {0})")]
    NotUnit(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("not a polarized Hodge structure: {0}")]
    NotPolarized(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
