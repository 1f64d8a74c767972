//! Relation spaces of nilpotent tuples and non-negative cone generators.

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::algebra::mat::QMat;
use crate::algebra::rational::{primitive_integer_vector, Rational};
use crate::algebra::snf::combinations;
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};
use crate::io;

/// `R = {a : Σ a_i N_i = 0}` together with a basis of `R^⊥`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationSpace {
    pub k: usize,
    pub basis: Vec<Vec<Rational>>,
    pub orth_basis: Vec<Vec<Rational>>,
}

impl RelationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn subspace(&self) -> Subspace<Rational> {
        Subspace::span(self.k, &self.basis)
    }

    pub fn orth(&self) -> Subspace<Rational> {
        Subspace::span(self.k, &self.orth_basis)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "basis": self.basis.iter().map(|v| io::qvec_to_json(v)).collect::<Vec<_>>(),
            "orthBasis": self.orth_basis.iter().map(|v| io::qvec_to_json(v)).collect::<Vec<_>>(),
        })
    }
}

/// The `d² × k` matrix whose columns are the row-major flattenings of `mats`.
pub fn flattening(mats: &[QMat], d: usize) -> QMat {
    let cols: Vec<Vec<Rational>> = mats.iter().map(QMat::flatten).collect();
    QMat::from_columns(d * d, &cols)
}

/// The relation space of the given matrices, all of size `d × d`.
pub fn relation_space(mats: &[QMat], d: usize) -> Result<RelationSpace> {
    if mats.iter().any(|m| m.rows() != d || m.cols() != d) {
        return Err(Error::DimensionMismatch(format!("all matrices must be {d}×{d}")));
    }
    Ok(relation_space_of(&flattening(mats, d), mats.len()))
}

/// Kernel of a `? × k` matrix with the orthogonal complement of the kernel.
pub fn relation_space_of(m: &QMat, k: usize) -> RelationSpace {
    let basis = if m.rows() == 0 { Subspace::<Rational>::full(k).basis().to_vec() } else { m.kernel() };
    let orth_basis = Subspace::span(k, &basis).annihilator();
    RelationSpace { k, basis, orth_basis }
}

/// Extreme rays of the cone `span(orth) ∩ {b ≥ 0}` as primitive integer
/// vectors, in decreasing lexicographic order (so the orthant yields the
/// identity matrix).
///
/// With `orth` spanned by the columns of an injective `M`, the cone is
/// `{M y : M y ≥ 0}`; a ray is extreme iff its active constraints have rank
/// `dim − 1`, so the rays are enumerated as the one-dimensional kernels of
/// rank-`(dim − 1)` subsets of constraint rows. Fails with
/// [`Error::NotSpanned`] when the rays do not span `orth`.
pub fn nonnegative_generators(k: usize, orth: &[Vec<Rational>]) -> Result<Vec<Vec<i64>>> {
    let space = Subspace::span(k, orth);
    let m = space.dim();
    if m == 0 {
        return Ok(Vec::new());
    }
    let basis = QMat::from_columns(k, space.basis());
    let rows: Vec<usize> = (0..k).collect();
    let mut rays: Vec<Vec<i64>> = Vec::new();
    for subset in combinations(&rows, m - 1) {
        let active = if subset.is_empty() { QMat::zeros(0, m) } else { basis.submatrix(&subset, &(0..m).collect::<Vec<_>>()) };
        let ker = if subset.is_empty() { Subspace::<Rational>::full(m).basis().to_vec() } else { active.kernel() };
        if ker.len() != 1 {
            continue;
        }
        let b = basis.mul_vec(&ker[0]);
        let b = if b.iter().all(|x| !x.is_negative()) {
            b
        } else if b.iter().all(|x| !x.is_positive()) {
            b.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        let prim = primitive_integer_vector(&b)
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| Error::InvalidArgument("generator entries overflow".into())))
            .collect::<Result<Vec<i64>>>()?;
        if !rays.contains(&prim) {
            rays.push(prim);
        }
    }
    rays.sort_by(|a, b| b.cmp(a));
    let as_q: Vec<Vec<Rational>> = rays.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
    if Subspace::span(k, &as_q) != space {
        return Err(Error::NotSpanned);
    }
    Ok(rays)
}
