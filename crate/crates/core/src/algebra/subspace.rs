//! Linear subspaces of `F^n` with a canonical basis.
//!
//! A subspace is stored by the nonzero rows of the reduced row echelon form
//! of any spanning set, so two subspaces are equal exactly when their
//! stored bases are equal.

use super::field::Field;
use super::mat::Mat;
use crate::error::{Error, Result};

/// A subspace of the ambient space `F^dim`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F> {
    dim: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> std::fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}; ", self.basis.len(), self.dim)?;
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, ")")
    }
}

impl<F: Field> Subspace<F> {
    /// The span of the given vectors (which may be dependent).
    pub fn span(dim: usize, vectors: &[Vec<F>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(dim);
        }
        assert!(vectors.iter().all(|v| v.len() == dim), "vector length must equal ambient dimension");
        let m = Mat::from_rows(vectors.to_vec());
        let r = m.rref();
        let basis = (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect();
        Subspace { dim, basis }
    }

    /// The span of the columns of `m`.
    pub fn column_span(m: &Mat<F>) -> Self {
        Self::span(m.rows(), &m.columns())
    }

    /// Fallible variant of [`Subspace::span`] for untrusted input.
    pub fn try_span(dim: usize, vectors: &[Vec<F>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch(format!("vectors must have length {dim}")));
        }
        Ok(Self::span(dim, vectors))
    }

    pub fn zero(dim: usize) -> Self {
        Subspace { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { F::one() } else { F::zero() }).collect())
            .collect();
        Subspace { dim, basis }
    }

    /// Ambient dimension.
    pub fn ambient(&self) -> usize {
        self.dim
    }

    /// Dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    /// The canonical (reduced echelon) basis.
    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    /// Basis vectors as the columns of a `dim × k` matrix.
    pub fn basis_matrix(&self) -> Mat<F> {
        Mat::from_columns(self.dim, &self.basis)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length must equal ambient dimension");
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Mat::from_rows(vs).rank() == self.basis.len()
    }

    pub fn contains_subspace(&self, o: &Self) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "ambient dimensions must agree");
        let mut vs = self.basis.clone();
        vs.extend(o.basis.iter().cloned());
        Self::span(self.dim, &vs)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "ambient dimensions must agree");
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.dim);
        }
        if self.is_full() {
            return o.clone();
        }
        if o.is_full() {
            return self.clone();
        }
        // Solve Σ a_i u_i − Σ b_j w_j = 0 and keep Σ a_i u_i.
        let p = self.basis.len();
        let mut cols = self.basis.clone();
        cols.extend(o.basis.iter().map(|w| w.iter().map(|x| x.neg()).collect()));
        let m = Mat::from_columns(self.dim, &cols);
        let vs: Vec<Vec<F>> = m
            .kernel()
            .into_iter()
            .map(|k| {
                let mut v = vec![F::zero(); self.dim];
                for (i, a) in k.iter().take(p).enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (x, u) in v.iter_mut().zip(&self.basis[i]) {
                        *x = x.add(&a.mul(u));
                    }
                }
                v
            })
            .collect();
        Self::span(self.dim, &vs)
    }

    /// The image `m(self)`.
    pub fn image(&self, m: &Mat<F>) -> Self {
        assert_eq!(m.cols(), self.dim, "map domain must be the ambient space");
        let vs: Vec<Vec<F>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Self::span(m.rows(), &vs)
    }

    /// Linear functionals (row vectors) vanishing exactly on `self`.
    pub fn annihilator(&self) -> Vec<Vec<F>> {
        if self.basis.is_empty() {
            return Subspace::<F>::full(self.dim).basis;
        }
        Mat::from_rows(self.basis.clone()).kernel()
    }

    /// The preimage `{v : m v ∈ self}`.
    pub fn preimage(&self, m: &Mat<F>) -> Self {
        assert_eq!(m.rows(), self.dim, "map codomain must be the ambient space");
        let ann = self.annihilator();
        if ann.is_empty() {
            return Subspace::full(m.cols());
        }
        let a = Mat::from_rows(ann).mul(m);
        Self::span(m.cols(), &a.kernel())
    }

    /// The kernel of `m` as a subspace.
    pub fn kernel_of(m: &Mat<F>) -> Self {
        Self::span(m.cols(), &m.kernel())
    }

    /// Entrywise conjugate subspace.
    pub fn conj(&self) -> Self {
        let vs: Vec<Vec<F>> = self.basis.iter().map(|v| v.iter().map(|x| x.conj()).collect()).collect();
        Self::span(self.dim, &vs)
    }

    /// Vectors completing a basis of `self` to a basis of `super_space`,
    /// chosen greedily from the canonical basis of `super_space`.
    pub fn complement_in(&self, super_space: &Self) -> Vec<Vec<F>> {
        let mut acc = self.basis.clone();
        let mut rank = rank_of(&acc);
        let mut out = Vec::new();
        for v in &super_space.basis {
            let mut trial = acc.clone();
            trial.push(v.clone());
            let r = rank_of(&trial);
            if r > rank {
                acc = trial;
                rank = r;
                out.push(v.clone());
            }
        }
        out
    }

    /// Like [`Subspace::complement_in`] but scanning the super-space basis in
    /// reverse order; used as an alternative deterministic splitting rule.
    pub fn complement_in_reversed(&self, super_space: &Self) -> Vec<Vec<F>> {
        let rev: Vec<Vec<F>> = super_space.basis.iter().rev().cloned().collect();
        let s = Subspace { dim: self.dim, basis: rev };
        self.complement_in(&s)
    }

    /// Coordinates of `v` in the given (independent) vector list, or `None`.
    pub fn coordinates_in(vectors: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
        if vectors.is_empty() {
            return if v.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None };
        }
        let m = Mat::from_columns(v.len(), vectors);
        m.solve(v)
    }

    /// Maps the subspace into a larger field.
    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> Subspace<G> {
        let vs: Vec<Vec<G>> = self.basis.iter().map(|v| v.iter().map(&f).collect()).collect();
        Subspace::span(self.dim, &vs)
    }
}

/// Rank of a row list, treating an empty list as rank 0.
fn rank_of<F: Field>(rows: &[Vec<F>]) -> usize {
    if rows.is_empty() {
        0
    } else {
        Mat::from_rows(rows.to_vec()).rank()
    }
}
