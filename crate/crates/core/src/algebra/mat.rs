//! Dense matrices over an exact ring or field.
//!
//! Row-major storage. Elimination uses deterministic leftmost-column,
//! smallest-row pivoting so that every derived basis is reproducible.

use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::{Field, Ring};
use super::gaussian::Gaussian;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A dense `rows × cols` matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrices with rational entries.
pub type QMat = Mat<Rational>;
/// Matrices with Gaussian-rational entries.
pub type CMat = Mat<Gaussian>;

/// The result of reducing a matrix to reduced row echelon form.
#[derive(Clone, PartialEq)]
pub struct Rref<T> {
    pub reduced: Mat<T>,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl<T> Mat<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    /// Applies `f` entrywise.
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Ring> Mat<T> {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds a matrix from a list of rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a `dim × cols.len()` matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, cols: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), dim, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Convenience constructor from small integers.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| T::from_i64(x)).collect()).collect())
    }

    pub fn diag(entries: &[T]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimensions must agree");
        let mut m = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    let e = m.get_mut(i, j);
                    *e = e.add(&t);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "vector length must equal column count");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    /// The commutator `[a, b] = ab − ba`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut r = Self::identity(self.rows);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// Concatenates horizontally.
    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows, "row counts must agree");
        let mut m = Self::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                m.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        m
    }

    /// Concatenates vertically.
    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols, "column counts must agree");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// The submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Flattens row-major into a single vector (the `vec` used for End(V)).
    pub fn flatten(&self) -> Vec<T> {
        self.data.clone()
    }

    /// Inverse of [`Mat::flatten`] for square matrices.
    pub fn unflatten(n: usize, v: &[T]) -> Self {
        assert_eq!(v.len(), n * n, "flattened length must be n^2");
        Mat { rows: n, cols: n, data: v.to_vec() }
    }

    /// Kronecker product.
    pub fn kron(&self, o: &Self) -> Self {
        let mut m = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        m.set(i * o.rows + k, j * o.cols + l, a.mul(o.get(k, l)));
                    }
                }
            }
        }
        m
    }

    /// True when some power `≤ rows` vanishes.
    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_zero()
    }

    /// The least `l` with `self^(l+1) = 0`, when nilpotent.
    pub fn nilpotency_index(&self) -> Option<u32> {
        if !self.is_square() {
            return None;
        }
        let mut p = Self::identity(self.rows);
        for l in 0..=self.rows as u32 {
            let next = p.mul(self);
            if next.is_zero() {
                return Some(l);
            }
            p = next;
        }
        None
    }
}

impl<T: Field> Mat<T> {
    /// Reduced row echelon form with leftmost, smallest-row pivoting.
    pub fn rref(&self) -> Rref<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let t = f.mul(m.get(r, j));
                    if !t.is_zero() {
                        let v = m.get(i, j).sub(&t);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref { reduced: m, pivot_cols: pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of the right null space, one vector per free column of the
    /// reduced echelon form, in increasing column order.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let Rref { reduced, pivot_cols, .. } = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivot_cols.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut out = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f].is_some() {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[f] = T::one();
            for (i, &c) in pivot_cols.iter().enumerate() {
                v[c] = reduced.get(i, f).neg();
            }
            out.push(v);
        }
        out
    }

    /// Determinant by fraction-based elimination.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut d = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return T::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                d = d.neg();
            }
            let piv = m.get(c, c).clone();
            d = d.mul(&piv);
            let inv = piv.inv();
            for i in c + 1..n {
                let f = m.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        d
    }

    /// The inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let r = aug.rref();
        if r.pivot_cols.iter().take(n).copied().collect::<Vec<_>>() != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.reduced.submatrix(&rows, &cols))
    }

    /// One solution `x` of `self · x = b`, or `None` when inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let aug = self.hstack(&Mat::from_columns(self.rows, &[b.to_vec()]));
        let r = aug.rref();
        if r.pivot_cols.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (i, &c) in r.pivot_cols.iter().enumerate() {
            x[c] = r.reduced.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    /// True when `self = self^*`.
    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }
}

impl QMat {
    /// Embeds into Gaussian entries.
    pub fn to_gaussian(&self) -> CMat {
        self.map(|x| Gaussian::real(x.clone()))
    }
}

impl CMat {
    /// The rational matrix when every entry is real.
    pub fn to_rational(&self) -> Option<QMat> {
        if self.entries().iter().all(|x| x.is_real()) {
            Some(self.map(|x| x.re.clone()))
        } else {
            None
        }
    }
}

/// Embeds a rational vector into Gaussian entries.
pub fn vec_to_gaussian(v: &[Rational]) -> Vec<Gaussian> {
    v.iter().map(|x| Gaussian::real(x.clone())).collect()
}

/// Standard bilinear dot product (no conjugation).
pub fn dot<T: Ring>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// Bilinear form `uᵀ Q v`.
pub fn bilinear<T: Ring>(q: &Mat<T>, u: &[T], v: &[T]) -> T {
    dot(u, &q.mul_vec(v))
}

/// Checks that every row in a JSON-decoded matrix has the same length.
pub fn rows_to_mat<T: Ring>(rows: Vec<Vec<T>>, what: &str) -> Result<Mat<T>> {
    let c = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != c) {
        return Err(Error::Schema(format!("{what}: rows must all have the same length")));
    }
    Ok(Mat::from_rows(rows))
}

impl<T: fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Rref<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rref")
            .field("reduced", &self.reduced)
            .field("pivot_cols", &self.pivot_cols)
            .field("rank", &self.rank)
            .finish()
    }
}

impl<T: fmt::Display> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Serialize> Serialize for Mat<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[T]> = (0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]).collect();
        rows.serialize(s)
    }
}

impl<'de, T: Ring + DeserializeOwned> Deserialize<'de> for Mat<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(d)?;
        rows_to_mat(rows, "matrix").map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> QMat {
        QMat::from_i64_rows(rows)
    }

    #[test]
    fn rref_of_proportional_rows_has_rank_one() {
        let r = q(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
        assert_eq!(r.reduced, q(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_of_identity_and_permutation() {
        assert_eq!(QMat::identity(3).rref().rank, 3);
        let r = q(&[&[0, 1], &[1, 0]]).rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.reduced, QMat::identity(2));
    }

    #[test]
    fn kernel_of_proportional_rows() {
        let k = q(&[&[1, 2], &[2, 4]]).kernel();
        assert_eq!(k, vec![vec![Rational::from_int(-2), Rational::one()]]);
        assert!(QMat::identity(2).kernel().is_empty());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = q(&[&[1, 1, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_and_determinant_agree() {
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det(), Rational::from_int(18));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMat::identity(3));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_reports_inconsistency() {
        let m = q(&[&[1, 2], &[2, 4]]);
        assert!(m.solve(&[Rational::one(), Rational::one()]).is_none());
        let x = m.solve(&[Rational::one(), Rational::from_int(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![Rational::one(), Rational::from_int(2)]);
    }

    #[test]
    fn nilpotency_index_of_jordan_block() {
        let n = q(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(n.nilpotency_index(), Some(2));
        assert_eq!(QMat::zeros(2, 2).nilpotency_index(), Some(0));
        assert_eq!(QMat::identity(2).nilpotency_index(), None);
    }
}
