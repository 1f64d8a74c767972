//! Exact definiteness tests for Hermitian matrices by pivoted `LDL*`.
//!
//! A positive diagonal pivot is eliminated by one symmetric Schur-complement
//! step; a vanishing diagonal entry with a nonzero off-diagonal entry in its
//! row certifies indefiniteness. The result records the inertia of the form.

use super::field::Field;
use super::mat::Mat;
use super::rational::Rational;

/// Inertia and definiteness of a Hermitian matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definiteness {
    /// Number of positive eigenvalues.
    pub positive: usize,
    /// Number of negative eigenvalues.
    pub negative: usize,
    /// Dimension of the radical.
    pub zero: usize,
    /// The diagonal of `D` in elimination order (positive and negative pivots only).
    pub pivots: Vec<Rational>,
}

impl Definiteness {
    pub fn is_psd(&self) -> bool {
        self.negative == 0
    }

    pub fn is_pd(&self) -> bool {
        self.negative == 0 && self.zero == 0
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "positive": self.positive,
            "negative": self.negative,
            "zero": self.zero,
            "psd": self.is_psd(),
            "pd": self.is_pd(),
        })
    }
}

/// Computes the inertia of a Hermitian matrix exactly.
///
/// Panics if the matrix is not square or not Hermitian.
pub fn inertia<F: Field>(a: &Mat<F>) -> Definiteness {
    assert!(a.is_hermitian(), "inertia requires a Hermitian matrix");
    let mut m = a.clone();
    let mut active: Vec<usize> = (0..m.rows()).collect();
    let (mut pos, mut neg) = (0, 0);
    let mut pivots = Vec::new();
    loop {
        // Drop rows/columns that vanish identically.
        let snapshot = active.clone();
        active.retain(|&i| snapshot.iter().any(|&j| !m.get(i, j).is_zero()));
        if active.is_empty() {
            break;
        }
        let diag_pivot = active.iter().copied().find(|&i| !m.get(i, i).is_zero());
        let k = match diag_pivot {
            Some(k) => k,
            None => {
                // All diagonal entries vanish but some off-diagonal does not:
                // combine two coordinates to create a nonzero diagonal entry.
                let (i, j) = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !m.get(i, j).is_zero())
                    .expect("a nonzero row has a nonzero entry");
                // Replace coordinate i by e_i + c e_j with c chosen so that the new
                // diagonal 2 Re(c * m_ij conj?) is nonzero: c = conj(m_ij) works.
                let c = m.get(i, j).conj();
                add_congruence(&mut m, i, j, &c);
                i
            }
        };
        let d = m.get(k, k).clone();
        let dr = d.real_part();
        if dr.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        pivots.push(dr);
        let inv = d.inv();
        let others: Vec<usize> = active.iter().copied().filter(|&i| i != k).collect();
        for &i in &others {
            let f = m.get(i, k).mul(&inv);
            if f.is_zero() {
                continue;
            }
            for &j in &others {
                let t = f.mul(m.get(k, j));
                if !t.is_zero() {
                    let v = m.get(i, j).sub(&t);
                    m.set(i, j, v);
                }
            }
        }
        for &i in &others {
            m.set(i, k, F::zero());
            m.set(k, i, F::zero());
        }
        m.set(k, k, F::zero());
        active.retain(|&i| i != k);
    }
    let n = a.rows();
    Definiteness { positive: pos, negative: neg, zero: n - pos - neg, pivots }
}

/// Congruence `M ← E* M E` with `E = I + c · e_j e_iᵀ` (column i += c · column j).
fn add_congruence<F: Field>(m: &mut Mat<F>, i: usize, j: usize, c: &F) {
    let n = m.rows();
    for r in 0..n {
        let v = m.get(r, i).add(&m.get(r, j).mul(c));
        m.set(r, i, v);
    }
    let cc = c.conj();
    for s in 0..n {
        let v = m.get(i, s).add(&m.get(j, s).mul(&cc));
        m.set(i, s, v);
    }
}

/// True when the Hermitian matrix is positive semidefinite.
pub fn is_psd<F: Field>(a: &Mat<F>) -> bool {
    inertia(a).is_psd()
}

/// True when the Hermitian matrix is positive definite.
pub fn is_pd<F: Field>(a: &Mat<F>) -> bool {
    inertia(a).is_pd()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::Gaussian;
    use crate::algebra::mat::{CMat, QMat};

    #[test]
    fn positive_definite_and_semidefinite() {
        let a = QMat::from_i64_rows(&[&[4, 1, 1], &[1, 4, 1], &[1, 1, 4]]);
        assert!(is_pd(&a));
        let b = QMat::from_i64_rows(&[&[1, 1], &[1, 1]]);
        let i = inertia(&b);
        assert!(i.is_psd() && !i.is_pd());
        assert_eq!(i.rank(), 1);
    }

    #[test]
    fn zero_diagonal_with_off_diagonal_is_indefinite() {
        let a = QMat::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let i = inertia(&a);
        assert_eq!((i.positive, i.negative), (1, 1));
    }

    #[test]
    fn hermitian_gaussian_matrix() {
        let g = |a, b| Gaussian::from_ints(a, b);
        let a = CMat::from_rows(vec![vec![g(2, 0), g(0, 1)], vec![g(0, -1), g(2, 0)]]);
        assert!(is_pd(&a));
        let b = CMat::from_rows(vec![vec![g(1, 0), g(0, 1)], vec![g(0, -1), g(1, 0)]]);
        let i = inertia(&b);
        assert!(i.is_psd() && i.zero == 1);
    }
}
