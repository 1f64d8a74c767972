//! Smith normal form of integer matrices.
//!
//! Produces unimodular `U`, `V` with `U · A · V = D`, `D` diagonal with
//! non-negative entries `d₁ | d₂ | …`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mat::{Mat, QMat};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Integer matrices.
pub type ZMat = Mat<BigInt>;

/// The Smith decomposition `U · A · V = D`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm {
    pub u: ZMat,
    pub d: ZMat,
    pub v: ZMat,
    /// The positive diagonal entries of `D`, in divisibility order.
    pub invariant_factors: Vec<BigInt>,
}

/// Converts a rational matrix with integral entries.
pub fn to_integer_matrix(a: &QMat) -> Result<ZMat> {
    let mut out = ZMat::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j).to_bigint().ok_or_else(|| {
                Error::InvalidArgument(format!("entry ({i},{j}) = {} is not an integer", a.get(i, j)))
            })?;
            out.set(i, j, x);
        }
    }
    Ok(out)
}

/// Embeds an integer matrix into rationals.
pub fn to_rational_matrix(a: &ZMat) -> QMat {
    a.map(|x| Rational::from_bigint(x.clone()))
}

fn row_op(m: &mut ZMat, target: usize, src: usize, q: &BigInt) {
    // row_target -= q * row_src
    for j in 0..m.cols() {
        let t = m.get(src, j) * q;
        let v = m.get(target, j) - t;
        m.set(target, j, v);
    }
}

fn col_op(m: &mut ZMat, target: usize, src: usize, q: &BigInt) {
    // col_target -= q * col_src
    for i in 0..m.rows() {
        let t = m.get(i, src) * q;
        let v = m.get(i, target) - t;
        m.set(i, target, v);
    }
}

fn swap_cols(m: &mut ZMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let x = m.get(i, a).clone();
        let y = m.get(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

/// Computes the Smith normal form of an integer matrix.
pub fn smith_normal_form(a: &ZMat) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = ZMat::identity(m);
    let mut v = ZMat::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // Smallest nonzero entry in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        swap_cols(&mut d, t, bj);
        swap_cols(&mut v, t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                row_op(&mut d, i, t, &q);
                row_op(&mut u, i, t, &q);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                col_op(&mut d, j, t, &q);
                col_op(&mut v, j, t, &q);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Divisibility of the trailing block by the pivot.
                let piv = d.get(t, t).clone();
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&piv)));
                match bad {
                    None => break,
                    Some(i) => {
                        let q = -BigInt::one();
                        row_op(&mut d, t, i, &q);
                        row_op(&mut u, t, i, &q);
                        continue;
                    }
                }
            }
            // Move the smallest nonzero entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..m {
                let x = d.get(i, t);
                if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t..n {
                let x = d.get(t, j);
                if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            if best.1 == t {
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
            } else {
                swap_cols(&mut d, t, best.1);
                swap_cols(&mut v, t, best.1);
            }
        }
        if d.get(t, t).is_negative() {
            for j in 0..n {
                let x = -d.get(t, j);
                d.set(t, j, x);
            }
            for j in 0..m {
                let x = -u.get(t, j);
                u.set(t, j, x);
            }
        }
        t += 1;
    }
    let invariant_factors = (0..m.min(n)).map(|i| d.get(i, i).clone()).filter(|x| !x.is_zero()).collect();
    SmithForm { u, d, v, invariant_factors }
}

/// Determinant of an integer matrix via exact rationals.
pub fn integer_det(a: &ZMat) -> BigInt {
    to_rational_matrix(a).det().to_bigint().expect("integer matrices have integer determinants")
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(a: &ZMat) -> Option<ZMat> {
    let inv = to_rational_matrix(a).inverse()?;
    to_integer_matrix(&inv).ok()
}

/// True when `|det a| = 1`.
pub fn is_unimodular(a: &ZMat) -> bool {
    a.is_square() && integer_det(a).abs().is_one()
}

impl SmithForm {
    /// Invariant factors different from one (the torsion of the cokernel).
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|x| !x.is_one()).cloned().collect()
    }

    /// Rank of the input matrix.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Gcd of all `k×k` minors of `a` (reference for the invariant factors,
/// whose partial products are these determinantal divisors).
pub fn determinantal_divisor(a: &ZMat, k: usize) -> BigInt {
    let rows: Vec<usize> = (0..a.rows()).collect();
    let cols: Vec<usize> = (0..a.cols()).collect();
    let mut g = BigInt::zero();
    for rs in combinations(&rows, k) {
        for cs in combinations(&cols, k) {
            let m = a.submatrix(&rs, &cs);
            g = g.gcd(&integer_det(&m));
        }
    }
    g
}

/// All `k`-subsets of `items`, in lexicographic order.
pub fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMat {
        ZMat::from_i64_rows(rows)
    }

    fn check(a: &ZMat) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        for w in s.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn identity_has_unit_factors() {
        let s = check(&z(&[&[1, 0], &[0, 1]]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn coprime_diagonal_collapses() {
        let s = check(&z(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn gcd_and_determinant_rule() {
        let s = check(&z(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let s = check(&z(&[&[2, 4, 6], &[4, 8, 12]]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(2)]);
        let s = check(&z(&[&[0, 0], &[0, 0], &[0, 5]]));
        assert_eq!(s.invariant_factors, vec![BigInt::from(5)]);
    }
}
