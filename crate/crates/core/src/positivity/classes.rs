//! Schur and Segre polynomials in the Chern classes `c_1, …, c_r`.

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::poly::{poly_mat_det, PolyMat, QPoly};
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};

/// A polynomial in `c_1, …, c_r` with `deg c_i = i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernSymbol {
    pub rank: usize,
    pub poly: QPoly,
}

impl ChernSymbol {
    /// The symbol `c_j`, with `c_0 = 1` and `c_j = 0` outside `0..=r`.
    pub fn c(rank: usize, j: i64) -> Self {
        let poly = if j == 0 {
            QPoly::one(rank)
        } else if j < 0 || j as usize > rank {
            QPoly::zero(rank)
        } else {
            QPoly::var(rank, j as usize - 1)
        };
        ChernSymbol { rank, poly }
    }

    pub fn one(rank: usize) -> Self {
        Self::c(rank, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        ChernSymbol { rank: self.rank, poly: self.poly.add(&o.poly) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ChernSymbol { rank: self.rank, poly: self.poly.sub(&o.poly) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ChernSymbol { rank: self.rank, poly: self.poly.mul(&o.poly) }
    }

    fn weights(&self) -> Vec<i64> {
        (1..=self.rank as i64).collect()
    }

    /// The weighted degrees occurring, in increasing order.
    pub fn degrees(&self) -> Vec<i64> {
        let w = self.weights();
        let mut d: Vec<i64> = self.poly.terms().iter().map(|(e, _)| QPoly::weighted_degree(e, &w)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The component of weighted degree `d`.
    pub fn component(&self, d: i64) -> Self {
        let w = self.weights();
        let terms = self
            .poly
            .terms()
            .into_iter()
            .filter(|(e, _)| QPoly::weighted_degree(e, &w) == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect::<Vec<_>>();
        ChernSymbol { rank: self.rank, poly: QPoly::from_terms(self.rank, terms) }
    }

    /// True when every term has weighted degree `d`.
    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.is_zero() || self.degrees() == vec![d]
    }

    /// Evaluates at numerical Chern classes `(c_1, …, c_r)`.
    pub fn evaluate(&self, c: &[Rational]) -> Rational {
        self.poly.evaluate(c)
    }

    /// Conventional notation, e.g. `c1^2 - c2`.
    pub fn render(&self) -> String {
        self.poly.render("c")
    }

    pub fn to_json(&self) -> Value {
        json!({"rank": self.rank, "symbol": self.render(), "degrees": self.degrees()})
    }
}

impl fmt::Display for ChernSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Checks `r ≥ λ_1 ≥ λ_2 ≥ … ≥ 0`.
pub fn check_partition(lambda: &[i64], rank: usize) -> Result<()> {
    if lambda.iter().any(|&x| x < 0) {
        return Err(Error::InvalidPartition(format!("{lambda:?} has a negative part")));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(format!("{lambda:?} is not non-increasing")));
    }
    if lambda.first().is_some_and(|&x| x as usize > rank) {
        return Err(Error::InvalidPartition(format!("{lambda:?} has a part larger than the rank {rank}")));
    }
    Ok(())
}

/// The Schur matrix `[c_{λ_i + j − i}]`.
pub fn schur_matrix(lambda: &[i64], rank: usize) -> PolyMat<Rational> {
    let n = lambda.len();
    (0..n)
        .map(|i| (0..n).map(|j| ChernSymbol::c(rank, lambda[i] + j as i64 - i as i64).poly).collect())
        .collect()
}

/// `s_λ(c) = det[c_{λ_i + j − i}]`.
pub fn schur_polynomial(lambda: &[i64], rank: usize) -> Result<ChernSymbol> {
    check_partition(lambda, rank)?;
    Ok(ChernSymbol { rank, poly: poly_mat_det(&schur_matrix(lambda, rank), rank) })
}

/// `s_0, …, s_d` from the Grothendieck relation
/// `s_q = c_1 s_{q−1} − c_2 s_{q−2} + … ± c_r s_{q−r}`.
pub fn segre_sequence(d: usize, rank: usize) -> Vec<ChernSymbol> {
    let mut s = vec![ChernSymbol::one(rank)];
    for q in 1..=d {
        let mut next = ChernSymbol { rank, poly: QPoly::zero(rank) };
        for i in 1..=q.min(rank) {
            let term = ChernSymbol::c(rank, i as i64).mul(&s[q - i]);
            next = if i % 2 == 1 { next.add(&term) } else { next.sub(&term) };
        }
        s.push(next);
    }
    s
}

/// The Segre polynomial `s_d`.
pub fn segre_polynomial(d: usize, rank: usize) -> ChernSymbol {
    segre_sequence(d, rank).pop().expect("the sequence starts with s_0")
}

/// `Σ_{i=0}^{min(q,r)} (−1)^i c_i s_{q−i}`, which vanishes for `q ≥ 1`.
pub fn grothendieck_residual(q: usize, rank: usize) -> ChernSymbol {
    let s = segre_sequence(q, rank);
    (0..=q.min(rank)).fold(ChernSymbol { rank, poly: QPoly::zero(rank) }, |acc, i| {
        let term = ChernSymbol::c(rank, i as i64).mul(&s[q - i]);
        if i % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_examples() {
        assert_eq!(schur_polynomial(&[1], 2).unwrap().render(), "c1");
        assert_eq!(schur_polynomial(&[1, 1], 2).unwrap().render(), "c1^2 - c2");
        assert_eq!(schur_polynomial(&[2], 2).unwrap().render(), "c2");
        assert_eq!(schur_polynomial(&[2, 1, 0], 3).unwrap().render(), "c1*c2 - c3");
        assert!(matches!(schur_polynomial(&[1, 2], 2), Err(Error::InvalidPartition(_))));
        assert!(matches!(schur_polynomial(&[3], 2), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn segre_examples() {
        assert_eq!(segre_polynomial(0, 3).render(), "1");
        assert_eq!(segre_polynomial(1, 3).render(), "c1");
        assert_eq!(segre_polynomial(2, 3).render(), "c1^2 - c2");
        assert_eq!(segre_polynomial(3, 3).render(), "c1^3 - 2*c1*c2 + c3");
        assert_eq!(segre_polynomial(4, 4).render(), "c1^4 - 3*c1^2*c2 + 2*c1*c3 + c2^2 - c4");
        for q in 1..=6 {
            assert!(grothendieck_residual(q, 4).is_zero());
            assert!(segre_polynomial(q, 4).is_homogeneous_of(q as i64));
        }
    }
}
