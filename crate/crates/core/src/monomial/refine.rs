//! Refinement of a monomial map to one with connected fibres.
//!
//! The exponent matrix `E` (`N × k`) maps `Z^k → Z^N` with image `Λ`. With
//! the Smith form `U E V = D`, `r = rank E` and `D' = diag(d_1, …, d_r, 1, …)`
//! (`k × k`),
//!
//! ```text
//! Ã = U⁻¹ · J,    B = D' · V⁻¹,    E = Ã · B,
//! ```
//!
//! where `J` keeps the first `r` columns of the identity (`N × k`, zero
//! beyond `r`). Then `im Ã = Λ̃ = (Λ ⊗ Q) ∩ Z^N`, and
//! `Z^k / im B ≅ Λ̃ / Λ ≅ ⊕ Z/d_i`. The map `η` has exponents `B` and the
//! refined map `μ̃` has exponents `Ã`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::snf::{integer_det, smith_normal_form, unimodular_inverse, ZMat};
use crate::error::{Error, Result};

use super::map::MonomialMap;

/// The refinement `μ = μ̃ ∘ η`.
#[derive(Clone, Debug, PartialEq)]
pub struct SaturationRefinement {
    /// Exponents of `η`, `k × k`.
    pub eta: Vec<Vec<i64>>,
    /// The refined map `μ̃` (exponents `Ã`, `N × k`).
    pub refined: MonomialMap,
    /// All invariant factors of `E`.
    pub invariant_factors: Vec<i64>,
    /// Invariant factors different from 1: `Λ̃/Λ ≅ ⊕ Z/d_i`.
    pub torsion: Vec<i64>,
    /// `|Λ̃/Λ|`, the degree of `η`.
    pub degree: i64,
    /// `η` has non-negative exponents.
    pub eta_nonnegative: bool,
    /// `μ̃` has non-negative exponents.
    pub refined_nonnegative: bool,
}

impl SaturationRefinement {
    pub fn to_json(&self) -> Value {
        json!({
            "eta": self.eta,
            "refined": self.refined.to_json(),
            "invariantFactors": self.invariant_factors,
            "torsion": self.torsion,
            "degree": self.degree,
            "etaNonnegative": self.eta_nonnegative,
            "refinedNonnegative": self.refined_nonnegative,
        })
    }
}

fn to_zmat(rows: &[Vec<i64>], cols: usize) -> ZMat {
    let mut m = ZMat::zeros(rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            m.set(i, j, BigInt::from(x));
        }
    }
    m
}

fn to_rows(m: &ZMat) -> Result<Vec<Vec<i64>>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.get(i, j).to_i64().ok_or_else(|| Error::InvalidArgument("exponent overflow".into())))
                .collect()
        })
        .collect()
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::InvalidArgument("invariant factor overflow".into()))
}

/// Builds `η` and `μ̃` with `μ = μ̃ ∘ η`.
pub fn connected_refinement(m: &MonomialMap) -> Result<SaturationRefinement> {
    let k = m.k();
    let n = m.target_dim();
    let e = to_zmat(&m.exponents, k);
    let factors: Vec<i64> = if n == 0 { Vec::new() } else { smith_normal_form(&e).invariant_factors.iter().map(small).collect::<Result<_>>()? };
    let torsion: Vec<i64> = factors.iter().copied().filter(|&d| d != 1).collect();
    let degree = factors.iter().product::<i64>();

    // When N = k and E is nonsingular, Λ̃ = Z^N and the direct choice
    // Ã = I, B = E keeps both maps non-negative.
    let (mut a_tilde, mut b) = if n == k && factors.len() == k {
        (ZMat::identity(k), e.clone())
    } else if n == 0 {
        (ZMat::zeros(0, k), ZMat::identity(k))
    } else {
        let s = smith_normal_form(&e);
        let r = s.rank();
        let u_inv = unimodular_inverse(&s.u).expect("U is unimodular");
        let v_inv = unimodular_inverse(&s.v).expect("V is unimodular");
        let mut j = ZMat::zeros(n, k);
        for i in 0..r.min(n).min(k) {
            j.set(i, i, BigInt::one());
        }
        let mut dp = ZMat::identity(k);
        for i in 0..r {
            dp.set(i, i, s.d.get(i, i).clone());
        }
        (u_inv.mul(&j), dp.mul(&v_inv))
    };
    // Make each column of Ã non-negative where possible (negating the
    // matching row of B keeps E = Ã B).
    for c in 0..a_tilde.cols() {
        let col: Vec<BigInt> = (0..a_tilde.rows()).map(|i| a_tilde.get(i, c).clone()).collect();
        let nonpos = col.iter().all(|x| !x.is_positive()) && col.iter().any(|x| !x.is_zero());
        let zero_col = col.iter().all(Zero::is_zero);
        let row_nonpos = (0..b.cols()).all(|j| !b.get(c, j).is_positive()) && (0..b.cols()).any(|j| !b.get(c, j).is_zero());
        if nonpos || (zero_col && row_nonpos) {
            for i in 0..a_tilde.rows() {
                let x = -a_tilde.get(i, c).clone();
                a_tilde.set(i, c, x);
            }
            for j in 0..b.cols() {
                let x = -b.get(c, j).clone();
                b.set(c, j, x);
            }
        }
    }
    debug_assert_eq!(a_tilde.mul(&b), e);
    debug_assert_eq!(integer_det(&b).abs(), BigInt::from(degree));
    let eta = to_rows(&b)?;
    let refined_rows = to_rows(&a_tilde)?;
    let refined = MonomialMap { exponents: refined_rows, variables: m.variables.clone() };
    let eta_nonnegative = eta.iter().flatten().all(|&x| x >= 0);
    let refined_nonnegative = refined.is_nonnegative();
    Ok(SaturationRefinement {
        eta,
        refined,
        invariant_factors: factors,
        torsion,
        degree,
        eta_nonnegative,
        refined_nonnegative,
    })
}

/// True when the column lattice of the exponent matrix is saturated in
/// `Z^N` (all invariant factors equal 1).
pub fn is_saturated(m: &MonomialMap) -> bool {
    m.target_dim() == 0
        || smith_normal_form(&to_zmat(&m.exponents, m.k())).invariant_factors.iter().all(One::is_one)
}

/// `Ã · B` as exponent rows (the exponents of `μ̃ ∘ η`).
pub fn composite_exponents(r: &SaturationRefinement) -> Result<Vec<Vec<i64>>> {
    let k = r.eta.len();
    let a = to_zmat(&r.refined.exponents, k);
    let b = to_zmat(&r.eta, k);
    to_rows(&a.mul(&b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_t_squared() {
        let m = MonomialMap::new(1, vec![vec![2]]).unwrap();
        let r = connected_refinement(&m).unwrap();
        assert_eq!(r.torsion, vec![2]);
        assert_eq!(r.eta, vec![vec![2]]);
        assert_eq!(r.refined.exponents, vec![vec![1]]);
        assert!(is_saturated(&r.refined));
    }

    #[test]
    fn identity_is_already_connected() {
        let m = MonomialMap::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let r = connected_refinement(&m).unwrap();
        assert!(r.torsion.is_empty());
        assert_eq!(r.degree, 1);
    }

    #[test]
    fn diagonal_two_three() {
        let m = MonomialMap::new(2, vec![vec![2, 0], vec![0, 3]]).unwrap();
        let r = connected_refinement(&m).unwrap();
        assert_eq!(r.torsion, vec![6]);
        assert_eq!(r.degree, 6);
        assert_eq!(composite_exponents(&r).unwrap(), m.exponents);
    }

    #[test]
    fn rank_deficient_map() {
        // μ = t1^2 t2^2: Λ = 2Z ⊂ Z, one relation.
        let m = MonomialMap::new(2, vec![vec![2, 2]]).unwrap();
        let r = connected_refinement(&m).unwrap();
        assert_eq!(r.torsion, vec![2]);
        assert_eq!(composite_exponents(&r).unwrap(), m.exponents);
        assert!(is_saturated(&r.refined));
        assert!(r.refined_nonnegative);
    }
}
