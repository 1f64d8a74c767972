//! Curvature of the horizontal bundle `Gr^{−1}`: bisectional curvature,
//! kernels of `ad*_ξ` and the sectional quartic.
//!
//! For `η, ξ ∈ g^{−1}`,
//!
//! ```text
//! Θ(η, ξ) = ‖[ξ, η]‖² − ‖ad*_ξ(η)‖²,
//! ```
//!
//! where `ad*_ξ : g^{−1} → g^0` is the metric adjoint of
//! `ad_ξ : g^0 → g^{−1}`, computed from the Gram matrices of the pieces.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::field::Field;
use crate::algebra::gaussian::Gaussian;
use crate::algebra::mat::CMat;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};
use crate::positivity::model::random_vector;

use super::graded::{block_of, GradedEnd};

fn check_in(ge: &GradedEnd, p: i64, x: &CMat, name: &str) -> Result<Vec<Gaussian>> {
    let d = ge.phs.dim;
    if x.rows() != d || x.cols() != d {
        return Err(Error::DimensionMismatch(format!("{name} must be {d}×{d}")));
    }
    ge.coordinates(p, x).ok_or_else(|| Error::InvalidArgument(format!("{name} must lie in g^{p}")))
}


/// `ad*_ξ(η) ∈ g^0` in Hodge coordinates.
pub fn ad_star(ge: &GradedEnd, xi: &CMat, eta: &CMat) -> Result<CMat> {
    check_in(ge, -1, xi, "ξ")?;
    let c = check_in(ge, -1, eta, "η")?;
    let m = ge.ad_matrix(xi, -1, 0)?;
    let star = ge.adjoint_matrix(&m, 0, -1);
    Ok(ge.combine(0, &star.mul_vec(&c)))
}

/// The two terms of the bisectional curvature.
#[derive(Clone, Debug, PartialEq)]
pub struct BisectionalCurvature {
    /// `‖[ξ, η]‖²`.
    pub bracket: Rational,
    /// `‖ad*_ξ(η)‖²`.
    pub adjoint: Rational,
    pub value: Rational,
}

impl BisectionalCurvature {
    pub fn to_json(&self) -> Value {
        json!({
            "bracketNormSquared": self.bracket.to_string(),
            "adjointNormSquared": self.adjoint.to_string(),
            "value": crate::io::exact_and_decimal(&self.value),
        })
    }
}

/// `Θ(η, ξ) = ‖[ξ, η]‖² − ‖ad*_ξ(η)‖²` for `η, ξ ∈ g^{−1}`.
pub fn bisectional_curvature(ge: &GradedEnd, eta: &CMat, xi: &CMat) -> Result<BisectionalCurvature> {
    let star = ad_star(ge, xi, eta)?;
    let bracket = ge.norm_sq(&xi.commutator(eta));
    let adjoint = ge.norm_sq(&star);
    let value = &bracket - &adjoint;
    Ok(BisectionalCurvature { bracket, adjoint, value })
}

/// `dim ker(ad*_ξ) = dim g^{−1} − rank(ad_ξ : g^0 → g^{−1})`.
pub fn kernel_dimension(ge: &GradedEnd, xi: &CMat) -> Result<usize> {
    check_in(ge, -1, xi, "ξ")?;
    let m = ge.ad_matrix(xi, -1, 0)?;
    let rank = if m.rows() == 0 || m.cols() == 0 { 0 } else { m.rank() };
    Ok(ge.dim(-1) - rank)
}

/// `dim ker(ad*_ξ)` computed directly as the kernel of the adjoint matrix
/// (an independent route to the same number).
pub fn kernel_dimension_direct(ge: &GradedEnd, xi: &CMat) -> Result<usize> {
    check_in(ge, -1, xi, "ξ")?;
    let m = ge.ad_matrix(xi, -1, 0)?;
    let star = ge.adjoint_matrix(&m, 0, -1);
    Ok(if star.rows() == 0 { ge.dim(-1) } else { star.kernel().len() })
}

/// Spectral data of one block `A_p` of `ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockTerm {
    pub p: i64,
    /// `Σ_i λ_{p,i}² = Tr(A_p* A_p)`.
    pub sum_sq: Rational,
    /// `Σ_i λ_{p,i}⁴ = Tr((A_p* A_p)²)`.
    pub sum_fourth: Rational,
}

/// The sectional quartic `‖ad*_ξ(ξ)‖² / ‖ξ‖⁴` with the fitted constant.
#[derive(Clone, Debug, PartialEq)]
pub struct SectionalQuartic {
    pub value: Rational,
    pub norm_sq: Rational,
    pub terms: Vec<BlockTerm>,
    /// `a` with `‖ad*_ξ(ξ)‖² = a Σ_{p,i} λ_{p,i}⁴`, i.e.
    /// `value = a Σ λ⁴ / (Σ λ²)²` over all blocks.
    pub fitted_constant: Rational,
    pub fitted_is_integer: bool,
    /// `a'` with `value = a' Σ_p (Σ_i λ⁴_{p,i}) / (Σ_i λ²_{p,i})²`, the
    /// per-block normalization.
    pub per_block_constant: Rational,
}

impl SectionalQuartic {
    pub fn to_json(&self) -> Value {
        json!({
            "value": crate::io::exact_and_decimal(&self.value),
            "normSquared": self.norm_sq.to_string(),
            "blocks": self.terms.iter().map(|t| json!({
                "p": t.p,
                "sumSquares": t.sum_sq.to_string(),
                "sumFourthPowers": t.sum_fourth.to_string(),
            })).collect::<Vec<_>>(),
            "fittedConstant": self.fitted_constant.to_string(),
            "fittedIsInteger": self.fitted_is_integer,
            "perBlockConstant": self.per_block_constant.to_string(),
        })
    }
}

/// Computes the sectional quartic of `ξ ∈ g^{−1}`.
pub fn sectional_quartic(ge: &GradedEnd, xi: &CMat) -> Result<SectionalQuartic> {
    check_in(ge, -1, xi, "ξ")?;
    if xi.is_zero() {
        return Err(Error::ZeroVector);
    }
    let star = ad_star(ge, xi, xi)?;
    let num = ge.norm_sq(&star);
    let norm_sq = ge.norm_sq(xi);
    let value = &num / &(&norm_sq * &norm_sq);
    // A_p* A_p is the V^{p,q} block of ξ* ξ.
    let xsx = ge.adjoint(xi).mul(xi);
    let n = ge.phs.weight;
    let mut terms = Vec::new();
    for p in (1..=n).rev() {
        if block_of(ge, xi, p).is_zero() {
            continue;
        }
        let idx: Vec<usize> = ge.phs.block_range(p).collect();
        let b = xsx.submatrix(&idx, &idx);
        terms.push(BlockTerm { p, sum_sq: b.trace().real_part(), sum_fourth: b.mul(&b).trace().real_part() });
    }
    let fourth = terms.iter().fold(Rational::zero(), |acc, t| &acc + &t.sum_fourth);
    let fitted_constant = &num / &fourth;
    let per_block = terms
        .iter()
        .fold(Rational::zero(), |acc, t| &acc + &(&t.sum_fourth / &(&t.sum_sq * &t.sum_sq)));
    let per_block_constant = &value / &per_block;
    Ok(SectionalQuartic {
        fitted_is_integer: fitted_constant.is_integer(),
        value,
        norm_sq,
        terms,
        fitted_constant,
        per_block_constant,
    })
}

/// A seeded element of `g^{−1}`.
pub fn random_horizontal(ge: &GradedEnd, rng: &mut ChaCha8Rng) -> CMat {
    let c = random_vector(rng, ge.dim(-1));
    ge.combine(-1, &c)
}

/// Minimum of the sectional quartic over `count` seeded `ξ`.
pub fn sampled_quartic_minimum(ge: &GradedEnd, count: usize, seed: u64) -> Result<Option<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Rational> = None;
    for _ in 0..count {
        let xi = random_horizontal(ge, &mut rng);
        if xi.is_zero() {
            continue;
        }
        let v = sectional_quartic(ge, &xi)?.value;
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    Ok(best)
}

/// `g^{−1}` is abelian: all brackets of basis elements vanish.
pub fn is_abelian(ge: &GradedEnd) -> bool {
    let b = ge.pieces.get(&-1).cloned().unwrap_or_default();
    b.iter().all(|x| b.iter().all(|y| x.commutator(y).is_zero()))
}

/// Residual `‖ad*_ξ(η) − [ξ*, η]‖²`, zero when the Hodge adjoint preserves
/// `g` (used as a consistency check of the Gram-matrix adjoint).
pub fn adjoint_residual(ge: &GradedEnd, xi: &CMat, eta: &CMat) -> Result<Rational> {
    let a = ad_star(ge, xi, eta)?;
    let b = ge.adjoint(xi).commutator(eta);
    let diff = a.sub(&b);
    Ok(diff.entries().iter().fold(Rational::zero(), |acc, x| &acc + &x.norm_sq()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Ring;
    use crate::horizontal::graded::{graded_end_algebra, xi_from_top_block};
    use crate::horizontal::phs::PolarizedHS;

    fn diag_block(rows: usize, cols: usize, rank: usize) -> CMat {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rank {
            m.set(i, i, Gaussian::one());
        }
        m
    }

    #[test]
    fn genus_one_sectional_curvature() {
        let ge = graded_end_algebra(&PolarizedHS::weight_one_standard(1)).unwrap();
        let xi = xi_from_top_block(&ge, &diag_block(1, 1, 1)).unwrap();
        let b = bisectional_curvature(&ge, &xi, &xi).unwrap();
        assert!(b.value.is_negative());
        let q = sectional_quartic(&ge, &xi).unwrap();
        assert_eq!(q.fitted_constant, Rational::from_int(2));
        let scaled = sectional_quartic(&ge, &xi.scale(&Gaussian::from_ints(3, 0))).unwrap();
        assert_eq!(scaled.value, q.value);
        let zero = CMat::zeros(2, 2);
        assert!(bisectional_curvature(&ge, &xi, &zero).unwrap().value.is_zero());
        assert_eq!(sectional_quartic(&ge, &zero), Err(Error::ZeroVector));
    }

    #[test]
    fn kernel_dimensions_in_low_genus() {
        let ge = graded_end_algebra(&PolarizedHS::weight_one_standard(2)).unwrap();
        let xi = xi_from_top_block(&ge, &diag_block(2, 2, 2)).unwrap();
        assert_eq!(kernel_dimension(&ge, &xi).unwrap(), 0);
        let ge3 = graded_end_algebra(&PolarizedHS::weight_one_standard(3)).unwrap();
        let xi = xi_from_top_block(&ge3, &diag_block(3, 3, 1)).unwrap();
        assert_eq!(kernel_dimension(&ge3, &xi).unwrap(), 3);
        assert_eq!(kernel_dimension_direct(&ge3, &xi).unwrap(), 3);
        let w2 = graded_end_algebra(&PolarizedHS::weight_two_standard(2, 3)).unwrap();
        let xi = xi_from_top_block(&w2, &diag_block(3, 2, 1)).unwrap();
        assert_eq!(kernel_dimension(&w2, &xi).unwrap(), 2);
    }

    #[test]
    fn abelian_pairs_have_non_positive_curvature() {
        let ge = graded_end_algebra(&PolarizedHS::weight_one_standard(2)).unwrap();
        assert!(is_abelian(&ge));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let x = random_horizontal(&ge, &mut rng);
            let y = random_horizontal(&ge, &mut rng);
            assert!(!bisectional_curvature(&ge, &x, &y).unwrap().value.is_positive());
            assert!(adjoint_residual(&ge, &x, &y).unwrap().is_zero());
        }
    }

    #[test]
    fn weight_two_quartic() {
        let ge = graded_end_algebra(&PolarizedHS::weight_two_standard(2, 3)).unwrap();
        let xi = xi_from_top_block(&ge, &diag_block(3, 2, 2)).unwrap();
        let q = sectional_quartic(&ge, &xi).unwrap();
        assert!(q.value.is_positive());
        assert_eq!(kernel_dimension(&ge, &xi).unwrap(), 0);
        assert!(q.fitted_is_integer, "{}", q.fitted_constant);
    }
}
