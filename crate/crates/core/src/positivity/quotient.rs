//! Curvature of a quotient bundle `0 → S → E → Q → 0` at a point.
//!
//! With `j : Q → E` the `C^∞` splitting (the orthogonal complement of `S`)
//! and `β = Σ β_i dt_i` the second fundamental form, `β_i : S → Q`,
//!
//! ```text
//! Θ_Q(q, ξ) = Θ_E(j q, ξ) + ‖β_ξ* q‖²,    β_ξ = Σ ξ_i β_i,
//! ```
//!
//! in unitary frames, so curvature increases on quotients.

use serde_json::{json, Value};

use crate::algebra::gaussian::Gaussian;
use crate::algebra::mat::CMat;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};

use super::model::{hermitian_norm_sq, CurvatureTensor};

/// `Θ_Q(q, ξ)` with its two contributions.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientCurvature {
    /// `Θ_E(j q, ξ)`.
    pub theta_e: Rational,
    /// `‖β_ξ* q‖²`.
    pub correction: Rational,
    /// `Θ_Q(q, ξ)`.
    pub theta_q: Rational,
    /// `Θ_Q ≥ Θ_E`.
    pub increases: bool,
}

impl QuotientCurvature {
    pub fn to_json(&self) -> Value {
        json!({
            "thetaE": self.theta_e.to_string(),
            "correction": self.correction.to_string(),
            "thetaQ": self.theta_q.to_string(),
            "increases": self.increases,
        })
    }
}

/// Evaluates the quotient curvature.
///
/// `j` is `rank E × rank Q`; `beta` holds one `rank Q × rank S` matrix per
/// tangent coordinate.
pub fn quotient_curvature_at(
    theta_e: &CurvatureTensor,
    j: &CMat,
    beta: &[CMat],
    q: &[Gaussian],
    xi: &[Gaussian],
) -> Result<QuotientCurvature> {
    let rank_q = j.cols();
    if j.rows() != theta_e.rank_e {
        return Err(Error::DimensionMismatch(format!("j must have {} rows", theta_e.rank_e)));
    }
    if q.len() != rank_q || xi.len() != theta_e.dim_t || beta.len() != theta_e.dim_t {
        return Err(Error::DimensionMismatch("q, ξ and β must match rank Q and dim T".into()));
    }
    let rank_s = beta.first().map_or(0, CMat::cols);
    if beta.iter().any(|b| b.rows() != rank_q || b.cols() != rank_s) {
        return Err(Error::DimensionMismatch(format!("every β_i must be {rank_q}×{rank_s}")));
    }
    let jq = j.mul_vec(q);
    let te = theta_e.eval(&jq, xi)?;
    let beta_xi = beta.iter().zip(xi).fold(CMat::zeros(rank_q, rank_s), |acc, (b, x)| acc.add(&b.scale(x)));
    let v = beta_xi.adjoint().mul_vec(q);
    let correction = hermitian_norm_sq(&CMat::identity(rank_s), &v);
    let theta_q = &te + &correction;
    let increases = theta_q >= te;
    Ok(QuotientCurvature { theta_e: te, correction, theta_q, increases })
}

/// The zero second fundamental form.
pub fn zero_beta(dim_t: usize, rank_q: usize, rank_s: usize) -> Vec<CMat> {
    (0..dim_t).map(|_| CMat::zeros(rank_q, rank_s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Ring;
    use crate::positivity::model::{curvature_from_model, random_model, random_vector, NormPositivityModel};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_second_fundamental_form() {
        let m = random_model(2, 3, 2, 11);
        let t = curvature_from_model(&m);
        let mut j = CMat::zeros(3, 2);
        j.set(1, 0, Gaussian::one());
        j.set(2, 1, Gaussian::one());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = random_vector(&mut rng, 2);
        let xi = random_vector(&mut rng, 2);
        let r = quotient_curvature_at(&t, &j, &zero_beta(2, 2, 1), &q, &xi).unwrap();
        assert_eq!(r.theta_q, r.theta_e);
        assert!(r.correction.is_zero());
    }

    #[test]
    fn pure_second_fundamental_form() {
        let t = curvature_from_model(&NormPositivityModel::zero(1, 2, 1));
        let mut j = CMat::zeros(2, 1);
        j.set(1, 0, Gaussian::one());
        let mut b = CMat::zeros(1, 1);
        b.set(0, 0, Gaussian::one());
        let r = quotient_curvature_at(&t, &j, &[b], &[Gaussian::one()], &[Gaussian::from_i64(2)]).unwrap();
        assert!(r.theta_e.is_zero());
        assert_eq!(r.theta_q, Rational::from_int(4));
    }

    #[test]
    fn curvature_increases_on_seeded_data() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for seed in 0..10 {
            let m = random_model(2, 3, 2, seed);
            let t = curvature_from_model(&m);
            let j = CMat::new(3, 2, random_vector(&mut rng, 6));
            let beta = vec![CMat::new(2, 1, random_vector(&mut rng, 2)), CMat::new(2, 1, random_vector(&mut rng, 2))];
            let r = quotient_curvature_at(&t, &j, &beta, &random_vector(&mut rng, 2), &random_vector(&mut rng, 2))
                .unwrap();
            assert!(r.increases);
        }
    }
}
