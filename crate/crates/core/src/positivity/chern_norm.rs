//! Chern forms of norm-positive bundles on tangent subspaces.
//!
//! Viewing `A` as a `rank G × dim T` matrix with entries in `E` (linear
//! forms `Σ_α A[g][α·dim T + i] e_α`), `∧^q A` is the matrix of its `q × q`
//! minors, with entries in `S^q E`. Up to a universal constant, fixed to 1,
//!
//! ```text
//! c_q(Θ)(W) = ‖∧^q A|_W‖² / ‖w_1 ∧ … ∧ w_q‖²
//! ```
//!
//! on a `q`-plane `W = span(w_1, …, w_q)`, with the metric `a!` on `S^q E`.

use serde_json::{json, Value};

use crate::algebra::snf::combinations;
use crate::algebra::field::{Field, Ring};
use crate::algebra::gaussian::Gaussian;
use crate::algebra::mat::CMat;
use crate::algebra::poly::{poly_mat_det, CPoly};
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};

use super::model::{curvature_from_model, multi_factorial, NormPositivityModel};

/// `c_q(Θ)` on a `q`-plane together with `c_1(Θ)^q` on the same plane.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernFormValue {
    pub q: usize,
    /// `‖∧^q A|_W‖² / ‖∧^q W‖²`.
    pub value: Rational,
    /// `det(τ|_W) / det(W* W)` for the trace form `τ`.
    pub c1_power: Rational,
    /// Rank of `A` as a map `T → Hom(E, G)`.
    pub tangent_rank: usize,
}

impl ChernFormValue {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "value": self.value.to_string(),
            "c1Power": self.c1_power.to_string(),
            "tangentRank": self.tangent_rank,
        })
    }
}

fn check_subspace(m: &NormPositivityModel, q: usize, basis: &[Vec<Gaussian>]) -> Result<CMat> {
    if basis.len() != q {
        return Err(Error::DimensionMismatch(format!("the subspace must be spanned by {q} vectors")));
    }
    if basis.iter().any(|w| w.len() != m.dim_t) {
        return Err(Error::DimensionMismatch(format!("subspace vectors must have {} entries", m.dim_t)));
    }
    let w = if q == 0 { CMat::zeros(m.dim_t, 0) } else { CMat::from_columns(m.dim_t, basis) };
    if w.rank() != q {
        return Err(Error::DimensionMismatch(format!("the spanning vectors do not span a {q}-plane")));
    }
    Ok(w)
}

/// `‖Σ c_a e^a‖² = Σ |c_a|² a!`.
fn sym_norm_sq(p: &CPoly) -> Rational {
    p.terms().iter().fold(Rational::zero(), |acc, (e, c)| &acc + &(&c.norm_sq() * &multi_factorial(e)))
}

/// Rank of `A : T → Hom(E, G)`.
pub fn tangent_rank(m: &NormPositivityModel) -> usize {
    let blocks: Vec<CMat> = (0..m.rank_e).map(|a| m.block(a)).collect();
    let stacked = blocks.iter().skip(1).fold(blocks.first().cloned().unwrap_or_else(|| CMat::zeros(0, m.dim_t)), |acc, b| acc.vstack(b));
    if stacked.rows() == 0 {
        0
    } else {
        stacked.rank()
    }
}

/// `c_q(Θ)` on the plane spanned by `basis`.
pub fn chern_form_norm(m: &NormPositivityModel, q: usize, basis: &[Vec<Gaussian>]) -> Result<ChernFormValue> {
    if !m.is_unitary() {
        return Err(Error::InvalidArgument("Chern forms are evaluated in unitary frames".into()));
    }
    let w = check_subspace(m, q, basis)?;
    let r = m.rank_e;
    // A|_W as a rank G × q matrix of linear forms on E.
    let aw: Vec<Vec<CPoly>> = (0..m.rank_g)
        .map(|g| {
            (0..q)
                .map(|c| {
                    let mut p = CPoly::zero(r);
                    for alpha in 0..r {
                        let coef = (0..m.dim_t).fold(Gaussian::zero(), |acc, i| {
                            acc.add(&m.a.get(g, m.column(alpha, i)).mul(w.get(i, c)))
                        });
                        p = p.add(&CPoly::var(r, alpha).scale(&coef));
                    }
                    p
                })
                .collect()
        })
        .collect();
    let rows: Vec<usize> = (0..m.rank_g).collect();
    let mut total = Rational::zero();
    for subset in combinations(&rows, q) {
        let minor: Vec<Vec<CPoly>> = subset.iter().map(|&g| aw[g].clone()).collect();
        total = &total + &sym_norm_sq(&poly_mat_det(&minor, r));
    }
    let gram = w.adjoint().mul(&w).det().real_part();
    let value = &total / &gram;
    let tau = curvature_from_model(m).trace_form();
    let c1_power = &w.adjoint().mul(&tau).mul(&w).det().real_part() / &gram;
    Ok(ChernFormValue { q, value, c1_power, tangent_rank: tangent_rank(m) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::positivity::model::{grassmannian_model, random_model};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(x: i64) -> Gaussian {
        Gaussian::from_i64(x)
    }

    #[test]
    fn zero_model_has_vanishing_forms() {
        let m = NormPositivityModel::zero(3, 2, 2);
        for q in 1..=2 {
            let basis: Vec<Vec<Gaussian>> = (0..q).map(|j| (0..3).map(|i| g((i == j) as i64)).collect()).collect();
            let v = chern_form_norm(&m, q, &basis).unwrap();
            assert!(v.value.is_zero() && v.c1_power.is_zero());
        }
    }

    #[test]
    fn grassmannian_second_chern_form() {
        let m = grassmannian_model();
        let plane = vec![vec![g(1), g(2), g(0), g(1)], vec![g(0), g(1), g(1), g(-1)]];
        assert!(chern_form_norm(&m, 2, &plane).unwrap().value.is_positive());
        assert!(chern_form_norm(&m, 1, &plane[..1]).unwrap().value.is_positive());
    }

    #[test]
    fn c1_power_vanishes_exactly_below_the_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // rank E = 1, rank G = 1, dim T = 3: A : T → Hom(E, G) has rank 1.
        let m = random_model(3, 1, 1, 4);
        assert_eq!(tangent_rank(&m), 1);
        for _ in 0..5 {
            let plane = vec![super::super::model::random_vector(&mut rng, 3), super::super::model::random_vector(&mut rng, 3)];
            assert!(chern_form_norm(&m, 2, &plane).unwrap().c1_power.is_zero());
        }
        let m = random_model(3, 2, 1, 4);
        assert_eq!(tangent_rank(&m), 2);
        let plane = vec![super::super::model::random_vector(&mut rng, 3), super::super::model::random_vector(&mut rng, 3)];
        assert!(chern_form_norm(&m, 2, &plane).unwrap().c1_power.is_positive());
    }
}
