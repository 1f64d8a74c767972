//! Sampled semi-positivity and strong semi-positivity of curvature tensors.
//!
//! A tensor is semi-positive when `Θ(e, ξ) ≥ 0` for all `e, ξ`; it is
//! strongly semi-positive when in addition the trace form `Tr Θ` (the
//! curvature of `det E`) is positive somewhere. Each sample is certified by
//! the exact inertia of its Nakano matrix, and the minimum of `Θ` over
//! seeded normalized decomposables is reported alongside.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::ldl::{inertia, Definiteness};
use crate::algebra::mat::CMat;
use crate::algebra::rational::Rational;
use crate::error::Result;

use super::model::{hermitian_norm_sq, random_vector, CurvatureTensor};

/// Outcome for one curvature tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct SemipositivitySample {
    pub nakano: Definiteness,
    pub trace_form: Definiteness,
    /// Minimum of `Θ(e, ξ)/(‖e‖²‖ξ‖²)` over the seeded decomposables.
    pub sampled_minimum: Option<Rational>,
}

impl SemipositivitySample {
    /// Semi-positive, certified by the Nakano inertia.
    pub fn semi_positive(&self) -> bool {
        self.nakano.is_psd()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nakano": self.nakano.to_json(),
            "traceForm": self.trace_form.to_json(),
            "tracePositive": self.trace_form.is_pd(),
            "sampledMinimum": self.sampled_minimum.as_ref().map(|m| m.to_string()),
            "semiPositive": self.semi_positive(),
        })
    }
}

/// Report over all samples.
#[derive(Clone, Debug, PartialEq)]
pub struct SemipositivityReport {
    pub samples: Vec<SemipositivitySample>,
    pub semi_positive: bool,
    pub strongly_semi_positive_on_sampled_set: bool,
}

impl SemipositivityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "samples": self.samples.iter().map(SemipositivitySample::to_json).collect::<Vec<_>>(),
            "semi-positive": self.semi_positive,
            "strongly semi-positive on sampled set": self.strongly_semi_positive_on_sampled_set,
        })
    }
}

/// Checks each tensor, drawing `decomposables` seeded pairs `(e, ξ)` per
/// sample.
pub fn strong_semipositivity_check(
    samples: &[CurvatureTensor],
    decomposables: usize,
    seed: u64,
) -> Result<SemipositivityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples.len());
    for t in samples {
        let mut min: Option<Rational> = None;
        for _ in 0..decomposables {
            let e = random_vector(&mut rng, t.rank_e);
            let xi = random_vector(&mut rng, t.dim_t);
            let ne = hermitian_norm_sq(&CMat::identity(t.rank_e), &e);
            let nx = hermitian_norm_sq(&CMat::identity(t.dim_t), &xi);
            if ne.is_zero() || nx.is_zero() {
                continue;
            }
            let v = &t.eval(&e, &xi)? / &(&ne * &nx);
            if min.as_ref().is_none_or(|m| v < *m) {
                min = Some(v);
            }
        }
        out.push(SemipositivitySample {
            nakano: t.nakano_definiteness(),
            trace_form: inertia(&t.trace_form()),
            sampled_minimum: min,
        });
    }
    let semi_positive = out.iter().all(|s| s.semi_positive() && s.sampled_minimum.as_ref().is_none_or(|m| !m.is_negative()));
    let strong = semi_positive && out.iter().any(|s| s.trace_form.is_pd());
    Ok(SemipositivityReport { samples: out, semi_positive, strongly_semi_positive_on_sampled_set: strong })
}
