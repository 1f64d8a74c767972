//! The Chern form `G = −Hess(log P)` of a metric polynomial.
//!
//! In the coordinates `x_j = −log|t_j|` the curvature of the metric `P`
//! has `(i, j̄)` coefficient `G_ij / (4 t_i t̄_j)` with
//!
//! ```text
//! G_ij = (∂_i P · ∂_j P − P · ∂_i∂_j P) / P²,
//! ```
//!
//! so positivity of the form is positivity of the real symmetric matrix `G`.

use serde_json::{json, Value};

use crate::algebra::ldl::{inertia, Definiteness};
use crate::algebra::mat::QMat;
use crate::algebra::poly::QPoly;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};
use crate::io;

/// `G` evaluated at one point of the positive orthant.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernSample {
    pub x: Vec<Rational>,
    pub g: QMat,
    pub definiteness: Definiteness,
}

impl ChernSample {
    pub fn is_psd(&self) -> bool {
        self.definiteness.is_psd()
    }

    pub fn rank(&self) -> usize {
        self.definiteness.rank()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "x": io::qvec_to_json(&self.x),
            "G": io::qmat_to_json(&self.g),
            "psd": self.is_psd(),
            "rank": self.rank(),
        })
    }
}

/// All first and second partial derivatives, computed once and reused.
#[derive(Clone, Debug)]
pub struct ChernForm {
    p: QPoly,
    first: Vec<QPoly>,
    second: Vec<Vec<QPoly>>,
}

impl ChernForm {
    pub fn new(p: &QPoly) -> Self {
        let k = p.num_vars();
        let first: Vec<QPoly> = (0..k).map(|i| p.partial_derivative(i)).collect();
        let second = (0..k).map(|i| (0..k).map(|j| first[i].partial_derivative(j)).collect()).collect();
        ChernForm { p: p.clone(), first, second }
    }

    /// `G(x)`; fails with [`Error::ZeroAtPoint`] where `P` vanishes.
    pub fn at(&self, x: &[Rational]) -> Result<ChernSample> {
        let k = self.p.num_vars();
        if x.len() != k {
            return Err(Error::DimensionMismatch(format!("point has {} coordinates, polynomial has {k} variables", x.len())));
        }
        let pv = self.p.evaluate(x);
        if pv.is_zero() {
            return Err(Error::ZeroAtPoint);
        }
        let d: Vec<Rational> = self.first.iter().map(|f| f.evaluate(x)).collect();
        let p2 = &pv * &pv;
        let mut g = QMat::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let h = self.second[i][j].evaluate(x);
                let v = &(&(&d[i] * &d[j]) - &(&pv * &h)) / &p2;
                g.set(i, j, v.clone());
                g.set(j, i, v);
            }
        }
        let definiteness = inertia(&g);
        Ok(ChernSample { x: x.to_vec(), g, definiteness })
    }
}

/// `G = −Hess(log P)` at `x`, with its exact inertia.
pub fn chern_form_at(p: &QPoly, x: &[Rational]) -> Result<ChernSample> {
    ChernForm::new(p).at(x)
}
