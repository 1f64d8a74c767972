//! The `deg_I` leading-part factorization `P = P_I · P_{I^c} + R`.

use serde_json::{json, Value};

use crate::algebra::field::Field;
use crate::algebra::poly::QPoly;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};
use crate::hodge::lmhs::{associated_graded_orbit, stratum_hodge_numbers};
use crate::hodge::spec::PolarizedOrbitSpec;
use crate::io;

use super::metric::{hodge_metric_polynomial, MetricPolynomial};

/// The factorization data along one stratum `I` (0-based indices).
#[derive(Clone, Debug, PartialEq)]
pub struct StratumFactorization {
    pub stratum: Vec<usize>,
    pub leading: QPoly,
    /// Monic factor in the variables `x_I`.
    pub p_i: QPoly,
    /// Cofactor in the variables `x_{I^c}`.
    pub p_ic: QPoly,
    pub remainder: QPoly,
    /// `deg_I` of the leading part.
    pub degree: i64,
    /// `Σ_a a · h^{n−a,0}_I` from the associated graded orbit.
    pub expected_degree: i64,
    /// Largest `deg_I` among the remainder terms (`None` when `R = 0`).
    pub remainder_degree: Option<i64>,
    /// `h^{n−a,0}_I`, indexed by `a`.
    pub stratum_hodge_numbers: Vec<usize>,
    /// The metric polynomial of the stratum orbit (in all `k` variables).
    pub stratum_polynomial: QPoly,
    /// `p_ic = λ · stratum_polynomial` with `λ > 0`.
    pub stratum_ratio: Rational,
}

impl StratumFactorization {
    pub fn to_json(&self) -> Value {
        json!({
            "stratum": self.stratum.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "leading": self.leading.render("x"),
            "pI": self.p_i.render("x"),
            "pIc": self.p_ic.render("x"),
            "remainder": self.remainder.render("x"),
            "degI": self.degree,
            "expectedDegI": self.expected_degree,
            "remainderDegI": self.remainder_degree,
            "stratumHodgeNumbers": self.stratum_hodge_numbers,
            "stratumPolynomial": self.stratum_polynomial.render("x"),
            "stratumRatio": io::exact_and_decimal(&self.stratum_ratio),
        })
    }
}

/// Weight vector with 1 on the stratum and 0 elsewhere.
pub fn stratum_weights(k: usize, stratum: &[usize]) -> Vec<i64> {
    (0..k).map(|i| i64::from(stratum.contains(&i))).collect()
}

/// Validates a stratum index set against `k` nilpotents.
pub fn check_stratum(k: usize, stratum: &[usize]) -> Result<()> {
    if stratum.iter().any(|&i| i >= k) {
        return Err(Error::InvalidArgument(format!("stratum indices must lie in 1..={k}")));
    }
    let mut s = stratum.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != stratum.len() {
        return Err(Error::InvalidArgument("stratum indices must be distinct".into()));
    }
    Ok(())
}

/// The metric polynomial of the stratum orbit: the product of the metric
/// polynomials of the primitive graded pieces, in the variables `x_{I^c}`
/// (embedded into all `k` variables), monic.
pub fn stratum_metric_polynomial(spec: &PolarizedOrbitSpec, stratum: &[usize]) -> Result<QPoly> {
    let k = spec.k();
    let mut out = QPoly::one(k);
    for piece in associated_graded_orbit(spec, stratum)? {
        let p = hodge_metric_polynomial(&piece.spec)?;
        out = out.mul(&p.p.embed(k, &piece.indices));
    }
    Ok(out.monic().0)
}

/// Splits `l` as `f(x_I) · g(x_{I^c})` when such a factorization exists;
/// `f` is returned monic.
pub fn split_product(l: &QPoly, stratum: &[usize]) -> Option<(QPoly, QPoly)> {
    let k = l.num_vars();
    let (lead, c) = l.leading_term()?;
    let in_i = |i: usize| stratum.contains(&i);
    let project = |e: &[u32], keep_i: bool| -> Vec<u32> {
        e.iter().enumerate().map(|(i, &x)| if in_i(i) == keep_i { x } else { 0 }).collect()
    };
    let lead_i = project(lead, true);
    let lead_ic = project(lead, false);
    let c = c.clone();
    let mut f = QPoly::zero(k);
    let mut g = QPoly::zero(k);
    for (e, coef) in l.terms() {
        if project(e, false) == lead_ic {
            f.add_term(project(e, true), coef.clone());
        }
        if project(e, true) == lead_i {
            g.add_term(project(e, false), coef.div(&c));
        }
    }
    if f.mul(&g) != *l {
        return None;
    }
    let (f, fc) = f.monic();
    Some((f, g.scale(&fc)))
}

/// Computes and verifies the factorization along `I`.
///
/// Fails with [`Error::NoFactorization`] if the leading part does not
/// factor, if its `deg_I` differs from `Σ a·h^{n−a,0}_I`, or if the
/// `x_{I^c}` factor is not a positive multiple of the stratum polynomial.
pub fn stratum_factorization(
    p: &MetricPolynomial,
    spec: &PolarizedOrbitSpec,
    stratum: &[usize],
) -> Result<StratumFactorization> {
    let k = spec.k();
    check_stratum(k, stratum)?;
    if stratum.is_empty() {
        return Err(Error::InvalidArgument("the stratum must be nonempty".into()));
    }
    let mut stratum = stratum.to_vec();
    stratum.sort_unstable();
    let weights = stratum_weights(k, &stratum);
    let leading = p.p.leading_part_by_weight(&weights);
    let degree = leading.max_weighted_degree(&weights).unwrap_or(0);
    let remainder = p.p.sub(&leading);
    let remainder_degree = remainder.max_weighted_degree(&weights);
    let (p_i, p_ic) = split_product(&leading, &stratum)
        .ok_or_else(|| Error::NoFactorization(format!("the deg_I leading part {} is not a product", leading.render("x"))))?;
    let hodge = stratum_hodge_numbers(spec, &stratum)?;
    let expected_degree: i64 = hodge.iter().enumerate().map(|(a, h)| a as i64 * *h as i64).sum();
    if expected_degree != degree {
        return Err(Error::NoFactorization(format!(
            "deg_I of the leading part is {degree}, the stratum Hodge numbers predict {expected_degree}"
        )));
    }
    let stratum_polynomial = stratum_metric_polynomial(spec, &stratum)?;
    let stratum_ratio = p_ic
        .proportionality(&stratum_polynomial)
        .filter(Rational::is_positive)
        .ok_or_else(|| {
            Error::NoFactorization(format!(
                "the I^c factor {} is not a positive multiple of the stratum polynomial {}",
                p_ic.render("x"),
                stratum_polynomial.render("x")
            ))
        })?;
    Ok(StratumFactorization {
        stratum,
        leading,
        p_i,
        p_ic,
        remainder,
        degree,
        expected_degree,
        remainder_degree,
        stratum_hodge_numbers: hodge,
        stratum_polynomial,
        stratum_ratio,
    })
}
