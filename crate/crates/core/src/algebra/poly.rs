//! Sparse multivariate polynomials over an exact field.
//!
//! Terms are kept in a map from exponent vectors to nonzero coefficients.
//! The canonical term order is total degree first, then lexicographic,
//! both descending; the *leading* monomial is the greatest in that order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::field::Field;
use super::gaussian::Gaussian;
use super::rational::{rational_from_json, Rational};
use crate::error::{Error, Result};

/// An exponent vector.
pub type Monomial = Vec<u32>;

/// A sparse polynomial in `num_vars` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly<F> {
    num_vars: usize,
    terms: BTreeMap<Monomial, F>,
}

/// Polynomials with rational coefficients.
pub type QPoly = MultiPoly<Rational>;
/// Polynomials with Gaussian-rational coefficients.
pub type CPoly = MultiPoly<Gaussian>;

/// Total-degree-then-lex comparison of exponent vectors.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(num_vars: usize) -> Self {
        MultiPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: F) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, F::one())
    }

    /// The variable `x_i` (0-based index).
    pub fn var(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars, "variable index out of range");
        let mut e = vec![0; num_vars];
        e[i] = 1;
        let mut p = Self::zero(num_vars);
        p.add_term(e, F::one());
        p
    }

    /// A single term `c · x^e`.
    pub fn monomial(e: Monomial, c: F) -> Self {
        let mut p = Self::zero(e.len());
        p.add_term(e, c);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent length must equal the variable count");
            p.add_term(e, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Adds `c · x^e` in place.
    pub fn add_term(&mut self, e: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn coeff(&self, e: &[u32]) -> F {
        self.terms.get(e).cloned().unwrap_or_else(F::zero)
    }

    /// Terms in canonical (descending total-degree-then-lex) order.
    pub fn terms(&self) -> Vec<(&Monomial, &F)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }

    /// The greatest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True when every term has the same total degree (the zero polynomial is homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// The constant polynomial's value, when constant.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                if e.iter().all(|&x| x == 0) {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.num_vars, o.num_vars, "variable counts must agree");
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.num_vars, o.num_vars, "variable counts must agree");
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.neg());
        }
        p
    }

    pub fn neg(&self) -> Self {
        self.scale(&F::one().neg())
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(self.num_vars);
        }
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(s))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.num_vars, o.num_vars, "variable counts must agree");
        let mut p = Self::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1.mul(c2));
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.num_vars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// `∂/∂x_var`.
    pub fn partial_derivative(&self, var: usize) -> Self {
        assert!(var < self.num_vars, "variable index out of range");
        let mut p = Self::zero(self.num_vars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            p.add_term(e2, c.mul(&F::from_i64(e[var] as i64)));
        }
        p
    }

    /// Exact evaluation at a point.
    pub fn evaluate(&self, x: &[F]) -> F {
        assert_eq!(x.len(), self.num_vars, "point must have one entry per variable");
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(xi);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Weighted degree of a monomial.
    pub fn weighted_degree(e: &[u32], weights: &[i64]) -> i64 {
        e.iter().zip(weights).map(|(&a, &w)| a as i64 * w).sum()
    }

    /// The sum of the terms of maximal weighted degree.
    pub fn leading_part_by_weight(&self, weights: &[i64]) -> Self {
        assert_eq!(weights.len(), self.num_vars, "one weight per variable");
        let Some(m) = self.terms.keys().map(|e| Self::weighted_degree(e, weights)).max() else {
            return Self::zero(self.num_vars);
        };
        MultiPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| Self::weighted_degree(e, weights) == m)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Maximal weighted degree over the terms (None for the zero polynomial).
    pub fn max_weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        self.terms.keys().map(|e| Self::weighted_degree(e, weights)).max()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert_eq!(self.num_vars, d.num_vars, "variable counts must agree");
        let (de, dc) = d.leading_term()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = Self::zero(self.num_vars);
        while let Some((re, rc)) = r.leading_term() {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Monomial = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let c = rc.div(&dc);
            let t = Self::monomial(e, c);
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Renames variables: variable `i` of `self` becomes variable `map[i]`
    /// of a polynomial in `num_vars` variables.
    pub fn embed(&self, num_vars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.num_vars, "one target per variable");
        let mut p = Self::zero(num_vars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; num_vars];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            p.add_term(e2, c.clone());
        }
        p
    }

    /// Divides by the leading coefficient; returns the monic polynomial and
    /// the coefficient. The zero polynomial is returned with coefficient one.
    pub fn monic(&self) -> (Self, F) {
        match self.leading_term() {
            None => (self.clone(), F::one()),
            Some((_, c)) => {
                let c = c.clone();
                (self.scale(&c.inv()), c)
            }
        }
    }

    /// Returns `Some(λ)` with `self = λ · o` when the two are proportional
    /// (and `o` is nonzero).
    pub fn proportionality(&self, o: &Self) -> Option<F> {
        let (oe, oc) = o.leading_term()?;
        let lam = self.coeff(oe).div(oc);
        if *self == o.scale(&lam) {
            Some(lam)
        } else {
            None
        }
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.num_vars).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    /// Renders with a variable-name prefix, e.g. `x1*x2 + 2*x3^2`.
    pub fn render(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms().into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| if a == 1 { format!("{prefix}{}", i + 1) } else { format!("{prefix}{}^{a}", i + 1) })
                .collect();
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) if c.imag_part().is_zero() => (true, m.to_string()),
                _ => (false, cs.clone()),
            };
            let needs_paren = !c.imag_part().is_zero() && !c.real_part().is_zero();
            let coef = if needs_paren { format!("({mag})") } else { mag };
            let body = if mono.is_empty() {
                coef
            } else if coef == "1" {
                mono.join("*")
            } else {
                format!("{coef}*{}", mono.join("*"))
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
                s.push_str(&body);
            } else {
                s.push_str(if neg { " - " } else { " + " });
                s.push_str(&body);
            }
        }
        s
    }
}

impl QPoly {
    /// Embeds into Gaussian coefficients.
    pub fn to_gaussian(&self) -> CPoly {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), Gaussian::real(c.clone()))).collect(),
        }
    }

    /// JSON encoding `{"vars": k, "terms": [{"exp": [..], "coef": "p/q"}]}`
    /// with terms in canonical order.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .into_iter()
            .map(|(e, c)| json!({"exp": e, "coef": c.to_string()}))
            .collect();
        json!({"vars": self.num_vars, "terms": terms})
    }

    /// Parses the JSON encoding of [`QPoly::to_json`].
    pub fn from_json(v: &Value) -> Result<Self> {
        let err = |m: &str| Error::Schema(format!("polynomial: {m}"));
        let k = v.get("vars").and_then(Value::as_u64).ok_or_else(|| err("missing \"vars\""))? as usize;
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| err("missing \"terms\""))?;
        let mut p = Self::zero(k);
        for t in terms {
            let e: Vec<u32> = t
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| err("term without \"exp\""))?
                .iter()
                .map(|x| x.as_u64().map(|y| y as u32).ok_or_else(|| err("exponents must be non-negative integers")))
                .collect::<Result<_>>()?;
            if e.len() != k {
                return Err(err("exponent length differs from \"vars\""));
            }
            let c = rational_from_json(t.get("coef").ok_or_else(|| err("term without \"coef\""))?)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl CPoly {
    /// The rational polynomial when every coefficient is real.
    pub fn to_rational(&self) -> Option<QPoly> {
        if self.terms.values().all(|c| c.is_real()) {
            Some(MultiPoly {
                num_vars: self.num_vars,
                terms: self.terms.iter().map(|(e, c)| (e.clone(), c.re.clone())).collect(),
            })
        } else {
            None
        }
    }

    /// Coefficientwise conjugate.
    pub fn conj(&self) -> Self {
        MultiPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
        }
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

/// A square matrix of polynomials, stored row-major.
pub type PolyMat<F> = Vec<Vec<MultiPoly<F>>>;

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
///
/// Each intermediate division is exact; the quotient is computed by
/// multivariate division by the previous pivot.
pub fn poly_mat_det<F: Field>(m: &PolyMat<F>, num_vars: usize) -> MultiPoly<F> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return MultiPoly::one(num_vars);
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = MultiPoly::one(num_vars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = !sign;
                }
                None => return MultiPoly::zero(num_vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
            }
            a[i][k] = MultiPoly::zero(num_vars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Determinant by cofactor expansion along the first row (reference method).
pub fn poly_mat_det_cofactor<F: Field>(m: &PolyMat<F>, num_vars: usize) -> MultiPoly<F> {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one(num_vars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(num_vars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: PolyMat<F> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = m[0][j].mul(&poly_mat_det_cofactor(&minor, num_vars));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> QPoly {
        QPoly::var(3, i)
    }

    #[test]
    fn renders_in_canonical_order() {
        let p = x(1).mul(&x(2)).add(&x(0).mul(&x(2))).add(&x(0).mul(&x(1)));
        assert_eq!(p.to_string(), "x1*x2 + x1*x3 + x2*x3");
        let q = x(0).pow(2).scale(&Rational::from_int(-3)).add(&QPoly::constant(3, Rational::new(1, 2)));
        assert_eq!(q.to_string(), "-3*x1^2 + 1/2");
    }

    #[test]
    fn two_by_two_and_diagonal_determinants() {
        let m = vec![vec![x(0), x(2)], vec![x(2), x(1)]];
        assert_eq!(poly_mat_det(&m, 3), x(0).mul(&x(1)).sub(&x(2).pow(2)));
        let z = QPoly::zero(3);
        let d = vec![vec![x(0), z.clone(), z.clone()], vec![z.clone(), x(1), z.clone()], vec![z.clone(), z, x(2)]];
        assert_eq!(poly_mat_det(&d, 3), x(0).mul(&x(1)).mul(&x(2)));
    }

    #[test]
    fn derivative_evaluation_and_leading_part() {
        assert_eq!(x(0).pow(2).partial_derivative(0), x(0).scale(&Rational::from_int(2)));
        let p = x(0).mul(&x(1)).add(&x(0).mul(&x(2))).add(&x(1).mul(&x(2)));
        let one = vec![Rational::one(); 3];
        assert_eq!(p.evaluate(&one), Rational::from_int(3));
        let lead = p.leading_part_by_weight(&[0, 0, 1]);
        assert_eq!(lead, x(2).mul(&x(0).add(&x(1))));
    }

    #[test]
    fn exact_division_detects_non_divisors() {
        let a = x(0).add(&x(1));
        let b = x(0).sub(&x(2));
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(x(0).exact_div(&x(1)), None);
    }

    #[test]
    fn json_round_trip() {
        let p = x(0).mul(&x(1)).add(&QPoly::constant(3, Rational::new(-2, 3)));
        assert_eq!(QPoly::from_json(&p.to_json()).unwrap(), p);
    }
}
