//! JSON encodings of exact scalars, vectors and matrices.
//!
//! Rationals are strings `"p/q"` (integers may also be JSON numbers);
//! Gaussian rationals are rational literals or objects `{"re": .., "im": ..}`;
//! matrices are arrays of rows. Decoding errors name the offending field.

use serde_json::{json, Map, Value};

use crate::algebra::gaussian::Gaussian;
use crate::algebra::mat::{CMat, QMat};
use crate::algebra::rational::{rational_from_json, Rational};
use crate::error::{Error, Result};

fn schema(what: &str, msg: &str) -> Error {
    Error::Schema(format!("{what}: {msg}"))
}

/// Looks up a required key of a JSON object.
pub fn field<'a>(v: &'a Value, key: &str, what: &str) -> Result<&'a Value> {
    let obj = v.as_object().ok_or_else(|| schema(what, "expected an object"))?;
    obj.get(key).ok_or_else(|| schema(what, &format!("missing field \"{key}\"")))
}

/// A required non-negative integer field.
pub fn usize_field(v: &Value, key: &str, what: &str) -> Result<usize> {
    field(v, key, what)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| schema(what, &format!("field \"{key}\" must be a non-negative integer")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(what, "expected an array"))
}

fn with_context<T>(r: Result<T>, what: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{what}: {m}")),
        other => other,
    })
}

pub fn qvec_from_json(v: &Value, what: &str) -> Result<Vec<Rational>> {
    array(v, what)?
        .iter()
        .enumerate()
        .map(|(i, x)| with_context(rational_from_json(x), &format!("{what}[{i}]")))
        .collect()
}

pub fn cvec_from_json(v: &Value, what: &str) -> Result<Vec<Gaussian>> {
    array(v, what)?
        .iter()
        .enumerate()
        .map(|(i, x)| with_context(Gaussian::from_json(x), &format!("{what}[{i}]")))
        .collect()
}

fn rows_from_json<T>(v: &Value, what: &str, f: impl Fn(&Value, &str) -> Result<Vec<T>>) -> Result<Vec<Vec<T>>> {
    let rows = array(v, what)?
        .iter()
        .enumerate()
        .map(|(i, r)| f(r, &format!("{what}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != c) {
        return Err(schema(what, "rows must all have the same length"));
    }
    Ok(rows)
}

pub fn qmat_from_json(v: &Value, what: &str) -> Result<QMat> {
    Ok(QMat::from_rows(rows_from_json(v, what, qvec_from_json)?))
}

pub fn cmat_from_json(v: &Value, what: &str) -> Result<CMat> {
    Ok(CMat::from_rows(rows_from_json(v, what, cvec_from_json)?))
}

/// A list of vectors (not required to form a rectangular matrix when empty).
pub fn cvecs_from_json(v: &Value, what: &str) -> Result<Vec<Vec<Gaussian>>> {
    array(v, what)?
        .iter()
        .enumerate()
        .map(|(i, r)| cvec_from_json(r, &format!("{what}[{i}]")))
        .collect()
}

pub fn qvecs_from_json(v: &Value, what: &str) -> Result<Vec<Vec<Rational>>> {
    array(v, what)?
        .iter()
        .enumerate()
        .map(|(i, r)| qvec_from_json(r, &format!("{what}[{i}]")))
        .collect()
}

pub fn rational_to_json(x: &Rational) -> Value {
    Value::String(x.to_string())
}

/// Real Gaussian scalars are written as plain rational strings.
pub fn gaussian_to_json(x: &Gaussian) -> Value {
    if x.is_real() {
        rational_to_json(&x.re)
    } else {
        x.to_json()
    }
}

pub fn qvec_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_json).collect())
}

pub fn cvec_to_json(v: &[Gaussian]) -> Value {
    Value::Array(v.iter().map(gaussian_to_json).collect())
}

pub fn qmat_to_json(m: &QMat) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| qvec_to_json(r)).collect())
}

pub fn cmat_to_json(m: &CMat) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| cvec_to_json(r)).collect())
}

/// An exact rational together with its decimal rendering.
pub fn exact_and_decimal(x: &Rational) -> Value {
    json!({"exact": x.to_string(), "decimal": x.to_decimal(12)})
}

/// Builds a JSON object from key-value pairs (keys are kept sorted by
/// `serde_json`'s default map).
pub fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_round_trip() {
        let m = QMat::from_rows(vec![vec![Rational::new(1, 2), Rational::from_int(-3)], vec![Rational::zero(), Rational::one()]]);
        let j = qmat_to_json(&m);
        assert_eq!(qmat_from_json(&j, "m").unwrap(), m);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let j = json!([["1", "2"], ["3"]]);
        assert!(matches!(qmat_from_json(&j, "Q"), Err(Error::Schema(_))));
    }

    #[test]
    fn gaussian_vectors_accept_both_encodings() {
        let j = json!(["1/2", {"re": "0", "im": "1"}, 3]);
        let v = cvec_from_json(&j, "v").unwrap();
        assert_eq!(v[1], Gaussian::i());
        assert_eq!(v[2], Gaussian::from_ints(3, 0));
        assert_eq!(cvec_from_json(&cvec_to_json(&v), "v").unwrap(), v);
    }
}
