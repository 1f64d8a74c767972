//! Monomial maps `μ(t) = (t^{B_1}, …, t^{B_N})` of nilpotent orbits and their
//! stratum variants.
//!
//! Along a stratum `I`, a combination `Σ_{j∈I^c} b_j N_j` counts as a
//! relation when it lies in `W_{−1}(ad N_I)` on `End(V)` (weights centered
//! at 0). The monomials of the stratum map are the non-negative generators
//! of the orthogonal complement of these relations.

use serde_json::{json, Value};

use crate::algebra::mat::QMat;
use crate::algebra::poly::QPoly;
use crate::algebra::rational::Rational;
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};
use crate::hodge::spec::PolarizedOrbitSpec;
use crate::hodge::weight::weight_filtration;

use super::relations::{flattening, nonnegative_generators, relation_space, relation_space_of, RelationSpace};

/// A monomial map given by a non-negative integer exponent matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    /// Row `m` is the exponent vector of the `m`-th monomial.
    pub exponents: Vec<Vec<i64>>,
    /// The original (0-based) index of each source variable `t_j`.
    pub variables: Vec<usize>,
}

impl MonomialMap {
    /// The map on `t_1..t_k` with the given exponent rows.
    pub fn new(k: usize, exponents: Vec<Vec<i64>>) -> Result<Self> {
        if exponents.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch(format!("every exponent row must have {k} entries")));
        }
        Ok(MonomialMap { exponents, variables: (0..k).collect() })
    }

    /// Number of source variables.
    pub fn k(&self) -> usize {
        self.variables.len()
    }

    /// Target dimension `N`.
    pub fn target_dim(&self) -> usize {
        self.exponents.len()
    }

    /// All exponents are non-negative.
    pub fn is_nonnegative(&self) -> bool {
        self.exponents.iter().flatten().all(|&x| x >= 0)
    }

    /// The exponent matrix as an `N × k` rational matrix.
    pub fn matrix(&self) -> QMat {
        let rows: Vec<Vec<Rational>> =
            self.exponents.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
        if rows.is_empty() {
            QMat::zeros(0, self.k())
        } else {
            QMat::from_rows(rows)
        }
    }

    /// Renders each monomial, e.g. `t1*t3^2`, naming variables by their
    /// original indices.
    pub fn monomials(&self) -> Vec<String> {
        let mut n = self.variables.iter().copied().max().map_or(0, |m| m + 1);
        n = n.max(self.k());
        self.exponents
            .iter()
            .map(|row| {
                let mut e = vec![0u32; n];
                for (j, &x) in row.iter().enumerate() {
                    e[self.variables[j]] = x.max(0) as u32;
                }
                QPoly::monomial(e, Rational::one()).render("t")
            })
            .collect()
    }

    /// `ker E` for the exponent matrix `E`, as a subspace of `Q^k`.
    pub fn kernel(&self) -> Subspace<Rational> {
        if self.exponents.is_empty() {
            return Subspace::full(self.k());
        }
        Subspace::span(self.k(), &self.matrix().kernel())
    }

    /// Parses `{"exponents": [[...], ...], "variables"?: [1-based indices]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v
            .get("exponents")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("monomial map: \"exponents\" must be an array of integer rows".into()))?;
        let exponents = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .and_then(|xs| xs.iter().map(Value::as_i64).collect::<Option<Vec<i64>>>())
                    .ok_or_else(|| Error::Schema("monomial map: exponent rows must contain integers".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let k = match v.get("k").and_then(Value::as_u64) {
            Some(k) => k as usize,
            None => exponents.first().map(Vec::len).ok_or_else(|| {
                Error::Schema("monomial map: an empty exponent matrix needs \"k\"".into())
            })?,
        };
        let mut m = MonomialMap::new(k, exponents)?;
        if let Some(vars) = v.get("variables") {
            let vars = vars
                .as_array()
                .and_then(|xs| xs.iter().map(|x| x.as_u64().filter(|&i| i >= 1)).collect::<Option<Vec<u64>>>())
                .ok_or_else(|| Error::Schema("monomial map: \"variables\" must list 1-based indices".into()))?;
            if vars.len() != k {
                return Err(Error::Schema(format!("monomial map: \"variables\" must have {k} entries")));
            }
            m.variables = vars.iter().map(|&i| i as usize - 1).collect();
        }
        Ok(m)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k(),
            "exponents": self.exponents,
            "monomials": self.monomials(),
            "variables": self.variables.iter().map(|i| i + 1).collect::<Vec<_>>(),
        })
    }
}

/// The relation space of the nilpotents of an orbit.
pub fn orbit_relation_space(spec: &PolarizedOrbitSpec) -> Result<RelationSpace> {
    relation_space(&spec.nilpotents, spec.dim)
}

/// The monomial map of the orbit: the non-negative generators of `R^⊥`.
pub fn monomial_map(spec: &PolarizedOrbitSpec) -> Result<MonomialMap> {
    let r = orbit_relation_space(spec)?;
    MonomialMap::new(spec.k(), nonnegative_generators(spec.k(), &r.orth_basis)?)
}

/// `ad N : X ↦ NX − XN` on row-major `vec(End V)`: `N ⊗ I − I ⊗ Nᵀ`.
pub fn ad_matrix(n: &QMat) -> QMat {
    let id = QMat::identity(n.rows());
    n.kron(&id).sub(&id.kron(&n.transpose()))
}

/// `W_{−1}(ad N_I)` on `vec(End V)`.
pub fn negative_weight_space(spec: &PolarizedOrbitSpec, stratum: &[usize]) -> Result<Subspace<Rational>> {
    let ad = ad_matrix(&spec.sum_over(stratum));
    Ok(weight_filtration(&ad, 0)?.get(-1))
}

/// The complement indices `I^c` in increasing order.
pub fn complement(k: usize, stratum: &[usize]) -> Vec<usize> {
    (0..k).filter(|j| !stratum.contains(j)).collect()
}

/// `{b ∈ Q^{I^c} : Σ_{j∈I^c} b_j N_j ∈ W_{−1}(ad N_I)}`.
pub fn stratum_relation_space(spec: &PolarizedOrbitSpec, stratum: &[usize]) -> Result<RelationSpace> {
    crate::orbit::factor::check_stratum(spec.k(), stratum)?;
    let ic = complement(spec.k(), stratum);
    let w = negative_weight_space(spec, stratum)?;
    let mats: Vec<QMat> = ic.iter().map(|&j| spec.nilpotents[j].clone()).collect();
    let l = flattening(&mats, spec.dim);
    // Quotient by W_{−1}: compose with a projection killing W_{−1}.
    let ann = w.annihilator();
    let proj = if ann.is_empty() { QMat::zeros(0, spec.dim * spec.dim) } else { QMat::from_rows(ann) };
    let m = if proj.rows() == 0 { QMat::zeros(0, ic.len()) } else { proj.mul(&l) };
    Ok(relation_space_of(&m, ic.len()))
}

/// The stratum monomial map `μ_I` on the variables `t_{I^c}`.
pub fn stratum_monomial_map(spec: &PolarizedOrbitSpec, stratum: &[usize]) -> Result<MonomialMap> {
    let ic = complement(spec.k(), stratum);
    let r = stratum_relation_space(spec, stratum)?;
    let rows = nonnegative_generators(ic.len(), &r.orth_basis)?;
    Ok(MonomialMap { exponents: rows, variables: ic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn dollar_bill_maps() {
        let spec = fixtures::dollar_bill();
        let m = monomial_map(&spec).unwrap();
        assert_eq!(m.exponents, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(stratum_monomial_map(&spec, &[0]).unwrap().monomials(), vec!["t2*t3"]);
        assert_eq!(stratum_monomial_map(&spec, &[2]).unwrap().monomials(), vec!["t1*t2"]);
        assert_eq!(stratum_monomial_map(&spec, &[0, 1]).unwrap().target_dim(), 0);
        assert_eq!(stratum_monomial_map(&spec, &[]).unwrap(), m);
    }

    #[test]
    fn ad_matrix_acts_on_row_major_vectors() {
        let n = QMat::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let x = QMat::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let expect = n.mul(&x).sub(&x.mul(&n)).flatten();
        assert_eq!(ad_matrix(&n).mul_vec(&x.flatten()), expect);
    }
}
