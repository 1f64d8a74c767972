//! Compatibility of stratum maps across nested strata, and positivity in
//! the normal directions of a stratum.

use serde_json::{json, Value};

use crate::algebra::mat::QMat;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};
use crate::hodge::spec::PolarizedOrbitSpec;
use crate::io;

use super::map::{complement, negative_weight_space, stratum_relation_space};

/// One relation of the smaller stratum tested against the larger one.
#[derive(Clone, Debug, PartialEq)]
pub struct CompatEntry {
    /// The relation `a` on the variables `I^c`.
    pub relation: Vec<Rational>,
    /// `Σ_{j∈J^c} a_j N_j ∈ W_{−1}(ad N_J)`.
    pub holds: bool,
}

/// Outcome of the compatibility check for `I ⊊ J`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompatReport {
    pub stratum: Vec<usize>,
    pub superset: Vec<usize>,
    pub entries: Vec<CompatEntry>,
    pub pass: bool,
}

impl CompatReport {
    pub fn to_json(&self) -> Value {
        json!({
            "stratum": self.stratum.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "superset": self.superset.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "relations": self.entries.iter().map(|e| json!({
                "relation": io::qvec_to_json(&e.relation),
                "holds": e.holds,
            })).collect::<Vec<_>>(),
            "pass": self.pass,
        })
    }
}

/// Checks that every relation of the stratum `I`,
/// `Σ_{j∈I^c} a_j N_j ∈ W_{−1}(ad N_I)`, restricts to a relation of `J`:
/// `Σ_{j∈J^c} a_j N_j ∈ W_{−1}(ad N_J)`.
pub fn compatibility_check(spec: &PolarizedOrbitSpec, stratum: &[usize], superset: &[usize]) -> Result<CompatReport> {
    let k = spec.k();
    crate::orbit::factor::check_stratum(k, stratum)?;
    crate::orbit::factor::check_stratum(k, superset)?;
    if !stratum.iter().all(|i| superset.contains(i)) || stratum.len() >= superset.len() {
        return Err(Error::InvalidArgument("the stratum must be a proper subset of the superset".into()));
    }
    let ic = complement(k, stratum);
    let rel = stratum_relation_space(spec, stratum)?;
    let wj = negative_weight_space(spec, superset)?;
    let entries = rel
        .basis
        .iter()
        .map(|a| {
            let m = ic
                .iter()
                .zip(a)
                .filter(|(j, _)| !superset.contains(j))
                .fold(QMat::zeros(spec.dim, spec.dim), |acc, (&j, c)| acc.add(&spec.nilpotents[j].scale(c)));
            CompatEntry { relation: a.clone(), holds: wj.contains(&m.flatten()) }
        })
        .collect::<Vec<_>>();
    let pass = entries.iter().all(|e| e.holds);
    let mut s = stratum.to_vec();
    s.sort_unstable();
    let mut j = superset.to_vec();
    j.sort_unstable();
    Ok(CompatReport { stratum: s, superset: j, entries, pass })
}

/// Every nested pair `I ⊊ J` of index sets of `0..k`.
pub fn nested_pairs(k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let sets: Vec<Vec<usize>> =
        (0u32..1 << k).map(|mask| (0..k).filter(|i| mask & (1 << i) != 0).collect()).collect();
    let mut out = Vec::new();
    for i in &sets {
        for j in &sets {
            if i.len() < j.len() && i.iter().all(|x| j.contains(x)) {
                out.push((i.clone(), j.clone()));
            }
        }
    }
    out
}

/// Positivity in the normal direction `i` of the stratum `I ∋ i`: true iff
/// `N_i ∉ W_{−1}(ad N_{I∖{i}})`.
pub fn strata_boundary_positivity(spec: &PolarizedOrbitSpec, stratum: &[usize], i: usize) -> Result<bool> {
    crate::orbit::factor::check_stratum(spec.k(), stratum)?;
    if !stratum.contains(&i) {
        return Err(Error::InvalidArgument(format!("index {} must lie in the stratum", i + 1)));
    }
    let rest: Vec<usize> = stratum.iter().copied().filter(|&j| j != i).collect();
    let w = negative_weight_space(spec, &rest)?;
    Ok(!w.contains(&spec.nilpotents[i].flatten()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn dollar_bill_compatibility() {
        let spec = fixtures::dollar_bill();
        for (i, j) in nested_pairs(3) {
            assert!(compatibility_check(&spec, &i, &j).unwrap().pass, "{i:?} ⊂ {j:?}");
        }
    }

    #[test]
    fn boundary_positivity() {
        let spec = fixtures::dollar_bill();
        for i in 0..3 {
            assert!(strata_boundary_positivity(&spec, &[i], i).unwrap());
        }
        let e = fixtures::elliptic_degeneration();
        let n = e.nilpotents[0].clone();
        let twice = PolarizedOrbitSpec::new(2, 1, e.q.clone(), vec![n.clone(), n], e.f.clone()).unwrap();
        assert!(!strata_boundary_positivity(&twice, &[0, 1], 1).unwrap());
        let zero = PolarizedOrbitSpec::new(2, 1, e.q.clone(), vec![e.nilpotents[0].clone(), QMat::zeros(2, 2)], e.f)
            .unwrap();
        assert!(!strata_boundary_positivity(&zero, &[1], 1).unwrap());
    }
}
