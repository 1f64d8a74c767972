//! The monomials `M_π` attached to orderings of the nilpotents.
//!
//! For a permutation `π` with partial unions `S_i = {π(1), …, π(i)}`,
//!
//! ```text
//! ℓ_{π,i} = Σ_j j · (h^{n−j,0}_{S_i} − h^{n−j,0}_{S_{i−1}}),   M_π = Π_i x_{π(i)}^{ℓ_{π,i}},
//! ```
//!
//! `M_π` appears in `P` with nonzero coefficient, and every monomial of `P`
//! lies in the convex hull of the `M_π`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::mat::QMat;
use crate::algebra::rational::Rational;
use crate::algebra::snf::combinations;
use crate::error::{Error, Result};
use crate::hodge::lmhs::stratum_hodge_numbers;
use crate::hodge::spec::PolarizedOrbitSpec;
use crate::io;

use super::metric::MetricPolynomial;

/// The monomial of one permutation.
#[derive(Clone, Debug, PartialEq)]
pub struct MPiReport {
    /// 0-based permutation.
    pub permutation: Vec<usize>,
    /// `ℓ_{π,i}` in permutation order.
    pub ell: Vec<i64>,
    /// The exponent vector of `M_π`, indexed by variable.
    pub exponents: Vec<u32>,
    pub coefficient: Rational,
    pub present: bool,
}

impl MPiReport {
    pub fn monomial(&self) -> String {
        crate::algebra::poly::QPoly::monomial(self.exponents.clone(), Rational::one()).render("x")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "permutation": self.permutation.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "ell": self.ell,
            "exponents": self.exponents,
            "monomial": self.monomial(),
            "coefficient": io::rational_to_json(&self.coefficient),
            "present": self.present,
        })
    }
}

/// Hodge numbers per stratum, memoized across permutations.
#[derive(Default)]
pub struct StratumHodgeCache {
    map: BTreeMap<Vec<usize>, Vec<usize>>,
}

impl StratumHodgeCache {
    pub fn get(&mut self, spec: &PolarizedOrbitSpec, stratum: &[usize]) -> Result<Vec<usize>> {
        let mut key = stratum.to_vec();
        key.sort_unstable();
        if let Some(h) = self.map.get(&key) {
            return Ok(h.clone());
        }
        let h = stratum_hodge_numbers(spec, &key)?;
        self.map.insert(key, h.clone());
        Ok(h)
    }
}

fn weighted(h: &[usize]) -> i64 {
    h.iter().enumerate().map(|(j, x)| j as i64 * *x as i64).sum()
}

/// Computes `M_π` and checks that it appears in `P`.
pub fn m_pi_monomial_check(spec: &PolarizedOrbitSpec, p: &MetricPolynomial, perm: &[usize]) -> Result<MPiReport> {
    m_pi_with_cache(spec, p, perm, &mut StratumHodgeCache::default())
}

fn m_pi_with_cache(
    spec: &PolarizedOrbitSpec,
    p: &MetricPolynomial,
    perm: &[usize],
    cache: &mut StratumHodgeCache,
) -> Result<MPiReport> {
    let k = spec.k();
    let mut sorted = perm.to_vec();
    sorted.sort_unstable();
    if sorted != (0..k).collect::<Vec<_>>() {
        return Err(Error::InvalidArgument(format!("a permutation of 1..={k} is required")));
    }
    let mut ell = Vec::with_capacity(k);
    let mut exponents = vec![0u32; k];
    let mut prev = weighted(&cache.get(spec, &[])?);
    for i in 0..k {
        let cur = weighted(&cache.get(spec, &perm[..=i])?);
        let l = cur - prev;
        if l < 0 {
            return Err(Error::NotEffective(format!("stratum degrees decrease along the permutation at step {}", i + 1)));
        }
        ell.push(l);
        exponents[perm[i]] = l as u32;
        prev = cur;
    }
    let coefficient = p.p.coeff(&exponents);
    let present = !coefficient.is_zero();
    Ok(MPiReport { permutation: perm.to_vec(), ell, exponents, coefficient, present })
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// `M_π` for every permutation together with the convex-hull check.
#[derive(Clone, Debug, PartialEq)]
pub struct MPiSummary {
    pub reports: Vec<MPiReport>,
    /// Monomials of `P` outside the convex hull of the `M_π`.
    pub outside_hull: Vec<Vec<u32>>,
}

impl MPiSummary {
    pub fn all_present(&self) -> bool {
        self.reports.iter().all(|r| r.present)
    }

    pub fn pass(&self) -> bool {
        self.all_present() && self.outside_hull.is_empty()
    }
}

/// Runs [`m_pi_monomial_check`] over all `k!` permutations and checks that
/// the Newton polytope of `P` lies in the hull of the `M_π`.
pub fn m_pi_summary(spec: &PolarizedOrbitSpec, p: &MetricPolynomial) -> Result<MPiSummary> {
    let mut cache = StratumHodgeCache::default();
    let reports = permutations(spec.k())
        .iter()
        .map(|perm| m_pi_with_cache(spec, p, perm, &mut cache))
        .collect::<Result<Vec<_>>>()?;
    let mut points: Vec<Vec<u32>> = reports.iter().map(|r| r.exponents.clone()).collect();
    points.sort();
    points.dedup();
    let outside_hull =
        p.p.terms().into_iter().map(|(e, _)| e.clone()).filter(|e| !in_convex_hull(e, &points)).collect();
    Ok(MPiSummary { reports, outside_hull })
}

/// Exact convex-hull membership by Carathéodory: `e` lies in the hull iff
/// it is a non-negative affine combination of some affinely independent
/// subset of at most `dim + 1` points.
pub fn in_convex_hull(e: &[u32], points: &[Vec<u32>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = e.len();
    let to_q = |v: &[u32]| -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_int(x as i64)).chain(std::iter::once(Rational::one())).collect()
    };
    let target = to_q(e);
    let idx: Vec<usize> = (0..points.len()).collect();
    for size in 1..=points.len().min(d + 1) {
        for subset in combinations(&idx, size) {
            let cols: Vec<Vec<Rational>> = subset.iter().map(|&i| to_q(&points[i])).collect();
            let m = QMat::from_columns(d + 1, &cols);
            if m.rank() != size {
                continue;
            }
            if let Some(l) = m.solve(&target) {
                if l.iter().all(|x| !x.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::orbit::metric::hodge_metric_polynomial;

    #[test]
    fn dollar_bill_monomials() {
        let spec = fixtures::dollar_bill();
        let p = hodge_metric_polynomial(&spec).unwrap();
        let r = m_pi_monomial_check(&spec, &p, &[0, 1, 2]).unwrap();
        assert_eq!(r.ell, vec![1, 1, 0]);
        assert_eq!(r.monomial(), "x1*x2");
        assert!(r.present);
        let r = m_pi_monomial_check(&spec, &p, &[2, 0, 1]).unwrap();
        assert_eq!(r.monomial(), "x1*x3");
        let s = m_pi_summary(&spec, &p).unwrap();
        assert!(s.pass());
    }

    #[test]
    fn hull_membership() {
        let pts = vec![vec![2, 0], vec![0, 2]];
        assert!(in_convex_hull(&[1, 1], &pts));
        assert!(!in_convex_hull(&[1, 0], &pts));
    }
}
