//! Multiplier ideals of monomial weights.
//!
//! For the weight `Σ |z_j|^{2/α_j}`-type singularity with exponents `α`, the
//! ideal is spanned by the monomials `z^β` with `Σ (β_j + 1)/α_j > 1`. The
//! set is closed under multiplication by monomials, and every minimal
//! generator satisfies `β_j ≤ ⌊α_j⌋` (already `(⌊α_j⌋ + 1)/α_j > 1`), so all
//! generators lie in a finite box.

use serde_json::{json, Value};

use crate::algebra::poly::QPoly;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};

/// Boxes with more points than this are enumerated only up to the degree
/// bound.
const MAX_BOX: u128 = 2_000_000;

/// Minimal monomial generators of the multiplier ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierIdeal {
    pub alpha: Vec<Rational>,
    pub degree_bound: Option<u32>,
    /// Exponent vectors of the minimal generators, by degree and then
    /// decreasing lexicographic order.
    pub generators: Vec<Vec<u32>>,
    /// Some generator has degree above the bound and was omitted.
    pub truncated: bool,
    /// Human-readable warnings.
    pub warnings: Vec<String>,
}

impl MultiplierIdeal {
    /// Generators rendered as `z1^2*z2`, with `1` for the unit ideal.
    pub fn monomials(&self) -> Vec<String> {
        self.generators.iter().map(|b| QPoly::monomial(b.clone(), Rational::one()).render("z")).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha": self.alpha.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "degreeBound": self.degree_bound,
            "generators": self.monomials(),
            "exponents": self.generators,
            "truncated": self.truncated,
            "warnings": self.warnings,
        })
    }
}

/// `Σ (β_j + 1)/α_j > 1`.
pub fn in_multiplier_ideal(alpha: &[Rational], beta: &[u32]) -> bool {
    let s = alpha
        .iter()
        .zip(beta)
        .fold(Rational::zero(), |acc, (a, &b)| &acc + &(&Rational::from_int(b as i64 + 1) / a));
    s > Rational::one()
}

fn floor(x: &Rational) -> u32 {
    let n = x.numer() / x.denom();
    u32::try_from(n).unwrap_or(u32::MAX)
}

fn for_each_in_box(limits: &[u32], max_degree: Option<u32>, f: &mut impl FnMut(&[u32])) {
    fn rec(limits: &[u32], cur: &mut Vec<u32>, deg: u32, max_degree: Option<u32>, f: &mut impl FnMut(&[u32])) {
        if cur.len() == limits.len() {
            f(cur);
            return;
        }
        let top = limits[cur.len()];
        let top = max_degree.map_or(top, |d| top.min(d.saturating_sub(deg)));
        for b in 0..=top {
            cur.push(b);
            rec(limits, cur, deg + b, max_degree, f);
            cur.pop();
        }
    }
    rec(limits, &mut Vec::new(), 0, max_degree, f);
}

/// Minimal generators of `{z^β : Σ (β_j + 1)/α_j > 1}` of degree at most
/// `degree_bound` (all of them when the bound is `None`).
pub fn multiplier_ideal_monomials(alpha: &[Rational], degree_bound: Option<u32>) -> Result<MultiplierIdeal> {
    if alpha.is_empty() {
        return Err(Error::InvalidArgument("alpha must have at least one entry".into()));
    }
    if alpha.iter().any(|a| !a.is_positive()) {
        return Err(Error::InvalidArgument("every α_j must be positive".into()));
    }
    let limits: Vec<u32> = alpha.iter().map(floor).collect();
    let box_size = limits.iter().fold(1u128, |acc, &l| acc.saturating_mul(l as u128 + 1));
    let mut warnings = Vec::new();
    let exhaustive = box_size <= MAX_BOX;
    let enumerate_bound = if exhaustive { None } else { degree_bound };
    if !exhaustive && degree_bound.is_none() {
        return Err(Error::InvalidArgument(format!(
            "the generator box has {box_size} points; give a degree bound"
        )));
    }
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for_each_in_box(&limits, enumerate_bound, &mut |b| {
        if !in_multiplier_ideal(alpha, b) {
            return;
        }
        let minimal = (0..b.len()).all(|j| {
            b[j] == 0 || {
                let mut c = b.to_vec();
                c[j] -= 1;
                !in_multiplier_ideal(alpha, &c)
            }
        });
        if minimal {
            gens.push(b.to_vec());
        }
    });
    let degree = |b: &Vec<u32>| b.iter().sum::<u32>();
    let before = gens.len();
    if let Some(d) = degree_bound {
        gens.retain(|b| degree(b) <= d);
    }
    let truncated = gens.len() < before;
    if truncated {
        warnings.push(format!("degree bound omits {} generators", before - gens.len()));
    }
    if !exhaustive {
        warnings.push("generator box too large; minimality only checked up to the degree bound".into());
    }
    gens.sort_by(|a, b| degree(a).cmp(&degree(b)).then(b.cmp(a)));
    Ok(MultiplierIdeal { alpha: alpha.to_vec(), degree_bound, generators: gens, truncated, warnings })
}

/// Every exponent of degree at most `d` lies in the ideal exactly when it
/// is divisible by a generator.
pub fn generates_up_to(ideal: &MultiplierIdeal, d: u32) -> bool {
    let limits = vec![d; ideal.alpha.len()];
    let mut ok = true;
    for_each_in_box(&limits, Some(d), &mut |b| {
        let divisible = ideal.generators.iter().any(|g| g.iter().zip(b).all(|(x, y)| x <= y));
        ok &= divisible == in_multiplier_ideal(&ideal.alpha, b);
    });
    ok
}
