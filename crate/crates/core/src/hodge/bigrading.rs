//! Deligne bigradings `V_C = ⊕ I^{p,q}` of mixed Hodge structures.
//!
//! The pieces are computed by the closed form
//!
//! ```text
//! I^{p,q} = F^p ∩ W_{p+q} ∩ (F̄^q ∩ W_{p+q} + Σ_{j≥1} F̄^{q−j} ∩ W_{p+q−j−1}),
//! ```
//!
//! and the result is checked against the three defining compatibilities:
//! `W_k = ⊕_{p+q≤k} I^{p,q}`, `F^p = ⊕_{p'≥p} I^{p',q}`, and
//! `Ī^{q,p} ≡ I^{p,q} mod W_{p+q−2}`.

use std::collections::BTreeMap;

use crate::algebra::gaussian::Gaussian;
use crate::algebra::rational::Rational;
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};

use super::spec::HodgeFiltration;
use super::weight::WeightFiltration;

/// The Deligne pieces `I^{p,q}` (only nonzero pieces are stored).
#[derive(Clone, Debug, PartialEq)]
pub struct DeligneBigrading {
    pub dim: usize,
    pub pieces: BTreeMap<(i64, i64), Subspace<Gaussian>>,
}

/// Which of the defining compatibilities hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradingChecks {
    pub direct_sum: bool,
    pub weight_compatible: bool,
    pub hodge_compatible: bool,
    pub conjugation_compatible: bool,
}

impl BigradingChecks {
    pub fn all(&self) -> bool {
        self.direct_sum && self.weight_compatible && self.hodge_compatible && self.conjugation_compatible
    }
}

impl DeligneBigrading {
    /// `I^{p,q}` (zero when absent).
    pub fn piece(&self, p: i64, q: i64) -> Subspace<Gaussian> {
        self.pieces.get(&(p, q)).cloned().unwrap_or_else(|| Subspace::zero(self.dim))
    }

    /// `dim I^{p,q}`.
    pub fn h(&self, p: i64, q: i64) -> usize {
        self.pieces.get(&(p, q)).map_or(0, Subspace::dim)
    }

    /// Sum of the pieces selected by `pred`.
    pub fn sum_where(&self, pred: impl Fn(i64, i64) -> bool) -> Subspace<Gaussian> {
        self.pieces
            .iter()
            .filter(|((p, q), _)| pred(*p, *q))
            .fold(Subspace::zero(self.dim), |acc, (_, s)| acc.sum(s))
    }

    /// `Ī^{p,q} = I^{q,p}` for every `(p,q)`.
    pub fn is_r_split(&self) -> bool {
        self.pieces.iter().all(|(&(p, q), s)| s.conj() == self.piece(q, p))
    }

    /// Verifies the defining compatibilities against `(W, F)`.
    pub fn check(&self, w: &WeightFiltration<Gaussian>, f: &HodgeFiltration) -> BigradingChecks {
        let total: usize = self.pieces.values().map(Subspace::dim).sum();
        let direct_sum = total == self.dim && self.sum_where(|_, _| true).is_full();
        let (wlo, whi) = (w.lo() - 1, w.hi() + 1);
        let weight_compatible = (wlo..=whi).all(|k| self.sum_where(|p, q| p + q <= k) == w.get(k));
        let n = f.weight();
        let hodge_compatible = (-1..=n + 1).all(|p| {
            let s = self.sum_where(|pp, _| pp >= p);
            // Below zero every filtration step is all of V.
            if p <= 0 {
                s.is_full() || self.dim == 0
            } else {
                s == f.get(p)
            }
        });
        let conjugation_compatible = self.pieces.keys().all(|&(p, q)| {
            let low = w.get(p + q - 2);
            self.piece(q, p).conj().sum(&low) == self.piece(p, q).sum(&low)
        });
        BigradingChecks { direct_sum, weight_compatible, hodge_compatible, conjugation_compatible }
    }
}

/// Indices `(p,q)` searched: `p, q ∈ [p_lo, p_hi]`.
fn index_range(f: &HodgeFiltration) -> (i64, i64) {
    (0, f.weight())
}

/// Computes the Deligne bigrading of `(W, F)`.
///
/// Fails with [`Error::NotMhs`] when the pieces do not form a direct sum
/// decomposition of `V_C`.
pub fn deligne_bigrading(w: &WeightFiltration<Rational>, f: &HodgeFiltration) -> Result<DeligneBigrading> {
    let dim = f.ambient();
    let wc = w.map_field(|x| Gaussian::real(x.clone()));
    let (lo, hi) = index_range(f);
    let fbar = |p: i64| f.get(p).conj();
    let mut pieces = BTreeMap::new();
    for p in lo..=hi {
        for q in lo..=hi {
            let k = p + q;
            let wk = wc.get(k);
            let fp = f.get(p).intersect(&wk);
            if fp.is_zero() {
                continue;
            }
            let mut s = fbar(q).intersect(&wk);
            let mut j = 1;
            // F̄^{q−j} stabilizes at V once q − j ≤ 0; W_{k−j−1} vanishes below lo.
            while k - j - 1 >= wc.lo() - 1 {
                s = s.sum(&fbar(q - j).intersect(&wc.get(k - j - 1)));
                j += 1;
            }
            let piece = fp.intersect(&s);
            if !piece.is_zero() {
                pieces.insert((p, q), piece);
            }
        }
    }
    let bg = DeligneBigrading { dim, pieces };
    let total: usize = bg.pieces.values().map(Subspace::dim).sum();
    if total != dim || !bg.sum_where(|_, _| true).is_full() {
        return Err(Error::NotMhs(format!("Deligne pieces have total dimension {total} and do not split V (dimension {dim})")));
    }
    Ok(bg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::Gaussian;

    #[test]
    fn pure_elliptic_curve() {
        // F^1 = span(i e1 + e2), τ = i.
        let f1 = Subspace::span(2, &[vec![Gaussian::i(), Gaussian::from_ints(1, 0)]]);
        let f = HodgeFiltration::new(1, vec![Subspace::full(2), f1]).unwrap();
        let w = WeightFiltration::trivial(2, 1);
        let bg = deligne_bigrading(&w, &f).unwrap();
        assert_eq!((bg.h(1, 0), bg.h(0, 1)), (1, 1));
        assert!(bg.is_r_split());
        assert!(bg.check(&w.map_field(|x| Gaussian::real(x.clone())), &f).all());
    }

    #[test]
    fn non_mhs_is_reported() {
        // F^1 real and W trivial of weight 1: F ∩ F̄ ≠ 0.
        let f1 = Subspace::span(2, &[vec![Gaussian::from_ints(1, 0), Gaussian::from_ints(0, 0)]]);
        let f = HodgeFiltration::new(1, vec![Subspace::full(2), f1]).unwrap();
        let w = WeightFiltration::trivial(2, 1);
        assert!(matches!(deligne_bigrading(&w, &f), Err(Error::NotMhs(_))));
    }
}
