//! The relative weight filtration property for commuting nilpotents.
//!
//! On each `Gr_k = Gr_k^{W(N_A)}` two filtrations are compared: the one
//! induced by `W(N_A + N_B)` and the weight filtration of the induced map
//! `N̄_B`. Both are re-indexed to be centered at 0 on every graded piece
//! (the induced filtration is shifted by `−k`, `W(N̄_B)` is built with
//! center 0) and compared as subspaces of `Gr_k`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::mat::QMat;
use crate::algebra::rational::Rational;
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};

use super::weight::weight_filtration;

/// The two filtrations on one graded piece `Gr_k`, both centered at 0.
#[derive(Clone, Debug, PartialEq)]
pub struct RwfpPiece {
    pub k: i64,
    pub dim: usize,
    /// `(j, lhs_j)`: image of `W_{k+j}(N_A+N_B) ∩ W_k(N_A)` in `Gr_k`.
    pub lhs: Vec<(i64, Subspace<Rational>)>,
    /// `(j, rhs_j)`: `W_j(N̄_B)` on `Gr_k`.
    pub rhs: Vec<(i64, Subspace<Rational>)>,
    pub holds: bool,
}

/// Result of the comparison on every graded piece.
#[derive(Clone, Debug, PartialEq)]
pub struct RwfpReport {
    pub holds: bool,
    pub pieces: Vec<RwfpPiece>,
}

/// Compares the two filtrations on `Gr^{W(N_A)}` (center `weight`).
pub fn relative_weight_filtration_check(na: &QMat, nb: &QMat, weight: i64) -> Result<RwfpReport> {
    if !na.commutator(nb).is_zero() {
        return Err(Error::NotCommuting);
    }
    let wa = weight_filtration(na, weight)?;
    let wn = weight_filtration(&na.add(nb), weight)?;
    let mut pieces = Vec::new();
    for k in wa.lo()..=wa.hi() {
        let gr = wa.graded(k);
        if gr.dim() == 0 {
            continue;
        }
        let nbar = gr.induced_endo(nb);
        let wb = weight_filtration(&nbar, 0)?;
        let span = gr.dim() as i64 + 1;
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        let mut holds = true;
        for j in -span..=span {
            let l = gr.image_of(&wn.get(k + j));
            let r = wb.get(j);
            holds &= l == r;
            lhs.push((j, l));
            rhs.push((j, r));
        }
        pieces.push(RwfpPiece { k, dim: gr.dim(), lhs, rhs, holds });
    }
    let holds = pieces.iter().all(|p| p.holds);
    Ok(RwfpReport { holds, pieces })
}

/// Seeded search over commuting pairs of strictly upper triangular `3×3`
/// matrices with small integer entries for a pair violating the property.
/// Returns the first violating pair found within `attempts` draws.
pub fn search_rwfp_failure(seed: u64, attempts: usize) -> Option<(QMat, QMat)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let mut m = QMat::zeros(3, 3);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            m.set(i, j, Rational::from_int(rng.gen_range(-1..=1)));
        }
        m
    };
    for _ in 0..attempts {
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        if a.is_zero() || b.is_zero() || !a.commutator(&b).is_zero() {
            continue;
        }
        if let Ok(r) = relative_weight_filtration_check(&a, &b, 0) {
            if !r.holds {
                return Some((a, b));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_second_map_always_holds() {
        let na = QMat::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let r = relative_weight_filtration_check(&na, &QMat::zeros(3, 3), 2).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn non_commuting_is_rejected() {
        let a = QMat::from_i64_rows(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let b = QMat::from_i64_rows(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(relative_weight_filtration_check(&a, &b, 0), Err(Error::NotCommuting));
    }

    #[test]
    fn seeded_search_finds_a_violation() {
        let (a, b) = search_rwfp_failure(7, 2000).expect("a violating pair exists among small matrices");
        let r = relative_weight_filtration_check(&a, &b, 0).unwrap();
        assert!(!r.holds);
    }
}
