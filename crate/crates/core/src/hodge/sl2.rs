//! Grading elements, sl2-triples and eigenspace decompositions.
//!
//! A grading element `Y` of `W(N)` (center `c`) has eigenvalue `k` on a
//! subspace `V_k ⊆ W_k` mapping isomorphically onto `Gr_k`. Here `V` is
//! split into `N`-strings: for each `j` from the top down, a lift
//! `P_{c+j}` of the primitive part of `Gr_{c+j}` is the complement of
//! `K ∩ W_{c+j−1}` in `K = ker N^{j+1} ∩ W_{c+j}`, and `N^i P_{c+j}` is put
//! in weight `c + j − 2i`.
//!
//! Brackets use the representation-theoretic normalization
//! `[Y, N] = −2N`, `[Y, N⁺] = 2N⁺`, `[N⁺, N] = Y` with `Y` centered at 0;
//! the Hodge-indexed grading element is `Y + c·I`.

use std::collections::BTreeMap;

use crate::algebra::field::Field;
use crate::algebra::mat::{Mat, QMat};
use crate::algebra::rational::Rational;
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};

use super::weight::{weight_filtration, WeightFiltration};

/// Deterministic rule choosing complements when lifting primitive spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplittingRule {
    /// Greedy complement from the echelon basis, scanned first to last.
    Echelon,
    /// Greedy complement from the echelon basis, scanned last to first.
    ReversedEchelon,
}

/// A splitting of `V` by `N`-strings.
#[derive(Clone, Debug, PartialEq)]
pub struct Grading {
    /// Hodge-indexed eigenvalue `k` ↦ basis of `V_k`.
    pub spaces: BTreeMap<i64, Vec<Vec<Rational>>>,
    /// The grading element with Hodge-indexed eigenvalues.
    pub y: QMat,
    pub center: i64,
}

impl Grading {
    /// `Y − c·I`, the representation-theoretic normalization.
    pub fn y_rep(&self) -> QMat {
        let d = self.y.rows();
        self.y.sub(&QMat::identity(d).scale(&Rational::from_int(self.center)))
    }
}

/// Builds the grading element of `W(N)` by lifting primitive spaces,
/// weight-descending, with the given complement rule.
pub fn grading_element_with(n: &QMat, w: &WeightFiltration<Rational>, center: i64, rule: SplittingRule) -> Grading {
    let d = n.rows();
    let (lo, hi) = (w.lo(), w.hi());
    let top = (hi - center).max(center - lo).max(0);
    let mut spaces: BTreeMap<i64, Vec<Vec<Rational>>> = BTreeMap::new();
    for j in (0..=top).rev() {
        let power = n.pow(j as u32 + 1);
        let k = Subspace::kernel_of(&power).intersect(&w.get(center + j));
        let below = k.intersect(&w.get(center + j - 1));
        let prim = match rule {
            SplittingRule::Echelon => below.complement_in(&k),
            SplittingRule::ReversedEchelon => below.complement_in_reversed(&k),
        };
        let mut vs = prim;
        for i in 0..=j {
            if !vs.is_empty() {
                spaces.entry(center + j - 2 * i).or_default().extend(vs.iter().cloned());
            }
            vs = vs.iter().map(|v| n.mul_vec(v)).collect();
        }
    }
    let mut cols = Vec::new();
    let mut eig = Vec::new();
    for (k, vs) in &spaces {
        for v in vs {
            cols.push(v.clone());
            eig.push(Rational::from_int(*k));
        }
    }
    assert_eq!(cols.len(), d, "string decomposition must span V");
    let b = Mat::from_columns(d, &cols);
    let binv = b.inverse().expect("string decomposition must be a basis");
    let y = b.mul(&Mat::diag(&eig)).mul(&binv);
    Grading { spaces, y, center }
}

/// [`grading_element_with`] using the echelon rule.
pub fn grading_element(n: &QMat, w: &WeightFiltration<Rational>, center: i64) -> Grading {
    grading_element_with(n, w, center, SplittingRule::Echelon)
}

/// Checks that `y` (Hodge-indexed) grades `w`: it is diagonalizable with
/// integer eigenvalues `k`, each eigenspace lies in `W_k` and maps
/// isomorphically onto `Gr_k`.
pub fn grades_filtration(y: &QMat, w: &WeightFiltration<Rational>) -> bool {
    let d = y.rows();
    let mut total = 0;
    for k in w.lo() - 1..=w.hi() + 1 {
        let e = Subspace::kernel_of(&y.sub(&QMat::identity(d).scale(&Rational::from_int(k))));
        if !w.get(k).contains_subspace(&e) {
            return false;
        }
        if e.intersect(&w.get(k - 1)).dim() != 0 || e.dim() != w.graded_dim(k) {
            return false;
        }
        total += e.dim();
    }
    total == d
}

/// An sl2-triple `{N⁺, Y, N}` in the representation-theoretic normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Triple {
    pub n_plus: QMat,
    pub y: QMat,
    pub n_minus: QMat,
}

impl Sl2Triple {
    /// `[Y,N] = −2N`, `[Y,N⁺] = 2N⁺`, `[N⁺,N] = Y`, exactly.
    pub fn relations_hold(&self) -> bool {
        let two = Rational::from_int(2);
        self.y.commutator(&self.n_minus) == self.n_minus.scale(&two).neg()
            && self.y.commutator(&self.n_plus) == self.n_plus.scale(&two)
            && self.n_plus.commutator(&self.n_minus) == self.y
    }
}

/// Solves `[Y, N⁺] = 2N⁺`, `[N⁺, N] = Y` for `N⁺`, given `Y` in the
/// representation-theoretic normalization.
pub fn complete_sl2(n: &QMat, y: &QMat) -> Result<Sl2Triple> {
    let d = n.rows();
    let two = Rational::from_int(2);
    if y.commutator(n) != n.scale(&two).neg() {
        return Err(Error::NoSolution("[Y, N] must equal -2N".into()));
    }
    let unknowns = d * d;
    let mut cols = Vec::with_capacity(unknowns);
    for a in 0..d {
        for b in 0..d {
            let mut e = QMat::zeros(d, d);
            e.set(a, b, Rational::one());
            let mut col = y.commutator(&e).sub(&e.scale(&two)).flatten();
            col.extend(e.commutator(n).flatten());
            cols.push(col);
        }
    }
    let sys = Mat::from_columns(2 * unknowns, &cols);
    let mut rhs = vec![Rational::zero(); unknowns];
    rhs.extend(y.flatten());
    let x = sys.solve(&rhs).ok_or_else(|| Error::NoSolution("the linear system for N+ is inconsistent".into()))?;
    let triple = Sl2Triple { n_plus: QMat::unflatten(d, &x), y: y.clone(), n_minus: n.clone() };
    debug_assert!(triple.relations_hold());
    Ok(triple)
}

/// The sl2-triple of `N` from its weight filtration and grading element.
pub fn sl2_for(n: &QMat, center: i64, rule: SplittingRule) -> Result<(WeightFiltration<Rational>, Grading, Sl2Triple)> {
    let w = weight_filtration(n, center)?;
    let g = grading_element_with(n, &w, center, rule);
    let t = complete_sl2(n, &g.y_rep())?;
    Ok((w, g, t))
}

/// Decomposes `m = Σ m_k` into `ad Y`-eigencomponents, `[Y, m_k] = k m_k`.
///
/// `y` must be diagonalizable over the rationals with integer eigenvalues.
pub fn y_eigen_decomposition<F: Field>(m: &Mat<F>, y: &Mat<F>) -> BTreeMap<i64, Mat<F>> {
    let d = y.rows();
    // Integer eigenvalues of a grading element are bounded by a small
    // multiple of the dimension; scan that range.
    let bound = 4 * d as i64 + 4;
    let mut cols = Vec::new();
    let mut eig = Vec::new();
    for k in -bound..=bound {
        let shifted = y.sub(&Mat::identity(d).scale(&F::from_i64(k)));
        for v in shifted.kernel() {
            cols.push(v);
            eig.push(k);
        }
    }
    assert_eq!(cols.len(), d, "Y must be diagonalizable with integer eigenvalues");
    let b = Mat::from_columns(d, &cols);
    let binv = b.inverse().expect("eigenvectors form a basis");
    let mb = binv.mul(m).mul(&b);
    let mut out: BTreeMap<i64, Mat<F>> = BTreeMap::new();
    for r in 0..d {
        for c in 0..d {
            let x = mb.get(r, c);
            if x.is_zero() {
                continue;
            }
            let wt = eig[r] - eig[c];
            let e = out.entry(wt).or_insert_with(|| Mat::zeros(d, d));
            e.set(r, c, x.clone());
        }
    }
    out.into_iter().map(|(k, e)| (k, b.mul(&e).mul(&binv))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_sl2_on_c2() {
        let n = QMat::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let y = QMat::from_i64_rows(&[&[-1, 0], &[0, 1]]);
        let t = complete_sl2(&n, &y).unwrap();
        assert_eq!(t.n_plus, QMat::from_i64_rows(&[&[0, 0], &[1, 0]]));
        assert!(t.relations_hold());
    }

    #[test]
    fn wrong_grading_has_no_completion() {
        let n = QMat::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let y = QMat::from_i64_rows(&[&[1, 0], &[0, -1]]);
        assert!(matches!(complete_sl2(&n, &y), Err(Error::NoSolution(_))));
    }

    #[test]
    fn zero_nilpotent_grading_is_scalar() {
        let n = QMat::zeros(3, 3);
        let w = weight_filtration(&n, 2).unwrap();
        let g = grading_element(&n, &w, 2);
        assert_eq!(g.y, QMat::identity(3).scale(&Rational::from_int(2)));
        let t = complete_sl2(&n, &g.y_rep()).unwrap();
        assert!(t.n_plus.is_zero());
    }

    #[test]
    fn jordan_block_grading() {
        let n = QMat::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let w = weight_filtration(&n, 1).unwrap();
        let g = grading_element(&n, &w, 1);
        assert_eq!(g.y, QMat::from_i64_rows(&[&[0, 0], &[0, 2]]));
        assert!(grades_filtration(&g.y, &w));
    }

    #[test]
    fn eigen_decomposition_of_n_and_y() {
        let n = QMat::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let y = QMat::from_i64_rows(&[&[-1, 0], &[0, 1]]);
        let dn = y_eigen_decomposition(&n, &y);
        assert_eq!(dn.keys().copied().collect::<Vec<_>>(), vec![-2]);
        let dy = y_eigen_decomposition(&y, &y);
        assert_eq!(dy.keys().copied().collect::<Vec<_>>(), vec![0]);
    }
}
