//! The graded Lie algebra `g = ⊕_p g^{p,−p}` of `Q`-infinitesimal
//! endomorphisms at a polarized Hodge structure, with its Hodge metric.
//!
//! In Hodge coordinates `g^p` consists of the matrices `X` supported on the
//! blocks `V^{r,s} → V^{r+p, s−p}` with `Xᵀ Q' + Q' X = 0`. The Hodge
//! adjoint is `X* = K⁻¹ X† K` and the metric is `⟨X, Y⟩ = Tr(X Y*)`.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::field::{Field, Ring};
use crate::algebra::gaussian::Gaussian;
use crate::algebra::ldl::inertia;
use crate::algebra::mat::CMat;
use crate::algebra::rational::Rational;
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};
use crate::io;

use super::phs::PolarizedHS;

/// The graded pieces with their Gram matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedEnd {
    pub phs: PolarizedHS,
    /// `K`, the Hodge metric on `V` in coordinates.
    pub metric: CMat,
    metric_inv: CMat,
    /// `p ↦` basis of `g^p` (coordinate matrices).
    pub pieces: BTreeMap<i64, Vec<CMat>>,
    /// `p ↦` Gram matrix, entry `(a, b) = ⟨X_b, X_a⟩`.
    pub gram: BTreeMap<i64, CMat>,
}

impl GradedEnd {
    /// `dim g^p`.
    pub fn dim(&self, p: i64) -> usize {
        self.pieces.get(&p).map_or(0, Vec::len)
    }

    /// Dimensions of `g^{−n}, …, g^{n}`.
    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.pieces.iter().map(|(p, b)| (*p, b.len())).collect()
    }

    /// The Hodge adjoint `X* = K⁻¹ X† K`.
    pub fn adjoint(&self, x: &CMat) -> CMat {
        self.metric_inv.mul(&x.adjoint()).mul(&self.metric)
    }

    /// `⟨X, Y⟩ = Tr(X Y*)`.
    pub fn inner(&self, x: &CMat, y: &CMat) -> Gaussian {
        x.mul(&self.adjoint(y)).trace()
    }

    /// `‖X‖²`.
    pub fn norm_sq(&self, x: &CMat) -> Rational {
        self.inner(x, x).real_part()
    }

    /// Coordinates of `X` in the basis of `g^p`, when `X ∈ g^p`.
    pub fn coordinates(&self, p: i64, x: &CMat) -> Option<Vec<Gaussian>> {
        let basis: Vec<Vec<Gaussian>> = self.pieces.get(&p)?.iter().map(CMat::flatten).collect();
        Subspace::coordinates_in(&basis, &x.flatten())
    }

    /// `Σ c_a X_a` in `g^p`.
    pub fn combine(&self, p: i64, c: &[Gaussian]) -> CMat {
        let d = self.phs.dim;
        self.pieces
            .get(&p)
            .map(|b| b.iter().zip(c).fold(CMat::zeros(d, d), |acc, (x, s)| acc.add(&x.scale(s))))
            .unwrap_or_else(|| CMat::zeros(d, d))
    }

    /// True when `X` lies in `g^p`.
    pub fn contains(&self, p: i64, x: &CMat) -> bool {
        self.coordinates(p, x).is_some()
    }

    /// The matrix of `ad_ξ : g^p → g^{p+k}` for `ξ ∈ g^k`, in the piece
    /// bases.
    pub fn ad_matrix(&self, xi: &CMat, k: i64, p: i64) -> Result<CMat> {
        let src = self.pieces.get(&p).cloned().unwrap_or_default();
        let tgt_dim = self.dim(p + k);
        let mut m = CMat::zeros(tgt_dim, src.len());
        for (a, x) in src.iter().enumerate() {
            let br = xi.commutator(x);
            let c = if tgt_dim == 0 {
                if br.is_zero() {
                    Vec::new()
                } else {
                    return Err(Error::InvalidArgument("bracket leaves the graded algebra".into()));
                }
            } else {
                self.coordinates(p + k, &br)
                    .ok_or_else(|| Error::InvalidArgument(format!("ξ does not lie in g^{k}")))?
            };
            for (b, v) in c.into_iter().enumerate() {
                m.set(b, a, v);
            }
        }
        Ok(m)
    }

    /// The metric adjoint `M* = G_src⁻¹ M† G_tgt` of a matrix `M` from
    /// `g^p` to `g^q`.
    pub fn adjoint_matrix(&self, m: &CMat, p: i64, q: i64) -> CMat {
        let gp = self.gram.get(&p).cloned().unwrap_or_else(|| CMat::zeros(0, 0));
        let gq = self.gram.get(&q).cloned().unwrap_or_else(|| CMat::zeros(0, 0));
        if gp.rows() == 0 {
            return CMat::zeros(0, m.rows());
        }
        gp.inverse().expect("Gram matrices are positive definite").mul(&m.adjoint()).mul(&gq)
    }

    /// Checks `[g^p, g^q] ⊆ g^{p+q}` on all basis pairs.
    pub fn bracket_respects_grading(&self) -> bool {
        for (p, bp) in &self.pieces {
            for (q, bq) in &self.pieces {
                for x in bp {
                    for y in bq {
                        let b = x.commutator(y);
                        if !(b.is_zero() || self.contains(p + q, &b)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> Value {
        json!({
            "hodgeNumbers": self.phs.hodge_numbers(),
            "dims": self.dims().iter().map(|(p, d)| json!({"p": p, "dim": d})).collect::<Vec<_>>(),
            "bracketRespectsGrading": self.bracket_respects_grading(),
            "gram": self.gram.iter().map(|(p, g)| json!({"p": p, "gram": io::cmat_to_json(g)})).collect::<Vec<_>>(),
        })
    }
}

/// Computes the graded pieces and their Gram matrices.
pub fn graded_end_algebra(phs: &PolarizedHS) -> Result<GradedEnd> {
    let d = phs.dim;
    let n = phs.weight;
    let qc = phs.q_coordinates();
    let metric = phs.metric();
    let metric_inv = metric.inverse().ok_or_else(|| Error::NotPolarized("the Hodge metric is singular".into()))?;
    if !inertia(&metric).is_pd() {
        return Err(Error::NotPolarized("the Hodge metric is not positive definite".into()));
    }
    let mut pieces = BTreeMap::new();
    for p in -n..=n {
        // Unknown entries (i, j) with j of type r and i of type r + p.
        let slots: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .filter(|&(i, j)| phs.type_of(i) == phs.type_of(j) + p)
            .collect();
        let cols: Vec<Vec<Gaussian>> = slots
            .iter()
            .map(|&(i, j)| {
                let mut e = CMat::zeros(d, d);
                e.set(i, j, Gaussian::one());
                e.transpose().mul(&qc).add(&qc.mul(&e)).flatten()
            })
            .collect();
        let kernel = if slots.is_empty() {
            Vec::new()
        } else {
            CMat::from_columns(d * d, &cols).kernel()
        };
        let basis: Vec<CMat> = kernel
            .iter()
            .map(|c| {
                let mut x = CMat::zeros(d, d);
                for (&(i, j), v) in slots.iter().zip(c) {
                    x.set(i, j, v.clone());
                }
                x
            })
            .collect();
        pieces.insert(p, basis);
    }
    let mut ge = GradedEnd { phs: phs.clone(), metric, metric_inv, pieces, gram: BTreeMap::new() };
    let gram: BTreeMap<i64, CMat> = ge
        .pieces
        .iter()
        .map(|(p, b)| {
            let mut g = CMat::zeros(b.len(), b.len());
            for (a, xa) in b.iter().enumerate() {
                for (c, xc) in b.iter().enumerate() {
                    g.set(a, c, ge.inner(xc, xa));
                }
            }
            (*p, g)
        })
        .collect();
    ge.gram = gram;
    Ok(ge)
}

/// The element of `g^{−1}` whose block `V^{n,0} → V^{n−1,1}` is `block`
/// (rows indexed by `V^{n−1,1}`, columns by `V^{n,0}`).
pub fn xi_from_top_block(ge: &GradedEnd, block: &CMat) -> Result<CMat> {
    let n = ge.phs.weight;
    let src = ge.phs.block_range(n);
    let tgt = ge.phs.block_range(n - 1);
    if block.rows() != tgt.len() || block.cols() != src.len() {
        return Err(Error::DimensionMismatch(format!(
            "the block must be {}×{} (h^{{{},{}}} × h^{{{n},0}})",
            tgt.len(),
            src.len(),
            n - 1,
            1
        )));
    }
    let basis = ge.pieces.get(&-1).cloned().unwrap_or_default();
    let tgt_idx: Vec<usize> = tgt.collect();
    let src_idx: Vec<usize> = src.collect();
    let cols: Vec<Vec<Gaussian>> = basis.iter().map(|x| x.submatrix(&tgt_idx, &src_idx).flatten()).collect();
    let c = Subspace::coordinates_in(&cols, &block.flatten())
        .ok_or_else(|| Error::InvalidArgument("no element of g^{-1} has this block".into()))?;
    Ok(ge.combine(-1, &c))
}

/// The top block `V^{n,0} → V^{n−1,1}` of a coordinate matrix.
pub fn top_block(ge: &GradedEnd, x: &CMat) -> CMat {
    let n = ge.phs.weight;
    let src: Vec<usize> = ge.phs.block_range(n).collect();
    let tgt: Vec<usize> = ge.phs.block_range(n - 1).collect();
    x.submatrix(&tgt, &src)
}

/// The block `A_p : V^{p, n−p} → V^{p−1, n−p+1}` of `ξ ∈ g^{−1}`.
pub fn block_of(ge: &GradedEnd, x: &CMat, p: i64) -> CMat {
    let src: Vec<usize> = ge.phs.block_range(p).collect();
    let tgt: Vec<usize> = ge.phs.block_range(p - 1).collect();
    x.submatrix(&tgt, &src)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_one_genus_one() {
        let ge = graded_end_algebra(&PolarizedHS::weight_one_standard(1)).unwrap();
        assert_eq!(ge.dims(), vec![(-1, 1), (0, 1), (1, 1)]);
        assert!(ge.bracket_respects_grading());
        for g in ge.gram.values() {
            assert!(g.rows() == 0 || inertia(g).is_pd());
        }
    }

    #[test]
    fn weight_two_dimensions() {
        // so(2h20 + h11) graded by the Hodge decomposition with h = (1, 1, 1).
        let ge = graded_end_algebra(&PolarizedHS::weight_two_standard(1, 1)).unwrap();
        assert_eq!(ge.dims(), vec![(-2, 0), (-1, 1), (0, 1), (1, 1), (2, 0)]);
        let ge = graded_end_algebra(&PolarizedHS::weight_two_standard(2, 3)).unwrap();
        assert_eq!(ge.dim(-1), 6);
        assert_eq!(ge.dim(-2), 1);
        assert_eq!(ge.dim(0), 4 + 3);
        assert!(ge.bracket_respects_grading());
    }

    #[test]
    fn adjoint_is_the_metric_adjoint() {
        let ge = graded_end_algebra(&PolarizedHS::weight_one_standard(2)).unwrap();
        for x in &ge.pieces[&-1] {
            for y in &ge.pieces[&-1] {
                assert_eq!(ge.inner(x, y), ge.inner(y, x).conj());
            }
            assert!(ge.contains(1, &ge.adjoint(x)));
        }
    }
}
