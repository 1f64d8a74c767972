//! Monodromy weight filtrations of nilpotent endomorphisms.
//!
//! For `N` with `N^{l+1} = 0` and center `c`, the filtration is
//!
//! ```text
//! W_{c+k} = Σ_{j ≥ max(0,−k)} im N^j ∩ ker N^{k+j+1},
//! ```
//!
//! which on a Jordan string `e_0 ← e_1 ← … ← e_l` puts `e_i` in weight
//! `c − l + 2i`. The result is checked against the defining properties
//! (`N W_k ⊆ W_{k−2}` and the Hard Lefschetz isomorphisms).

use crate::algebra::field::Field;
use crate::algebra::mat::Mat;
use crate::algebra::quotient::Subquotient;
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};

/// An increasing filtration `W_k`, stored on the range `[lo, hi]`.
/// Below `lo` it is zero and from `hi` on it is the whole space.
#[derive(Clone, PartialEq)]
pub struct WeightFiltration<F> {
    dim: usize,
    lo: i64,
    /// `steps[i] = W_{lo+i}`.
    steps: Vec<Subspace<F>>,
}

impl<F: Field> std::fmt::Debug for WeightFiltration<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WeightFiltration").field("lo", &self.lo).field("steps", &self.steps).finish()
    }
}

impl<F: Field> WeightFiltration<F> {
    /// Builds a filtration from explicit steps `W_lo, W_lo+1, …`.
    pub fn from_steps(dim: usize, lo: i64, steps: Vec<Subspace<F>>) -> Self {
        WeightFiltration { dim, lo, steps }
    }

    /// The trivial filtration of weight `c`: `W_{c−1} = 0`, `W_c = V`.
    pub fn trivial(dim: usize, c: i64) -> Self {
        WeightFiltration { dim, lo: c, steps: vec![Subspace::full(dim)] }
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    /// Lowest stored index.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest stored index.
    pub fn hi(&self) -> i64 {
        self.lo + self.steps.len() as i64 - 1
    }

    /// `W_k` for any integer `k`.
    pub fn get(&self, k: i64) -> Subspace<F> {
        if k < self.lo {
            Subspace::zero(self.dim)
        } else if k > self.hi() {
            Subspace::full(self.dim)
        } else {
            self.steps[(k - self.lo) as usize].clone()
        }
    }

    /// `dim Gr_k`.
    pub fn graded_dim(&self, k: i64) -> usize {
        self.get(k).dim() - self.get(k - 1).dim()
    }

    /// `dim Gr_k` for `k = lo..=hi`.
    pub fn graded_dims_in(&self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|k| self.graded_dim(k)).collect()
    }

    /// Indices `k` with `Gr_k ≠ 0`.
    pub fn weights(&self) -> Vec<i64> {
        (self.lo..=self.hi()).filter(|&k| self.graded_dim(k) > 0).collect()
    }

    /// Smallest and largest index with a nonzero graded piece.
    pub fn support(&self) -> Option<(i64, i64)> {
        let w = self.weights();
        Some((*w.first()?, *w.last()?))
    }

    /// The subquotient `Gr_k = W_k / W_{k−1}`.
    pub fn graded(&self, k: i64) -> Subquotient<F> {
        Subquotient::new(&self.get(k), &self.get(k - 1))
    }

    /// Equality as filtrations (independent of the stored ranges).
    pub fn same_as(&self, o: &Self) -> bool {
        let lo = self.lo.min(o.lo) - 1;
        let hi = self.hi().max(o.hi()) + 1;
        self.dim == o.dim && (lo..=hi).all(|k| self.get(k) == o.get(k))
    }

    /// Maps the filtration into a larger field.
    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G + Copy) -> WeightFiltration<G> {
        WeightFiltration { dim: self.dim, lo: self.lo, steps: self.steps.iter().map(|s| s.map_field(f)).collect() }
    }

    /// The same filtration with indices shifted: `out_k = W_{k+shift}`.
    pub fn reindexed(&self, shift: i64) -> Self {
        WeightFiltration { dim: self.dim, lo: self.lo - shift, steps: self.steps.clone() }
    }
}

/// The weight filtration `W(N)` centered at `center`.
///
/// Fails with [`Error::NotNilpotent`] when `N^dim ≠ 0`.
pub fn weight_filtration<F: Field>(n: &Mat<F>, center: i64) -> Result<WeightFiltration<F>> {
    assert!(n.is_square(), "weight filtration of a non-square matrix");
    let d = n.rows();
    let l = match n.nilpotency_index() {
        Some(idx) => idx as i64,
        None => return Err(Error::NotNilpotent),
    };
    if d == 0 || l <= 0 {
        return Ok(WeightFiltration::trivial(d, center));
    }
    // Powers N^0..N^{2l+1}; kernels and images of each.
    let mut powers = vec![Mat::identity(d)];
    for _ in 0..=2 * l + 1 {
        let next = powers.last().unwrap().mul(n);
        powers.push(next);
    }
    let ker: Vec<Subspace<F>> = powers.iter().map(Subspace::kernel_of).collect();
    let im: Vec<Subspace<F>> = powers.iter().map(Subspace::column_span).collect();
    let mut steps = Vec::new();
    for k in -l..=l {
        let mut w = Subspace::zero(d);
        for j in 0.max(-k)..=l {
            let m = (k + j + 1) as usize;
            let kk = if m < ker.len() { ker[m].clone() } else { Subspace::full(d) };
            w = w.sum(&im[j as usize].intersect(&kk));
        }
        steps.push(w);
    }
    Ok(WeightFiltration { dim: d, lo: center - l, steps })
}

/// Checks the defining properties of `W(N)` centered at `center`:
/// increasing, `N W_k ⊆ W_{k−2}`, and `N^j : Gr_{c+j} → Gr_{c−j}` an
/// isomorphism for every `j ≥ 0`.
pub fn satisfies_weight_properties<F: Field>(n: &Mat<F>, w: &WeightFiltration<F>, center: i64) -> bool {
    let (lo, hi) = (w.lo() - 2, w.hi() + 2);
    for k in lo..=hi {
        if !w.get(k).contains_subspace(&w.get(k - 1)) {
            return false;
        }
        if !w.get(k - 2).contains_subspace(&w.get(k).image(n)) {
            return false;
        }
    }
    if !w.get(lo).is_zero() || !w.get(hi).is_full() {
        return false;
    }
    let span = (hi - center).max(center - lo);
    let mut p = Mat::identity(n.rows());
    for j in 0..=span {
        let top = w.get(center + j);
        let below_top = w.get(center + j - 1);
        let target = w.get(center - j);
        let below_target = w.get(center - j - 1);
        if top.dim() - below_top.dim() != target.dim() - below_target.dim() {
            return false;
        }
        // Surjective onto Gr_{c−j}: N^j W_{c+j} + W_{c−j−1} = W_{c−j}.
        if top.image(&p).sum(&below_target) != target {
            return false;
        }
        p = p.mul(n);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mat::QMat;

    #[test]
    fn single_jordan_block_weight_one() {
        let n = QMat::from_i64_rows(&[&[0, 1], &[0, 0]]);
        let w = weight_filtration(&n, 1).unwrap();
        assert_eq!(w.graded_dims_in(0, 2), vec![1, 0, 1]);
        assert!(satisfies_weight_properties(&n, &w, 1));
    }

    #[test]
    fn zero_map_is_pure() {
        let n = QMat::zeros(3, 3);
        let w = weight_filtration(&n, 2).unwrap();
        assert!(w.get(1).is_zero() && w.get(2).is_full());
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let n = QMat::from_i64_rows(&[&[1, 0], &[0, 0]]);
        assert_eq!(weight_filtration(&n, 0), Err(Error::NotNilpotent));
    }

    #[test]
    fn mixed_jordan_types() {
        // Blocks of sizes 3 and 1.
        let n = QMat::from_i64_rows(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        let w = weight_filtration(&n, 0).unwrap();
        assert_eq!(w.graded_dims_in(-2, 2), vec![1, 0, 2, 0, 1]);
        assert!(satisfies_weight_properties(&n, &w, 0));
    }
}
