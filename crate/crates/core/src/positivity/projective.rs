//! The Chern form of `O(1)` on the projectivized bundle and the flat
//! directions of a model.
//!
//! At a unit vector `e` of `E_x`, in a frame normalized at the point
//! (`h_{ij}(x) = δ_{ij}`, `dh(x) = 0`), the form splits into a horizontal
//! block `Θ(e, ·)` on `T_x X` and the Fubini–Study block
//! `Σ da_i ∧ dā_i − |Σ a_i da_i|²` on `T_{[e]} P(E_x) ≅ e^⊥`, with no cross
//! terms.

use serde_json::{json, Value};

use crate::algebra::field::Ring;
use crate::algebra::gaussian::Gaussian;
use crate::algebra::ldl::{inertia, Definiteness};
use crate::algebra::mat::CMat;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};
use crate::io;

use super::model::{curvature_from_model, hermitian_pairing, NormPositivityModel};

/// The Hermitian form on `T_x X ⊕ T_{[e]} P(E_x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivizedForm {
    /// The fiber vector the form is evaluated at.
    pub point: Vec<Gaussian>,
    /// `‖e‖²` of the given representative.
    pub norm_sq: Rational,
    /// `Θ(e, ·)` on `T`.
    pub horizontal: CMat,
    /// The Fubini–Study block on the chosen basis of `e^⊥`.
    pub vertical: CMat,
    /// The basis of `e^⊥` used for the vertical block.
    pub vertical_basis: Vec<Vec<Gaussian>>,
    /// `horizontal ⊕ vertical`.
    pub full: CMat,
    pub definiteness: Definiteness,
    pub horizontal_definiteness: Definiteness,
}

impl ProjectivizedForm {
    pub fn is_pd(&self) -> bool {
        self.definiteness.is_pd()
    }

    /// Dimension of the kernel of the horizontal block.
    pub fn horizontal_kernel_dim(&self) -> usize {
        self.horizontal_definiteness.zero
    }

    pub fn to_json(&self) -> Value {
        json!({
            "point": io::cvec_to_json(&self.point),
            "normSquared": self.norm_sq.to_string(),
            "horizontal": io::cmat_to_json(&self.horizontal),
            "vertical": io::cmat_to_json(&self.vertical),
            "verticalBasis": self.vertical_basis.iter().map(|v| io::cvec_to_json(v)).collect::<Vec<_>>(),
            "full": io::cmat_to_json(&self.full),
            "definiteness": self.definiteness.to_json(),
            "horizontalDefiniteness": self.horizontal_definiteness.to_json(),
            "horizontalKernelDim": self.horizontal_kernel_dim(),
            "positiveDefinite": self.is_pd(),
        })
    }
}

/// The form at a unit vector `e` (`‖e‖ = 1` in the metric of `E`).
pub fn projectivized_chern_form(m: &NormPositivityModel, e: &[Gaussian]) -> Result<ProjectivizedForm> {
    if e.len() != m.rank_e {
        return Err(Error::DimensionMismatch(format!("fiber vector must have {} entries", m.rank_e)));
    }
    let n = m.norm_sq_e(e);
    if !n.is_one() {
        return Err(Error::NotUnit(n.to_string()));
    }
    projectivized_chern_form_at_line(m, e)
}

/// The form at the line `[e]` for any nonzero representative: the blocks
/// are those of the unit vector `e/‖e‖`, which stay rational because only
/// `‖e‖²` enters.
pub fn projectivized_chern_form_at_line(m: &NormPositivityModel, e: &[Gaussian]) -> Result<ProjectivizedForm> {
    if e.len() != m.rank_e {
        return Err(Error::DimensionMismatch(format!("fiber vector must have {} entries", m.rank_e)));
    }
    if e.iter().all(Ring::is_zero) {
        return Err(Error::ZeroVector);
    }
    let n = m.norm_sq_e(e);
    let inv = Gaussian::real(n.recip());
    let theta = curvature_from_model(m);
    let horizontal = theta.form_at(e)?.scale(&inv);
    // e^⊥ = kernel of the row e* H_E.
    let row: Vec<Gaussian> = (0..m.rank_e).map(|j| hermitian_pairing(&m.metric_e, &unit(m.rank_e, j), e)).collect();
    let basis = CMat::from_rows(vec![row]).kernel();
    let r = basis.len();
    let mut vertical = CMat::zeros(r, r);
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            // ⟨b_i, b_j⟩ / ‖e‖² on e^⊥; entry (i, j) = b_i* H b_j.
            vertical.set(i, j, hermitian_pairing(&m.metric_e, bj, bi).mul(&inv));
        }
    }
    let full = CMat::block_diag(&[horizontal.clone(), vertical.clone()]);
    Ok(ProjectivizedForm {
        point: e.to_vec(),
        norm_sq: n,
        definiteness: inertia(&full),
        horizontal_definiteness: inertia(&horizontal),
        horizontal,
        vertical,
        vertical_basis: basis,
        full,
    })
}

fn unit(n: usize, j: usize) -> Vec<Gaussian> {
    (0..n).map(|i| if i == j { Gaussian::one() } else { Gaussian::zero() }).collect()
}

/// The leaf of the flat-direction foliation through `[e]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlatDirections {
    pub basis: Vec<Vec<Gaussian>>,
    pub dim: usize,
}

impl FlatDirections {
    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis.iter().map(|v| io::cvec_to_json(v)).collect::<Vec<_>>(),
            "dim": self.dim,
        })
    }
}

/// `{ξ : A(e ⊗ ξ) = 0}`.
pub fn flat_directions(m: &NormPositivityModel, e: &[Gaussian]) -> Result<FlatDirections> {
    let ae = m.contract(e)?;
    let basis = if ae.rows() == 0 { (0..m.dim_t).map(|j| unit(m.dim_t, j)).collect() } else { ae.kernel() };
    Ok(FlatDirections { dim: basis.len(), basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::positivity::model::{grassmannian_model, sym_power_model, sym_product};

    fn g(x: i64) -> Gaussian {
        Gaussian::from_i64(x)
    }

    #[test]
    fn grassmannian_example() {
        let m = grassmannian_model();
        let v = vec![g(1), g(0)];
        let f = projectivized_chern_form(&m, &v).unwrap();
        assert_eq!(f.horizontal_kernel_dim(), 2);
        assert!(!f.is_pd());
        assert_eq!(flat_directions(&m, &v).unwrap().dim, 2);

        let s2 = sym_power_model(&m, 2).unwrap();
        let vv = sym_product(2, &[vec![g(1), g(0)], vec![g(0), g(1)]]).unwrap();
        let f2 = projectivized_chern_form(&s2, &vv).unwrap();
        assert!(f2.is_pd());
        assert_eq!(f2.full.rows(), 4 + 2);
    }

    #[test]
    fn flat_model_has_only_the_vertical_block() {
        let m = NormPositivityModel::zero(2, 3, 1);
        let f = projectivized_chern_form(&m, &[g(0), g(1), g(0)]).unwrap();
        assert!(f.horizontal.is_zero());
        assert!(inertia(&f.vertical).is_pd());
        assert_eq!(flat_directions(&m, &[g(0), g(0), g(1)]).unwrap().dim, 2);
        assert_eq!(flat_directions(&m, &[g(0), g(0), g(0)]).unwrap().dim, 2);
    }

    #[test]
    fn non_unit_vectors_are_rejected() {
        let m = grassmannian_model();
        assert!(matches!(projectivized_chern_form(&m, &[g(1), g(1)]), Err(Error::NotUnit(_))));
        let line = projectivized_chern_form_at_line(&m, &[g(1), g(1)]).unwrap();
        assert_eq!(line.horizontal_kernel_dim(), 2);
        assert_eq!(projectivized_chern_form_at_line(&m, &[g(0), g(0)]), Err(Error::ZeroVector));
    }
}
