//! The Hodge-metric matrix and polynomial of a nilpotent orbit.
//!
//! For each `a` the top Hodge piece `I^{n,a} ≅ F^n ∩ W_{n+a} / F^n ∩ W_{n+a−1}`
//! of `W = W(ΣN_j)` carries the Hermitian form
//!
//! ```text
//! h_a(u, v) = ε · Q(N(x)^a u, v̄),    N(x) = Σ_j x_j N_j,
//! ```
//!
//! with the polarization sign `ε` of the primitive `(n, a)` piece. The form
//! descends to the quotient because `Q(W_{n−a−1}, W_{n+a}) = 0`, so the
//! determinant of each block depends on the chosen frame only through a
//! positive factor `|det g|²`. The metric polynomial is the product of the
//! block determinants, made monic in its grlex-leading term.

use serde_json::{json, Value};

use crate::algebra::field::{Field, Ring};
use crate::algebra::gaussian::Gaussian;
use crate::algebra::mat::{CMat, QMat};
use crate::algebra::poly::{poly_mat_det, CPoly, PolyMat, QPoly};
use crate::algebra::rational::Rational;
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};
use crate::hodge::bigrading::deligne_bigrading;
use crate::hodge::lmhs::{polarization_sign, total_weight_filtration};
use crate::hodge::spec::PolarizedOrbitSpec;
use crate::io;

/// How the frame of each top Hodge piece is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FrameRule {
    /// A basis of the Deligne piece `I^{n,a}`.
    #[default]
    Deligne,
    /// The echelon complement of `F^n ∩ W_{n+a−1}` in `F^n ∩ W_{n+a}`.
    Echelon,
    /// The same complement built by scanning the basis in reverse order,
    /// then made lower-triangular-unipotent by partial sums.
    ReversedEchelon,
}

/// One block `h_a` of the Hodge-metric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricBlock {
    /// The power of `N(x)`; the block lives on `I^{n,a}`.
    pub a: i64,
    /// The frame vectors in `V_C`.
    pub frame: Vec<Vec<Gaussian>>,
    /// Entry `(r, s)` is `ε · Q(N(x)^a u_r, ū_s)`.
    pub matrix: PolyMat<Gaussian>,
}

/// The block-diagonal Hodge-metric matrix `H(x)` on a frame of `F^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct HodgeMetricMatrix {
    pub num_vars: usize,
    pub blocks: Vec<MetricBlock>,
}

impl HodgeMetricMatrix {
    /// Total size of the frame (`dim F^n`).
    pub fn size(&self) -> usize {
        self.blocks.iter().map(|b| b.frame.len()).sum()
    }

    /// The full block-diagonal matrix.
    pub fn full(&self) -> PolyMat<Gaussian> {
        let n = self.size();
        let mut m = vec![vec![CPoly::zero(self.num_vars); n]; n];
        let mut off = 0;
        for b in &self.blocks {
            for (r, row) in b.matrix.iter().enumerate() {
                for (s, e) in row.iter().enumerate() {
                    m[off + r][off + s] = e.clone();
                }
            }
            off += b.frame.len();
        }
        m
    }

    /// The full matrix with rational coefficients, when every entry is real.
    pub fn full_rational(&self) -> Option<PolyMat<Rational>> {
        self.full().iter().map(|row| row.iter().map(|e| e.to_rational()).collect()).collect()
    }

    /// The determinant `det H(x)`.
    pub fn det(&self) -> CPoly {
        self.blocks
            .iter()
            .fold(CPoly::one(self.num_vars), |acc, b| acc.mul(&poly_mat_det(&b.matrix, self.num_vars)))
    }

    /// Rendering of the rational matrix as nested arrays of strings.
    pub fn render(&self) -> Vec<Vec<String>> {
        self.full().iter().map(|row| row.iter().map(|e| render_cpoly(e)).collect()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "size": self.size(),
            "matrix": self.render(),
            "blocks": self.blocks.iter().map(|b| json!({
                "a": b.a,
                "frame": b.frame.iter().map(|v| io::cvec_to_json(v)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn render_cpoly(p: &CPoly) -> String {
    match p.to_rational() {
        Some(q) => q.render("x"),
        None => p.render("x"),
    }
}

/// The Hodge-metric polynomial `P(x)`, monic in its grlex-leading term.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricPolynomial {
    pub p: QPoly,
    /// The raw leading coefficient divided out (positive for polarized input).
    pub constant: Rational,
    /// `h^{n−a,0} = dim I^{n,a}` for `a = 0..=n`.
    pub hodge_numbers: Vec<usize>,
}

impl MetricPolynomial {
    /// `Σ_a a · h^{n−a,0}`, the expected total degree.
    pub fn expected_degree(&self) -> usize {
        self.hodge_numbers.iter().enumerate().map(|(a, h)| a * h).sum()
    }

    pub fn num_vars(&self) -> usize {
        self.p.num_vars()
    }

    pub fn render(&self) -> String {
        self.p.render("x")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "polynomial": self.render(),
            "poly": self.p.to_json(),
            "constant": io::exact_and_decimal(&self.constant),
            "hodgeNumbers": self.hodge_numbers,
            "degree": self.expected_degree(),
            "homogeneous": self.p.is_homogeneous(),
        })
    }
}

/// `N(x) v` for a vector of polynomials `v`.
fn apply_pencil(nilpotents: &[CMat], v: &[CPoly], num_vars: usize) -> Vec<CPoly> {
    let d = v.len();
    let mut out = vec![CPoly::zero(num_vars); d];
    for (j, n) in nilpotents.iter().enumerate() {
        let xj = CPoly::var(num_vars, j);
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = CPoly::zero(num_vars);
            for (l, vl) in v.iter().enumerate() {
                let c = n.get(i, l);
                if !c.is_zero() && !vl.is_zero() {
                    acc = acc.add(&vl.scale(c));
                }
            }
            if !acc.is_zero() {
                *o = o.add(&acc.mul(&xj));
            }
        }
    }
    out
}

fn frame_for(
    rule: FrameRule,
    top: &Subspace<Gaussian>,
    bottom: &Subspace<Gaussian>,
    deligne: Option<&Subspace<Gaussian>>,
) -> Vec<Vec<Gaussian>> {
    match rule {
        FrameRule::Deligne => deligne.map(|s| s.basis().to_vec()).unwrap_or_default(),
        FrameRule::Echelon => bottom.complement_in(top),
        FrameRule::ReversedEchelon => {
            let c = bottom.complement_in_reversed(top);
            // Partial sums v'_r = Σ_{s≥r} v_s keep the frame a complement.
            (0..c.len())
                .map(|r| {
                    c[r..].iter().fold(vec![Gaussian::zero(); top.ambient()], |acc, v| {
                        acc.iter().zip(v).map(|(a, b)| a.add(b)).collect()
                    })
                })
                .collect()
        }
    }
}

/// The Hodge-metric matrix on the default (Deligne) frame.
pub fn hodge_metric_matrix(spec: &PolarizedOrbitSpec) -> Result<HodgeMetricMatrix> {
    hodge_metric_matrix_with(spec, FrameRule::Deligne)
}

/// The Hodge-metric matrix on the frame chosen by `rule`.
pub fn hodge_metric_matrix_with(spec: &PolarizedOrbitSpec, rule: FrameRule) -> Result<HodgeMetricMatrix> {
    let n = spec.weight;
    let k = spec.k();
    let w = total_weight_filtration(spec);
    if let Some((lo, hi)) = w.support() {
        if lo < 0 || hi > 2 * n {
            return Err(Error::NotEffective(format!("weights of W(N) span [{lo}, {hi}], outside [0, {}]", 2 * n)));
        }
    }
    let bg = if rule == FrameRule::Deligne { Some(deligne_bigrading(&w, &spec.f)?) } else { None };
    let wc = w.map_field(|x| Gaussian::real(x.clone()));
    let fnn = spec.f.get(n);
    let q: CMat = spec.q.to_gaussian();
    let nil: Vec<CMat> = spec.nilpotents.iter().map(QMat::to_gaussian).collect();
    let mut blocks = Vec::new();
    for a in 0..=n {
        let top = fnn.intersect(&wc.get(n + a));
        let bottom = fnn.intersect(&wc.get(n + a - 1));
        if top.dim() == bottom.dim() {
            continue;
        }
        let deligne = bg.as_ref().map(|b| b.piece(n, a));
        let frame = frame_for(rule, &top, &bottom, deligne.as_ref());
        if frame.len() != top.dim() - bottom.dim() {
            return Err(Error::NotMhs(format!(
                "I^{{{n},{a}}} has dimension {} but F^n ∩ W_{} / F^n ∩ W_{} has dimension {}",
                frame.len(),
                n + a,
                n + a - 1,
                top.dim() - bottom.dim()
            )));
        }
        let eps = polarization_sign(n, a, n, a);
        let pushed: Vec<Vec<CPoly>> = frame
            .iter()
            .map(|u| {
                let mut v: Vec<CPoly> = u.iter().map(|c| CPoly::constant(k, c.clone())).collect();
                for _ in 0..a {
                    v = apply_pencil(&nil, &v, k);
                }
                v
            })
            .collect();
        let duals: Vec<Vec<Gaussian>> = frame
            .iter()
            .map(|u| {
                let ubar: Vec<Gaussian> = u.iter().map(|c| c.conj()).collect();
                q.mul_vec(&ubar)
            })
            .collect();
        let m = frame.len();
        let mut matrix = vec![vec![CPoly::zero(k); m]; m];
        for r in 0..m {
            for s in 0..m {
                let mut e = CPoly::zero(k);
                for (pi, di) in pushed[r].iter().zip(&duals[s]) {
                    if !di.is_zero() && !pi.is_zero() {
                        e = e.add(&pi.scale(di));
                    }
                }
                matrix[r][s] = e.scale(&eps);
            }
        }
        blocks.push(MetricBlock { a, frame, matrix });
    }
    Ok(HodgeMetricMatrix { num_vars: k, blocks })
}

/// The Hodge-metric polynomial on the default frame.
pub fn hodge_metric_polynomial(spec: &PolarizedOrbitSpec) -> Result<MetricPolynomial> {
    hodge_metric_polynomial_with(spec, FrameRule::Deligne)
}

/// The Hodge-metric polynomial computed on the frame chosen by `rule`.
pub fn hodge_metric_polynomial_with(spec: &PolarizedOrbitSpec, rule: FrameRule) -> Result<MetricPolynomial> {
    let h = hodge_metric_matrix_with(spec, rule)?;
    let mut hodge_numbers = vec![0; spec.weight as usize + 1];
    let mut det = CPoly::one(h.num_vars);
    for b in &h.blocks {
        hodge_numbers[b.a as usize] = b.frame.len();
        let d = poly_mat_det(&b.matrix, h.num_vars);
        if d.is_zero() {
            return Err(Error::DegenerateDet((spec.weight + b.a) as usize));
        }
        det = det.mul(&d);
    }
    let real = det.to_rational().ok_or_else(|| Error::NotMhs("the metric determinant is not real".into()))?;
    let (p, constant) = real.monic();
    Ok(MetricPolynomial { p, constant, hodge_numbers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn dollar_bill_matrix_and_polynomial() {
        let spec = fixtures::dollar_bill();
        let h = hodge_metric_matrix(&spec).unwrap();
        assert_eq!(h.render(), vec![vec!["x1 + x3", "x3"], vec!["x3", "x2 + x3"]]);
        let p = hodge_metric_polynomial(&spec).unwrap();
        assert_eq!(p.render(), "x1*x2 + x1*x3 + x2*x3");
        assert_eq!(p.constant, Rational::one());
        assert_eq!(p.hodge_numbers, vec![0, 2]);
    }

    #[test]
    fn elliptic_degeneration_is_x1() {
        let p = hodge_metric_polynomial(&fixtures::elliptic_degeneration()).unwrap();
        assert_eq!(p.render(), "x1");
    }

    #[test]
    fn frame_rules_agree_up_to_positive_constants() {
        for spec in fixtures::orbit_fixtures().into_iter().map(|(_, s)| s) {
            let base = hodge_metric_polynomial(&spec).unwrap();
            for rule in [FrameRule::Echelon, FrameRule::ReversedEchelon] {
                let other = hodge_metric_polynomial_with(&spec, rule).unwrap();
                assert_eq!(other.p, base.p);
                assert!(other.constant.is_positive());
            }
        }
    }
}
