//! Polarized Hodge structures given by explicit Hodge bases.
//!
//! The Hodge metric on `V^{p,q}` is `⟨u, w⟩ = ε_{p,q} Q(u, w̄)` with the
//! sign of the polarization conditions (for weight 1, `−i Q(u, w̄)` on
//! `V^{1,0}`). All computations work in Hodge-basis coordinates: with `B`
//! the matrix of basis columns ordered by decreasing `p`, an endomorphism
//! `X` becomes `B⁻¹ X B`, the polarization becomes `Q' = Bᵀ Q B` and the
//! Hodge metric becomes the block-diagonal Hermitian Gram matrix `K`.

use serde_json::{json, Value};

use crate::algebra::field::{Field, Ring};
use crate::algebra::gaussian::Gaussian;
use crate::algebra::ldl::inertia;
use crate::algebra::mat::{bilinear, CMat, QMat};
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};
use crate::hodge::lmhs::polarization_sign;
use crate::io;

/// A polarized Hodge structure with a chosen basis of every `V^{p,q}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizedHS {
    pub dim: usize,
    pub weight: i64,
    pub q: QMat,
    /// `(p, basis of V^{p, n−p})` for `p = n, n−1, …, 0`.
    pub hodge_basis: Vec<(i64, Vec<Vec<Gaussian>>)>,
}

impl PolarizedHS {
    /// Validates the decomposition, conjugate symmetry, orthogonality and
    /// the Hodge–Riemann positivity.
    pub fn new(weight: i64, q: QMat, hodge_basis: Vec<(i64, Vec<Vec<Gaussian>>)>) -> Result<Self> {
        let dim = q.rows();
        if !q.is_square() {
            return Err(Error::DimensionMismatch("Q must be square".into()));
        }
        let mut parts = hodge_basis;
        parts.sort_by(|a, b| b.0.cmp(&a.0));
        let expected: Vec<i64> = (0..=weight).rev().collect();
        if parts.iter().map(|(p, _)| *p).collect::<Vec<_>>() != expected {
            return Err(Error::DimensionMismatch(format!("need one basis for each p = {weight}, …, 0")));
        }
        if parts.iter().flat_map(|(_, b)| b).any(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch(format!("Hodge basis vectors must have {dim} entries")));
        }
        let phs = PolarizedHS { dim, weight, q, hodge_basis: parts };
        phs.validate()?;
        Ok(phs)
    }

    fn validate(&self) -> Result<()> {
        let b = self.basis_matrix();
        if b.cols() != self.dim || b.inverse().is_none() {
            return Err(Error::NotPolarized("the Hodge subspaces do not form a direct sum decomposition of V".into()));
        }
        let n = self.weight;
        for (p, basis) in &self.hodge_basis {
            let here = Subspace::span(self.dim, basis);
            let conj_partner = Subspace::span(self.dim, self.part(n - p)).conj();
            if here != conj_partner {
                return Err(Error::NotPolarized(format!("V^{{{p},{}}} is not the conjugate of V^{{{},{p}}}", n - p, n - p)));
            }
        }
        let qg = self.q.to_gaussian();
        for (p, bp) in &self.hodge_basis {
            for (r, br) in &self.hodge_basis {
                if p + r == n {
                    continue;
                }
                if bp.iter().any(|u| br.iter().any(|w| !bilinear(&qg, u, w).is_zero())) {
                    return Err(Error::NotPolarized(format!("Q(V^{{{p},{}}}, V^{{{r},{}}}) ≠ 0", n - p, n - r)));
                }
            }
        }
        for (p, _) in &self.hodge_basis {
            let k = self.block_gram(*p);
            if !k.is_hermitian() || !inertia(&k).is_pd() {
                return Err(Error::NotPolarized(format!("the Hodge metric is not positive on V^{{{p},{}}}", n - p)));
            }
        }
        Ok(())
    }

    /// The basis of `V^{p, n−p}`.
    pub fn part(&self, p: i64) -> &[Vec<Gaussian>] {
        self.hodge_basis.iter().find(|(x, _)| *x == p).map_or(&[], |(_, b)| b.as_slice())
    }

    /// `h^{p, n−p}`.
    pub fn h(&self, p: i64) -> usize {
        self.part(p).len()
    }

    /// Hodge numbers `h^{n,0}, …, h^{0,n}`.
    pub fn hodge_numbers(&self) -> Vec<usize> {
        self.hodge_basis.iter().map(|(_, b)| b.len()).collect()
    }

    /// Coordinate range of `V^{p, n−p}`.
    pub fn block_range(&self, p: i64) -> std::ops::Range<usize> {
        let mut start = 0;
        for (x, b) in &self.hodge_basis {
            if *x == p {
                return start..start + b.len();
            }
            start += b.len();
        }
        start..start
    }

    /// The Hodge type `p` of coordinate index `i`.
    pub fn type_of(&self, i: usize) -> i64 {
        let mut start = 0;
        for (p, b) in &self.hodge_basis {
            if i < start + b.len() {
                return *p;
            }
            start += b.len();
        }
        panic!("coordinate index out of range")
    }

    /// The matrix `B` of Hodge basis columns.
    pub fn basis_matrix(&self) -> CMat {
        let cols: Vec<Vec<Gaussian>> = self.hodge_basis.iter().flat_map(|(_, b)| b.iter().cloned()).collect();
        CMat::from_columns(self.dim, &cols)
    }

    /// `ε_{p,q} = polarization sign`, so that `ε Q(v, v̄) > 0` on `V^{p,q}`.
    pub fn epsilon(&self, p: i64) -> Gaussian {
        polarization_sign(self.weight, 0, p, self.weight - p)
    }

    fn block_gram(&self, p: i64) -> CMat {
        let b = self.part(p);
        let qg = self.q.to_gaussian();
        let eps = self.epsilon(p);
        let mut k = CMat::zeros(b.len(), b.len());
        for (a, ba) in b.iter().enumerate() {
            let bar: Vec<Gaussian> = ba.iter().map(Field::conj).collect();
            for (c, bc) in b.iter().enumerate() {
                // K[a][c] = ⟨b_c, b_a⟩ = ε Q(b_c, b̄_a).
                k.set(a, c, eps.mul(&bilinear(&qg, bc, &bar)));
            }
        }
        k
    }

    /// The Hodge metric in coordinates: `⟨x, y⟩ = y* K x`.
    pub fn metric(&self) -> CMat {
        let blocks: Vec<CMat> = self.hodge_basis.iter().map(|(p, _)| self.block_gram(*p)).collect();
        CMat::block_diag(&blocks)
    }

    /// `Q' = Bᵀ Q B`.
    pub fn q_coordinates(&self) -> CMat {
        let b = self.basis_matrix();
        b.transpose().mul(&self.q.to_gaussian()).mul(&b)
    }

    /// Expresses a matrix `X` on `V` in Hodge coordinates.
    pub fn to_coordinates(&self, x: &CMat) -> CMat {
        let b = self.basis_matrix();
        b.inverse().expect("Hodge basis is a basis").mul(x).mul(&b)
    }

    /// Maps a coordinate matrix back to `V`.
    pub fn from_coordinates(&self, x: &CMat) -> CMat {
        let b = self.basis_matrix();
        b.mul(x).mul(&b.inverse().expect("Hodge basis is a basis"))
    }

    /// Weight 1 normal form: `Q = [[0, I], [−I, 0]]`, `V^{1,0}` spanned by
    /// the columns of `[Ω; I]` (`Ω` symmetric with `Im Ω > 0`).
    pub fn weight_one(omega: &CMat) -> Result<Self> {
        let g = omega.rows();
        if !omega.is_square() {
            return Err(Error::DimensionMismatch("Ω must be square".into()));
        }
        if *omega != omega.transpose() {
            return Err(Error::NotPolarized("Ω must be symmetric".into()));
        }
        let mut q = QMat::zeros(2 * g, 2 * g);
        for i in 0..g {
            q.set(i, g + i, crate::algebra::rational::Rational::one());
            q.set(g + i, i, crate::algebra::rational::Rational::from_int(-1));
        }
        let f1: Vec<Vec<Gaussian>> = (0..g)
            .map(|j| {
                let mut v: Vec<Gaussian> = omega.col(j);
                v.extend((0..g).map(|i| if i == j { Gaussian::one() } else { Gaussian::zero() }));
                v
            })
            .collect();
        let conj: Vec<Vec<Gaussian>> = f1.iter().map(|v| v.iter().map(Field::conj).collect()).collect();
        Self::new(1, q, vec![(1, f1), (0, conj)])
    }

    /// Weight 1 at `Ω = i·I_g`.
    pub fn weight_one_standard(g: usize) -> Self {
        let omega = CMat::identity(g).scale(&Gaussian::i());
        Self::weight_one(&omega).expect("iI is a period matrix")
    }

    /// Weight 2 normal form: `Q = diag(I_m, −I_{h11}, I_m)`, `V^{2,0}`
    /// spanned by the columns of `[Ω; 0; iΩ]` (`Ω` real `m × h^{2,0}` of
    /// full column rank), and `V^{1,1}` the `Q`-orthogonal complement of
    /// `V^{2,0} ⊕ V^{0,2}`. Positivity on `V^{1,1}` forces `m = h^{2,0}`.
    pub fn weight_two(omega: &QMat, h11: usize) -> Result<Self> {
        let m = omega.rows();
        let h20 = omega.cols();
        if omega.rank() != h20 {
            return Err(Error::NotPolarized("Ω must have full column rank".into()));
        }
        let dim = 2 * m + h11;
        let mut diag = vec![crate::algebra::rational::Rational::one(); dim];
        for d in diag.iter_mut().skip(m).take(h11) {
            *d = crate::algebra::rational::Rational::from_int(-1);
        }
        let q = QMat::diag(&diag);
        let og = omega.to_gaussian();
        let f2: Vec<Vec<Gaussian>> = (0..h20)
            .map(|j| {
                let c = og.col(j);
                let mut v = c.clone();
                v.extend(std::iter::repeat_n(Gaussian::zero(), h11));
                v.extend(c.iter().map(|x| Gaussian::i().mul(x)));
                v
            })
            .collect();
        let f0: Vec<Vec<Gaussian>> = f2.iter().map(|v| v.iter().map(Field::conj).collect()).collect();
        // V^{1,1} = {v : Q(v, u) = 0 for u ∈ V^{2,0} ⊕ V^{0,2}}, which is
        // defined over Q since the constraint set is conjugation-stable.
        let qg = q.to_gaussian();
        let rows: Vec<Vec<Gaussian>> = f2.iter().chain(&f0).map(|u| qg.transpose().mul_vec(u)).collect();
        let mid = if rows.is_empty() {
            Subspace::<Gaussian>::full(dim).basis().to_vec()
        } else {
            CMat::from_rows(rows).kernel()
        };
        // A real basis keeps conjugate symmetry manifest.
        let real_mid: Vec<Vec<Gaussian>> = realify(dim, &mid);
        Self::new(2, q, vec![(2, f2), (1, real_mid), (0, f0)])
    }

    /// Weight 2 at `Ω = I_{h20}` (so `m = h^{2,0}`).
    pub fn weight_two_standard(h20: usize, h11: usize) -> Self {
        Self::weight_two(&QMat::identity(h20), h11).expect("the identity is a valid normal form")
    }

    /// Parses a `phs` payload:
    /// `{"weight": 1, "omega": [[..]]}` or `{"weight": 1, "g": n}` (Ω = iI),
    /// `{"weight": 2, "omega": [[..]], "h11": n}` or
    /// `{"weight": 2, "h20": m, "h11": n}` (Ω = I).
    pub fn from_json(v: &Value) -> Result<Self> {
        let what = "phs";
        let weight = io::usize_field(v, "weight", what)?;
        let schema = |e: Error| match e {
            Error::DimensionMismatch(m) => Error::Schema(format!("{what}: {m}")),
            other => other,
        };
        match weight {
            1 => match v.get("omega") {
                Some(o) => Self::weight_one(&io::cmat_from_json(o, "phs.omega")?).map_err(schema),
                None => Ok(Self::weight_one_standard(io::usize_field(v, "g", what)?)),
            },
            2 => {
                let h11 = io::usize_field(v, "h11", what)?;
                match v.get("omega") {
                    Some(o) => Self::weight_two(&io::qmat_from_json(o, "phs.omega")?, h11).map_err(schema),
                    None => Ok(Self::weight_two_standard(io::usize_field(v, "h20", what)?, h11)),
                }
            }
            w => Err(Error::Schema(format!("{what}: normal forms exist for weights 1 and 2, got {w}"))),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "weight": self.weight,
            "Q": io::qmat_to_json(&self.q),
            "hodgeNumbers": self.hodge_numbers(),
            "hodgeBasis": self.hodge_basis.iter().map(|(p, b)| json!({
                "p": p,
                "q": self.weight - p,
                "basis": b.iter().map(|v| io::cvec_to_json(v)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// A real basis of a conjugation-stable subspace.
fn realify(dim: usize, basis: &[Vec<Gaussian>]) -> Vec<Vec<Gaussian>> {
    let mut vs: Vec<Vec<Gaussian>> = Vec::new();
    for v in basis {
        let re: Vec<Gaussian> = v.iter().map(|x| Gaussian::real(x.real_part())).collect();
        let im: Vec<Gaussian> = v.iter().map(|x| Gaussian::real(x.imag_part())).collect();
        vs.push(re);
        vs.push(im);
    }
    let s = Subspace::span(dim, &vs);
    debug_assert_eq!(s.dim(), basis.len());
    s.basis().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms_are_polarized() {
        let p = PolarizedHS::weight_one_standard(2);
        assert_eq!(p.hodge_numbers(), vec![2, 2]);
        assert!(inertia(&p.metric()).is_pd());
        let p2 = PolarizedHS::weight_two_standard(2, 3);
        assert_eq!(p2.hodge_numbers(), vec![2, 3, 2]);
        // Ω with Im Ω indefinite is rejected.
        let bad = CMat::identity(1).scale(&Gaussian::i()).neg();
        assert!(matches!(PolarizedHS::weight_one(&bad), Err(Error::NotPolarized(_))));
    }

    #[test]
    fn general_period_matrix() {
        let omega = CMat::from_rows(vec![
            vec![Gaussian::from_ints(1, 2), Gaussian::from_ints(0, 1)],
            vec![Gaussian::from_ints(0, 1), Gaussian::from_ints(-1, 3)],
        ]);
        let p = PolarizedHS::weight_one(&omega).unwrap();
        assert!(inertia(&p.metric()).is_pd());
        let w2 = PolarizedHS::weight_two(&QMat::from_i64_rows(&[&[1, 1], &[0, 2]]), 3).unwrap();
        assert_eq!(w2.hodge_numbers(), vec![2, 3, 2]);
        // A non-square Ω leaves positive directions in the complement.
        let tall = PolarizedHS::weight_two(&QMat::from_i64_rows(&[&[1, 0], &[1, 1], &[0, 2]]), 1);
        assert!(matches!(tall, Err(Error::NotPolarized(_))));
    }
}
