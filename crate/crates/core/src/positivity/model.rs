//! Pointwise norm-positivity models and their curvature.
//!
//! A model is a linear map `A : E ⊗ T → G` at one point, stored as a
//! `rank G × (rank E · dim T)` matrix whose column `α·dim T + i` is
//! `A(e_α ⊗ ∂_i)`. Its curvature is the Hermitian form
//!
//! ```text
//! Θ(u) = ‖A u‖²_G,    u ∈ E ⊗ T,
//! ```
//!
//! so `Θ(e, ξ) = ‖A(e ⊗ ξ)‖²` on decomposable tensors and the Nakano matrix
//! `A* H_G A` is positive semi-definite.

use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::field::{Field, Ring};
use crate::algebra::gaussian::Gaussian;
use crate::algebra::ldl::{inertia, Definiteness};
use crate::algebra::mat::CMat;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};
use crate::io;

/// A norm-positivity model `A : E ⊗ T → G` at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct NormPositivityModel {
    pub dim_t: usize,
    pub rank_e: usize,
    pub rank_g: usize,
    /// `rank G × (rank E · dim T)`.
    pub a: CMat,
    /// Hermitian metric on `E` in the chosen frame.
    pub metric_e: CMat,
    /// Hermitian metric on `G` in the chosen frame.
    pub metric_g: CMat,
}

impl NormPositivityModel {
    /// A model in unitary frames of `E` and `G`.
    pub fn new(dim_t: usize, rank_e: usize, rank_g: usize, a: CMat) -> Result<Self> {
        Self::with_metrics(dim_t, rank_e, rank_g, a, CMat::identity(rank_e), CMat::identity(rank_g))
    }

    /// A model with explicit Hermitian metrics on `E` and `G`.
    pub fn with_metrics(
        dim_t: usize,
        rank_e: usize,
        rank_g: usize,
        a: CMat,
        metric_e: CMat,
        metric_g: CMat,
    ) -> Result<Self> {
        if a.rows() != rank_g || a.cols() != rank_e * dim_t {
            return Err(Error::DimensionMismatch(format!(
                "A must be {rank_g}×{} (rankG × rankE·dimT), got {}×{}",
                rank_e * dim_t,
                a.rows(),
                a.cols()
            )));
        }
        for (m, n, what) in [(&metric_e, rank_e, "metricE"), (&metric_g, rank_g, "metricG")] {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!("{what} must be {n}×{n}")));
            }
            if !m.is_hermitian() || !inertia(m).is_pd() {
                return Err(Error::InvalidArgument(format!("{what} must be Hermitian positive definite")));
            }
        }
        Ok(NormPositivityModel { dim_t, rank_e, rank_g, a, metric_e, metric_g })
    }

    /// The zero model.
    pub fn zero(dim_t: usize, rank_e: usize, rank_g: usize) -> Self {
        Self::new(dim_t, rank_e, rank_g, CMat::zeros(rank_g, rank_e * dim_t)).expect("shapes agree")
    }

    /// Both frames are unitary.
    pub fn is_unitary(&self) -> bool {
        self.metric_e == CMat::identity(self.rank_e) && self.metric_g == CMat::identity(self.rank_g)
    }

    /// Column index of `e_α ⊗ ∂_i`.
    pub fn column(&self, alpha: usize, i: usize) -> usize {
        alpha * self.dim_t + i
    }

    /// `A(e ⊗ ξ) ∈ G`.
    pub fn apply(&self, e: &[Gaussian], xi: &[Gaussian]) -> Result<Vec<Gaussian>> {
        self.check_fiber(e)?;
        self.check_tangent(xi)?;
        Ok(self.a.mul_vec(&tensor(e, xi)))
    }

    /// The map `A_e = A(e ⊗ ·) : T → G` as a `rank G × dim T` matrix.
    pub fn contract(&self, e: &[Gaussian]) -> Result<CMat> {
        self.check_fiber(e)?;
        let mut m = CMat::zeros(self.rank_g, self.dim_t);
        for g in 0..self.rank_g {
            for i in 0..self.dim_t {
                let mut s = Gaussian::zero();
                for (alpha, c) in e.iter().enumerate() {
                    s = s.add(&c.mul(self.a.get(g, self.column(alpha, i))));
                }
                m.set(g, i, s);
            }
        }
        Ok(m)
    }

    /// The block `A_α = A(e_α ⊗ ·) : T → G`.
    pub fn block(&self, alpha: usize) -> CMat {
        let mut e = vec![Gaussian::zero(); self.rank_e];
        e[alpha] = Gaussian::one();
        self.contract(&e).expect("basis vector has the fiber rank")
    }

    /// `‖v‖²` in the metric of `E`.
    pub fn norm_sq_e(&self, e: &[Gaussian]) -> Rational {
        hermitian_norm_sq(&self.metric_e, e)
    }

    fn check_fiber(&self, e: &[Gaussian]) -> Result<()> {
        if e.len() != self.rank_e {
            return Err(Error::DimensionMismatch(format!("fiber vector must have {} entries", self.rank_e)));
        }
        Ok(())
    }

    fn check_tangent(&self, xi: &[Gaussian]) -> Result<()> {
        if xi.len() != self.dim_t {
            return Err(Error::DimensionMismatch(format!("tangent vector must have {} entries", self.dim_t)));
        }
        Ok(())
    }

    /// Parses `{"dimT", "rankE", "rankG", "A", "metricE"?, "metricG"?}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let what = "model";
        let dim_t = io::usize_field(v, "dimT", what)?;
        let rank_e = io::usize_field(v, "rankE", what)?;
        let rank_g = io::usize_field(v, "rankG", what)?;
        let a = if rank_g == 0 {
            CMat::zeros(0, rank_e * dim_t)
        } else {
            io::cmat_from_json(io::field(v, "A", what)?, "model.A")?
        };
        let metric_e = match v.get("metricE") {
            Some(m) => io::cmat_from_json(m, "model.metricE")?,
            None => CMat::identity(rank_e),
        };
        let metric_g = match v.get("metricG") {
            Some(m) => io::cmat_from_json(m, "model.metricG")?,
            None => CMat::identity(rank_g),
        };
        Self::with_metrics(dim_t, rank_e, rank_g, a, metric_e, metric_g).map_err(|e| match e {
            Error::DimensionMismatch(m) | Error::InvalidArgument(m) => Error::Schema(format!("{what}: {m}")),
            other => other,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dimT": self.dim_t,
            "rankE": self.rank_e,
            "rankG": self.rank_g,
            "A": io::cmat_to_json(&self.a),
            "metricE": io::cmat_to_json(&self.metric_e),
            "metricG": io::cmat_to_json(&self.metric_g),
        })
    }
}

/// `e ⊗ ξ` in the index order `α·dim T + i`.
pub fn tensor(e: &[Gaussian], xi: &[Gaussian]) -> Vec<Gaussian> {
    e.iter().flat_map(|a| xi.iter().map(move |b| a.mul(b))).collect()
}

/// `v* H v`, real for Hermitian `H`.
pub fn hermitian_norm_sq(h: &CMat, v: &[Gaussian]) -> Rational {
    hermitian_pairing(h, v, v).real_part()
}

/// `w* H v`.
pub fn hermitian_pairing(h: &CMat, v: &[Gaussian], w: &[Gaussian]) -> Gaussian {
    let hv = h.mul_vec(v);
    w.iter().zip(&hv).fold(Gaussian::zero(), |acc, (a, b)| acc.add(&a.conj().mul(b)))
}

/// The curvature of a model: the Hermitian Nakano matrix on `E ⊗ T`,
/// `Θ^α_{β̄ i j̄} = M[(β, j), (α, i)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor {
    pub rank_e: usize,
    pub dim_t: usize,
    /// `(rank E · dim T)`-square Hermitian matrix.
    pub nakano: CMat,
}

impl CurvatureTensor {
    pub fn new(rank_e: usize, dim_t: usize, nakano: CMat) -> Result<Self> {
        let n = rank_e * dim_t;
        if nakano.rows() != n || nakano.cols() != n {
            return Err(Error::DimensionMismatch(format!("the Nakano matrix must be {n}×{n}")));
        }
        if !nakano.is_hermitian() {
            return Err(Error::InvalidArgument("the curvature tensor must be Hermitian".into()));
        }
        Ok(CurvatureTensor { rank_e, dim_t, nakano })
    }

    /// `Θ^α_{β̄ i j̄}`.
    pub fn entry(&self, alpha: usize, beta: usize, i: usize, j: usize) -> Gaussian {
        self.nakano.get(beta * self.dim_t + j, alpha * self.dim_t + i).clone()
    }

    /// `Θ(u) = u* M u` for any `u ∈ E ⊗ T`.
    pub fn eval_tensor(&self, u: &[Gaussian]) -> Result<Rational> {
        if u.len() != self.rank_e * self.dim_t {
            return Err(Error::DimensionMismatch(format!("tensor must have {} entries", self.rank_e * self.dim_t)));
        }
        Ok(hermitian_norm_sq(&self.nakano, u))
    }

    /// `Θ(e, ξ)` on a decomposable tensor.
    pub fn eval(&self, e: &[Gaussian], xi: &[Gaussian]) -> Result<Rational> {
        if e.len() != self.rank_e || xi.len() != self.dim_t {
            return Err(Error::DimensionMismatch("fiber or tangent vector has the wrong length".into()));
        }
        self.eval_tensor(&tensor(e, xi))
    }

    /// `Θ(e, ·)` as a Hermitian form on `T`: entry `(i, j)` is
    /// `Σ ē_β e_α Θ^α_{β̄ j ī}`, so that `ξ* H ξ = Θ(e, ξ)`.
    pub fn form_at(&self, e: &[Gaussian]) -> Result<CMat> {
        if e.len() != self.rank_e {
            return Err(Error::DimensionMismatch(format!("fiber vector must have {} entries", self.rank_e)));
        }
        let t = self.dim_t;
        let mut h = CMat::zeros(t, t);
        for i in 0..t {
            for j in 0..t {
                let mut s = Gaussian::zero();
                for (b, eb) in e.iter().enumerate() {
                    for (a, ea) in e.iter().enumerate() {
                        s = s.add(&eb.conj().mul(ea).mul(self.nakano.get(b * t + i, a * t + j)));
                    }
                }
                h.set(i, j, s);
            }
        }
        Ok(h)
    }

    /// The trace form `τ_{ij} = Σ_α Θ^α_{ᾱ i j̄}` on `T` (the curvature of
    /// `det E`).
    pub fn trace_form(&self) -> CMat {
        let t = self.dim_t;
        let mut h = CMat::zeros(t, t);
        for i in 0..t {
            for j in 0..t {
                let s = (0..self.rank_e)
                    .fold(Gaussian::zero(), |acc, a| acc.add(self.nakano.get(a * t + i, a * t + j)));
                h.set(i, j, s);
            }
        }
        h
    }

    /// Exact inertia of the Nakano matrix.
    pub fn nakano_definiteness(&self) -> Definiteness {
        inertia(&self.nakano)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rankE": self.rank_e,
            "dimT": self.dim_t,
            "nakano": io::cmat_to_json(&self.nakano),
            "nakanoDefiniteness": self.nakano_definiteness().to_json(),
            "traceForm": io::cmat_to_json(&self.trace_form()),
        })
    }
}

/// The curvature `A* H_G A` of a model.
pub fn curvature_from_model(m: &NormPositivityModel) -> CurvatureTensor {
    let nakano = m.a.adjoint().mul(&m.metric_g).mul(&m.a);
    CurvatureTensor { rank_e: m.rank_e, dim_t: m.dim_t, nakano }
}

/// Exponent vectors of degree `k` in `r` variables, in decreasing
/// lexicographic order (`e_1^k` first): the monomial basis of `S^k E`.
pub fn sym_basis(r: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(r: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == r {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=k).rev() {
            prefix.push(a);
            rec(r, k - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(r, k, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, x| &acc * &Rational::from_int(x))
}

/// `a! = Π a_α!`, the squared norm of `e^a` induced from a unitary frame.
pub fn multi_factorial(a: &[u32]) -> Rational {
    a.iter().fold(Rational::one(), |acc, &x| &acc * &factorial(x))
}

/// Coordinates of `v_1 ··· v_k ∈ S^k E` in the monomial basis of
/// [`sym_basis`].
pub fn sym_product(r: usize, factors: &[Vec<Gaussian>]) -> Result<Vec<Gaussian>> {
    if factors.iter().any(|f| f.len() != r) {
        return Err(Error::DimensionMismatch(format!("every factor must have {r} entries")));
    }
    // Expand the product as a polynomial in the basis vectors.
    let mut acc: Vec<(Vec<u32>, Gaussian)> = vec![(vec![0; r], Gaussian::one())];
    for f in factors {
        let mut next: Vec<(Vec<u32>, Gaussian)> = Vec::new();
        for (e, c) in &acc {
            for (alpha, x) in f.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[alpha] += 1;
                let c2 = c.mul(x);
                match next.iter_mut().find(|(m, _)| *m == e2) {
                    Some(entry) => entry.1 = entry.1.add(&c2),
                    None => next.push((e2, c2)),
                }
            }
        }
        acc = next;
    }
    let basis = sym_basis(r, factors.len() as u32);
    Ok(basis
        .iter()
        .map(|b| acc.iter().find(|(m, _)| m == b).map_or_else(Gaussian::zero, |(_, c)| c.clone()))
        .collect())
}

/// The model of `S^k E`: `A_k(e^a ⊗ ξ) = Σ_α a_α e^{a−ε_α} ⊗ A(e_α ⊗ ξ)` in
/// `S^{k−1} E ⊗ G`, with the metrics `a!` on `S^k E` and `b! ⊗ H_G` on
/// `S^{k−1} E ⊗ G` induced from a unitary frame of `E`.
pub fn sym_power_model(m: &NormPositivityModel, k: u32) -> Result<NormPositivityModel> {
    if k == 0 {
        return Err(Error::InvalidArgument("the symmetric power must be at least 1".into()));
    }
    if k == 1 {
        return Ok(m.clone());
    }
    if m.metric_e != CMat::identity(m.rank_e) {
        return Err(Error::InvalidArgument("symmetric powers need a unitary frame of E".into()));
    }
    let r = m.rank_e;
    let t = m.dim_t;
    let src = sym_basis(r, k);
    let dst = sym_basis(r, k - 1);
    let g = m.rank_g;
    let mut a = CMat::zeros(dst.len() * g, src.len() * t);
    for (si, ea) in src.iter().enumerate() {
        for alpha in 0..r {
            if ea[alpha] == 0 {
                continue;
            }
            let mut b = ea.clone();
            b[alpha] -= 1;
            let bi = dst.iter().position(|x| *x == b).expect("lowered exponent lies in the basis");
            let mult = Gaussian::from_i64(ea[alpha] as i64);
            for i in 0..t {
                for gg in 0..g {
                    let v = mult.mul(m.a.get(gg, m.column(alpha, i)));
                    let row = bi * g + gg;
                    let col = si * t + i;
                    let cur = a.get(row, col).add(&v);
                    a.set(row, col, cur);
                }
            }
        }
    }
    let metric_e = CMat::diag(&src.iter().map(|e| Gaussian::real(multi_factorial(e))).collect::<Vec<_>>());
    let dst_metric = CMat::diag(&dst.iter().map(|e| Gaussian::real(multi_factorial(e))).collect::<Vec<_>>());
    let metric_g = dst_metric.kron(&m.metric_g);
    NormPositivityModel::with_metrics(t, src.len(), dst.len() * g, a, metric_e, metric_g)
}

/// A seeded model with small Gaussian-integer entries.
pub fn random_model(dim_t: usize, rank_e: usize, rank_g: usize, seed: u64) -> NormPositivityModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rank_g * rank_e * dim_t)
        .map(|_| Gaussian::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3)))
        .collect();
    NormPositivityModel::new(dim_t, rank_e, rank_g, CMat::new(rank_g, rank_e * dim_t, data)).expect("shapes agree")
}

/// A seeded vector with small Gaussian-integer entries.
pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Gaussian> {
    (0..n).map(|_| Gaussian::from_ints(rng.gen_range(-4..=4), rng.gen_range(-4..=4))).collect()
}

/// The Grassmannian `G(2,4)` model of the dual universal subbundle at a
/// point `Λ`: `T = Hom(Λ, C⁴/Λ)` with `ξ_{ab}` at index `2a + b`, rank-2
/// `E` and `G`, and `A(v ⊗ ξ) = ξ(v)`.
pub fn grassmannian_model() -> NormPositivityModel {
    let mut a = CMat::zeros(2, 8);
    for alpha in 0..2 {
        for b in 0..2 {
            let i = 2 * alpha + b;
            a.set(b, alpha * 4 + i, Gaussian::one());
        }
    }
    NormPositivityModel::new(4, 2, 2, a).expect("shapes agree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64) -> Gaussian {
        Gaussian::from_i64(re)
    }

    #[test]
    fn curvature_is_the_squared_norm() {
        let m = random_model(3, 2, 2, 7);
        let c = curvature_from_model(&m);
        assert!(c.nakano_definiteness().is_psd());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let e = random_vector(&mut rng, 2);
            let xi = random_vector(&mut rng, 3);
            let direct = hermitian_norm_sq(&m.metric_g, &m.apply(&e, &xi).unwrap());
            assert_eq!(c.eval(&e, &xi).unwrap(), direct);
            let h = c.form_at(&e).unwrap();
            assert_eq!(hermitian_norm_sq(&h, &xi), direct);
            // Non-decomposable tensors.
            let u = random_vector(&mut rng, 6);
            assert_eq!(c.eval_tensor(&u).unwrap(), hermitian_norm_sq(&m.metric_g, &m.a.mul_vec(&u)));
        }
    }

    #[test]
    fn grassmannian_curvature() {
        let m = grassmannian_model();
        let c = curvature_from_model(&m);
        let v = vec![g(1), g(0)];
        let elementary = vec![g(0), g(1), g(0), g(0)];
        assert_eq!(c.eval(&v, &elementary).unwrap(), Rational::one());
        let kills_v = vec![g(0), g(0), g(1), g(0)];
        assert!(c.eval(&v, &kills_v).unwrap().is_zero());
    }

    #[test]
    fn symmetric_power_sums_principal_values() {
        let m = NormPositivityModel::new(1, 2, 1, CMat::from_rows(vec![vec![g(1), g(0)]])).unwrap();
        let s2 = sym_power_model(&m, 2).unwrap();
        let e = sym_product(2, &[vec![g(1), g(0)], vec![g(0), g(1)]]).unwrap();
        assert_eq!(s2.norm_sq_e(&e), Rational::one());
        let c = curvature_from_model(&s2);
        assert_eq!(c.eval(&e, &[g(1)]).unwrap(), Rational::one());
        assert_eq!(sym_power_model(&m, 1).unwrap(), m);
        let z = sym_power_model(&NormPositivityModel::zero(2, 2, 2), 3).unwrap();
        assert!(z.a.is_zero());
    }

    #[test]
    fn symmetric_power_curvature_is_the_derivation_action() {
        // ‖A_k u‖² = ⟨D(θ) u, u⟩ with D the derivation extension of the
        // curvature endomorphism θ = A_ξ* A_ξ of E, checked on monomials.
        let m = random_model(2, 2, 2, 3);
        let s3 = sym_power_model(&m, 3).unwrap();
        let xi = vec![Gaussian::from_ints(1, 2), Gaussian::from_ints(-1, 1)];
        let theta = {
            let mut ax = CMat::zeros(2, 2);
            for gg in 0..2 {
                for alpha in 0..2 {
                    let v = m.apply(&[if alpha == 0 { g(1) } else { g(0) }, if alpha == 1 { g(1) } else { g(0) }], &xi)
                        .unwrap();
                    ax.set(gg, alpha, v[gg].clone());
                }
            }
            ax.adjoint().mul(&ax)
        };
        for a in sym_basis(2, 3) {
            let u: Vec<Gaussian> =
                sym_basis(2, 3).iter().map(|b| if *b == a { g(1) } else { g(0) }).collect();
            let lhs = hermitian_norm_sq(&s3.metric_g, &s3.contract(&u).unwrap().mul_vec(&xi));
            // ⟨D(θ) e^a, e^a⟩_{a!} = a! Σ_α a_α θ_{αα}.
            let diag: Rational = (0..2).fold(Rational::zero(), |acc, al| {
                &acc + &(&Rational::from_int(a[al] as i64) * &theta.get(al, al).real_part())
            });
            assert_eq!(lhs, &multi_factorial(&a) * &diag);
        }
    }

    #[test]
    fn monomial_basis_and_products() {
        assert_eq!(sym_basis(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(sym_basis(3, 1).len(), 3);
        let p = sym_product(2, &[vec![g(1), g(1)], vec![g(1), g(-1)]]).unwrap();
        assert_eq!(p, vec![g(1), g(0), g(-1)]);
    }
}
