//! Polarized limiting mixed Hodge structures of nilpotent orbits.
//!
//! The polarization convention: on the primitive piece
//! `P^{p,q} = I^{p,q} ∩ ker N^{a+1}` of weight `m = n + a` the Hermitian form
//!
//! ```text
//! h(u, v) = ε(p,q) · Q(N^a u, v̄),   ε = (−1)^a · (−1)^{m(m−1)/2} · i^{q−p}
//! ```
//!
//! is positive definite. After untwisting by `(−a)` this is exactly the
//! pure Hodge–Riemann sign `(−1)^{w(w−1)/2} i^{q−p}` for the weight
//! `w = n − a` structure `Q_a(u, v) = Q(N^a u, v)`, so the associated graded
//! pieces are again polarized in the same convention.

use serde_json::{json, Value};

use crate::algebra::field::{Field, Ring};
use crate::algebra::gaussian::Gaussian;
use crate::algebra::ldl;
use crate::algebra::mat::{bilinear, vec_to_gaussian, CMat, Mat, QMat};
use crate::algebra::quotient::Subquotient;
use crate::algebra::rational::Rational;
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};

use super::bigrading::{deligne_bigrading, DeligneBigrading};
use super::spec::{HodgeFiltration, PolarizedOrbitSpec};
use super::weight::{weight_filtration, WeightFiltration};

/// `ε(p,q)` for a primitive piece of weight `n + a`.
pub fn polarization_sign(n: i64, a: i64, p: i64, q: i64) -> Gaussian {
    let m = n + a;
    let s = if (a + m * (m - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Gaussian::i_pow(q - p).mul(&Gaussian::from_ints(s, 0))
}

/// Positivity check of one primitive piece.
#[derive(Clone, Debug, PartialEq)]
pub struct PieceCheck {
    pub a: i64,
    pub p: i64,
    pub q: i64,
    pub dim: usize,
    pub positive_definite: bool,
}

/// Outcome of the polarized-LMHS validation.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizationReport {
    /// `F^0 = V`.
    pub f0_is_v: bool,
    /// `N_i F^p ⊆ F^{p−1}` for every `i` and `p`.
    pub griffiths_transversal: bool,
    /// `W(ΣN_i)` has weights in `[0, 2n]`.
    pub effective_weights: bool,
    /// The Deligne pieces form a direct sum decomposition.
    pub mixed_hodge_structure: bool,
    /// `Ī^{p,q} = I^{q,p}`.
    pub r_split: bool,
    /// `Q_a` nondegenerate on each primitive weight.
    pub nondegenerate: bool,
    /// Distinct primitive pieces of the same weight are `h`-orthogonal.
    pub orthogonal: bool,
    /// Positive definiteness per primitive piece.
    pub pieces: Vec<PieceCheck>,
    /// Diagnostic for the first failed condition.
    pub failure: Option<String>,
}

impl PolarizationReport {
    pub fn positive(&self) -> bool {
        self.pieces.iter().all(|p| p.positive_definite)
    }

    pub fn passed(&self) -> bool {
        self.f0_is_v
            && self.griffiths_transversal
            && self.effective_weights
            && self.mixed_hodge_structure
            && self.r_split
            && self.nondegenerate
            && self.orthogonal
            && self.positive()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "F0IsV": self.f0_is_v,
            "griffithsTransversal": self.griffiths_transversal,
            "effectiveWeights": self.effective_weights,
            "mixedHodgeStructure": self.mixed_hodge_structure,
            "rSplit": self.r_split,
            "nondegenerate": self.nondegenerate,
            "orthogonal": self.orthogonal,
            "positivity": self.pieces.iter().map(|c| json!({
                "a": c.a, "p": c.p, "q": c.q, "dim": c.dim, "positiveDefinite": c.positive_definite
            })).collect::<Vec<_>>(),
            "failure": self.failure,
            "pass": self.passed(),
        })
    }
}

fn gaussian_mat(m: &QMat) -> CMat {
    m.to_gaussian()
}

/// The weight filtration of `Σ N_i` (Hodge-indexed, center `n`).
pub fn total_weight_filtration(spec: &PolarizedOrbitSpec) -> WeightFiltration<Rational> {
    weight_filtration(&spec.total_nilpotent(), spec.weight).expect("nilpotents were validated")
}

/// The Hermitian Gram matrix `ε Q(N^a u_r, ū_s)` on the given vectors.
pub fn polarization_gram(q: &CMat, na: &CMat, eps: &Gaussian, vs: &[Vec<Gaussian>]) -> CMat {
    let k = vs.len();
    let mut g = CMat::zeros(k, k);
    for r in 0..k {
        let u = na.mul_vec(&vs[r]);
        for s in 0..k {
            let vbar: Vec<Gaussian> = vs[s].iter().map(|x| x.conj()).collect();
            g.set(r, s, eps.mul(&bilinear(q, &u, &vbar)));
        }
    }
    g
}

/// Checks that the orbit data is a polarized, `R`-split, effective LMHS.
/// Failures are reported, not raised.
pub fn verify_polarized_lmhs(spec: &PolarizedOrbitSpec) -> PolarizationReport {
    let n = spec.weight;
    let mut rep = PolarizationReport {
        f0_is_v: spec.f.stored_f0().is_full(),
        griffiths_transversal: true,
        effective_weights: false,
        mixed_hodge_structure: false,
        r_split: false,
        nondegenerate: false,
        orthogonal: false,
        pieces: Vec::new(),
        failure: None,
    };
    if !rep.f0_is_v {
        rep.failure = Some("F^0 must be all of V".into());
    }
    'outer: for (i, ni) in spec.nilpotents.iter().enumerate() {
        let g = gaussian_mat(ni);
        for p in 1..=n {
            if !spec.f.get(p - 1).contains_subspace(&spec.f.get(p).image(&g)) {
                rep.griffiths_transversal = false;
                rep.failure.get_or_insert(format!("N{} does not map F^{p} into F^{}", i + 1, p - 1));
                break 'outer;
            }
        }
    }
    let w = total_weight_filtration(spec);
    rep.effective_weights = match w.support() {
        None => true,
        Some((lo, hi)) => lo >= 0 && hi <= 2 * n,
    };
    if !rep.effective_weights {
        rep.failure.get_or_insert("weights of W(N) fall outside [0, 2n]".into());
        return rep;
    }
    let bg = match deligne_bigrading(&w, &spec.f) {
        Ok(b) => b,
        Err(e) => {
            rep.failure.get_or_insert(e.to_string());
            return rep;
        }
    };
    rep.mixed_hodge_structure = true;
    rep.r_split = bg.is_r_split();
    if !rep.r_split {
        rep.failure.get_or_insert("the limiting mixed Hodge structure is not R-split".into());
    }
    let (pieces, nondeg, orth) = polarization_pieces(spec, &bg);
    rep.pieces = pieces;
    rep.nondegenerate = nondeg;
    rep.orthogonal = orth;
    if !nondeg {
        rep.failure.get_or_insert("Q_a is degenerate on a primitive space".into());
    }
    if !orth {
        rep.failure.get_or_insert("distinct primitive pieces are not orthogonal".into());
    }
    if let Some(c) = rep.pieces.iter().find(|c| !c.positive_definite) {
        rep.failure.get_or_insert(format!("polarization is not positive on the primitive ({},{}) piece", c.p, c.q));
    }
    rep
}

fn polarization_pieces(spec: &PolarizedOrbitSpec, bg: &DeligneBigrading) -> (Vec<PieceCheck>, bool, bool) {
    let n = spec.weight;
    let q = gaussian_mat(&spec.q);
    let ntot = gaussian_mat(&spec.total_nilpotent());
    let mut checks = Vec::new();
    let mut nondeg = true;
    let mut orth = true;
    for a in 0..=n {
        let na = ntot.pow(a as u32);
        let kernel = Subspace::kernel_of(&ntot.pow(a as u32 + 1));
        let mut weight_vectors: Vec<Vec<Gaussian>> = Vec::new();
        let mut blocks: Vec<(i64, i64, Vec<Vec<Gaussian>>)> = Vec::new();
        for p in 0..=n + a {
            let qq = n + a - p;
            let prim = bg.piece(p, qq).intersect(&kernel);
            if prim.is_zero() {
                continue;
            }
            let vs = prim.basis().to_vec();
            let eps = polarization_sign(n, a, p, qq);
            let g = polarization_gram(&q, &na, &eps, &vs);
            let pd = g.is_hermitian() && ldl::is_pd(&g);
            checks.push(PieceCheck { a, p, q: qq, dim: vs.len(), positive_definite: pd });
            weight_vectors.extend(vs.iter().cloned());
            blocks.push((p, qq, vs));
        }
        // First bilinear relation: Q(N^a u, v̄) = 0 between distinct pieces.
        for (i, (_, _, u)) in blocks.iter().enumerate() {
            for (j, (_, _, v)) in blocks.iter().enumerate() {
                if i == j {
                    continue;
                }
                for x in u {
                    let nx = na.mul_vec(x);
                    for y in v {
                        let ybar: Vec<Gaussian> = y.iter().map(|t| t.conj()).collect();
                        if !bilinear(&q, &nx, &ybar).is_zero() {
                            orth = false;
                        }
                    }
                }
            }
        }
        if !weight_vectors.is_empty() {
            let k = weight_vectors.len();
            let mut g = CMat::zeros(k, k);
            for r in 0..k {
                let u = na.mul_vec(&weight_vectors[r]);
                for s in 0..k {
                    g.set(r, s, bilinear(&q, &u, &weight_vectors[s]));
                }
            }
            if g.det().is_zero() {
                nondeg = false;
            }
        }
    }
    (checks, nondeg, orth)
}

/// `exp(M)` of a nilpotent matrix.
pub fn exp_nilpotent<F: Field>(m: &Mat<F>) -> Mat<F> {
    let d = m.rows();
    let mut out = Mat::identity(d);
    let mut term = Mat::identity(d);
    for k in 1..=d {
        term = term.mul(m).scale(&F::from_rational(&Rational::new(1, k as i64)));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    out
}

/// The limiting mixed Hodge structure along the stratum `I`:
/// `(W(N_I), exp(i Σ_{j∉I} N_j) F)` and its Deligne bigrading.
pub fn stratum_lmhs(
    spec: &PolarizedOrbitSpec,
    stratum: &[usize],
) -> Result<(WeightFiltration<Rational>, HodgeFiltration, DeligneBigrading)> {
    let ni = spec.sum_over(stratum);
    let ic: Vec<usize> = (0..spec.k()).filter(|j| !stratum.contains(j)).collect();
    let nic = spec.sum_over(&ic).to_gaussian().scale(&Gaussian::i());
    let g = exp_nilpotent(&nic);
    let f = spec.f.transform(&g);
    let w = weight_filtration(&ni, spec.weight)?;
    let bg = deligne_bigrading(&w, &f)?;
    Ok((w, f, bg))
}

/// One primitive piece of the associated graded orbit along a stratum.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedPiece {
    /// The `N_I`-string length index: the piece is `Gr_{n+a}` primitive.
    pub a: i64,
    /// Lifts in `V` of the basis used for the piece.
    pub lifts: Vec<Vec<Rational>>,
    /// Original indices of the surviving nilpotents (the complement of `I`).
    pub indices: Vec<usize>,
    /// The polarized orbit `(H^{n−a}, Q_a, N̄_j, F′)` of weight `n − a`.
    pub spec: PolarizedOrbitSpec,
}

impl GradedPiece {
    /// `h^{w,0}` of the piece, `w = n − a` its weight.
    pub fn top_hodge_number(&self) -> usize {
        self.spec.f.get(self.spec.weight).dim()
    }
}

/// Passes to the primitive parts of the graded pieces of `W(N_I)`, with the
/// induced forms, filtrations and nilpotents `N̄_j` (`j ∉ I`).
pub fn associated_graded_orbit(spec: &PolarizedOrbitSpec, stratum: &[usize]) -> Result<Vec<GradedPiece>> {
    let n = spec.weight;
    let d = spec.dim;
    let ni = spec.sum_over(stratum);
    let ic: Vec<usize> = (0..spec.k()).filter(|j| !stratum.contains(j)).collect();
    let w = weight_filtration(&ni, n)?;
    if let Some((lo, hi)) = w.support() {
        if lo < 0 || hi > 2 * n {
            return Err(Error::NotEffective(format!("weights of W(N_I) span [{lo}, {hi}]")));
        }
    }
    let mut out = Vec::new();
    for a in (0..=n).rev() {
        let gr = w.graded(n + a);
        if gr.dim() == 0 {
            continue;
        }
        let na1 = ni.pow(a as u32 + 1);
        let prim_amb = w.get(n - a - 3).preimage(&na1).intersect(&w.get(n + a));
        let prim = gr.image_of(&prim_amb);
        if prim.is_zero() {
            continue;
        }
        let b = prim.basis().to_vec();
        let m = b.len();
        let lifts: Vec<Vec<Rational>> = b.iter().map(|c| gr.lift(c)).collect();
        let na = ni.pow(a as u32);
        let mut qa = QMat::zeros(m, m);
        for r in 0..m {
            let u = na.mul_vec(&lifts[r]);
            for s in 0..m {
                qa.set(r, s, bilinear(&spec.q, &u, &lifts[s]));
            }
        }
        let bm = Mat::from_columns(gr.dim(), &b);
        let to_prim = |c: &[Rational]| bm.solve(c).expect("vector lies in the primitive part");
        let nbars: Vec<QMat> = ic
            .iter()
            .map(|&j| {
                let ind = gr.induced_endo(&spec.nilpotents[j]);
                let cols: Vec<Vec<Rational>> = b.iter().map(|c| to_prim(&ind.mul_vec(c))).collect();
                Mat::from_columns(m, &cols)
            })
            .collect();
        // Complexified graded piece with the same complement.
        let top_c = w.get(n + a).map_field(|x| Gaussian::real(x.clone()));
        let bot_c = w.get(n + a - 1).map_field(|x| Gaussian::real(x.clone()));
        let comp_c: Vec<Vec<Gaussian>> = gr.complement().iter().map(|v| vec_to_gaussian(v)).collect();
        let gr_c = Subquotient::with_complement(&top_c, &bot_c, comp_c);
        let prim_c = prim.map_field(|x| Gaussian::real(x.clone()));
        let bm_c = bm.to_gaussian();
        let mut pieces = Vec::new();
        for p in 0..=(n - a) {
            let img = gr_c.image_of(&spec.f.get(p + a)).intersect(&prim_c);
            let vs: Vec<Vec<Gaussian>> =
                img.basis().iter().map(|c| bm_c.solve(c).expect("vector lies in the primitive part")).collect();
            pieces.push(Subspace::span(m, &vs));
        }
        let f = HodgeFiltration::new(n - a, pieces)?;
        let piece_spec = PolarizedOrbitSpec::new(m, n - a, qa, nbars, f)?;
        out.push(GradedPiece { a, lifts, indices: ic.clone(), spec: piece_spec });
    }
    debug_assert!(out.iter().all(|p| p.lifts.iter().all(|v| v.len() == d)));
    Ok(out)
}

/// `h^{n−a,0}_I` for every `a` (zero where the piece is absent).
pub fn stratum_hodge_numbers(spec: &PolarizedOrbitSpec, stratum: &[usize]) -> Result<Vec<usize>> {
    let mut h = vec![0; spec.weight as usize + 1];
    for p in associated_graded_orbit(spec, stratum)? {
        h[p.a as usize] = p.top_hodge_number();
    }
    Ok(h)
}
