//! Several-parameter nilpotent orbit data `(V, Q, N₁..N_k, F, n)`.

use serde_json::{json, Value};

use crate::algebra::gaussian::Gaussian;
use crate::algebra::mat::{CMat, QMat};
use crate::algebra::subspace::Subspace;
use crate::error::{Error, Result};
use crate::io;

/// A decreasing filtration `F^n ⊆ … ⊆ F^0 = V_C`, stored with index `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct HodgeFiltration {
    weight: i64,
    /// `pieces[p] = F^p` for `p = 0..=weight`.
    pieces: Vec<Subspace<Gaussian>>,
}

impl HodgeFiltration {
    /// Builds a filtration from `F^p` for `p = 0..=weight`, checking that
    /// it decreases; `F^0` need not be all of `V` (validation reports it).
    pub fn new(weight: i64, pieces: Vec<Subspace<Gaussian>>) -> Result<Self> {
        if weight < 0 || pieces.len() != weight as usize + 1 {
            return Err(Error::Schema(format!("F must list {} subspaces, one per F^p", weight + 1)));
        }
        for p in 1..pieces.len() {
            if !pieces[p - 1].contains_subspace(&pieces[p]) {
                return Err(Error::Schema(format!("F^{p} must lie inside F^{}", p - 1)));
            }
        }
        Ok(HodgeFiltration { weight, pieces })
    }

    /// A pure filtration read off from a decomposition `V = ⊕ V^{p,n−p}`.
    pub fn from_hodge_decomposition(weight: i64, parts: &[(i64, Subspace<Gaussian>)]) -> Result<Self> {
        let dim = parts.first().map_or(0, |(_, s)| s.ambient());
        let pieces = (0..=weight)
            .map(|p| {
                parts
                    .iter()
                    .filter(|(q, _)| *q >= p)
                    .fold(Subspace::zero(dim), |acc, (_, s)| acc.sum(s))
            })
            .collect();
        Self::new(weight, pieces)
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn ambient(&self) -> usize {
        self.pieces[0].ambient()
    }

    /// `F^p` for any integer `p` (all of `V` below 0, zero above the weight).
    pub fn get(&self, p: i64) -> Subspace<Gaussian> {
        if p <= 0 {
            Subspace::full(self.ambient())
        } else if p > self.weight {
            Subspace::zero(self.ambient())
        } else {
            self.pieces[p as usize].clone()
        }
    }

    /// The stored `F^0` (which a valid filtration has equal to `V`).
    pub fn stored_f0(&self) -> &Subspace<Gaussian> {
        &self.pieces[0]
    }

    /// Applies an invertible linear map to every step.
    pub fn transform(&self, g: &CMat) -> Self {
        HodgeFiltration { weight: self.weight, pieces: self.pieces.iter().map(|s| s.image(g)).collect() }
    }

    /// Hodge numbers `dim F^p / F^{p+1}`, for `p = 0..=weight`.
    pub fn graded_dims(&self) -> Vec<usize> {
        (0..=self.weight).map(|p| self.get(p).dim() - self.get(p + 1).dim()).collect()
    }
}

/// A polarized several-parameter nilpotent orbit.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarizedOrbitSpec {
    pub dim: usize,
    pub weight: i64,
    pub q: QMat,
    pub nilpotents: Vec<QMat>,
    pub f: HodgeFiltration,
}

impl PolarizedOrbitSpec {
    /// Validates the structural invariants: shapes, `(−1)^n`-symmetry and
    /// nondegeneracy of `Q`, nilpotency, infinitesimal `Q`-skewness and
    /// pairwise commutation of the `N_i`. Hodge-theoretic conditions are
    /// checked separately by the polarization report.
    pub fn new(dim: usize, weight: i64, q: QMat, nilpotents: Vec<QMat>, f: HodgeFiltration) -> Result<Self> {
        if q.rows() != dim || q.cols() != dim {
            return Err(Error::Schema(format!("Q must be {dim}×{dim}")));
        }
        let sign = if weight % 2 == 0 { q.clone() } else { q.neg() };
        if q.transpose() != sign {
            return Err(Error::Schema("Q must be (-1)^weight-symmetric".into()));
        }
        if q.det().is_zero() {
            return Err(Error::Schema("Q must be nondegenerate".into()));
        }
        for (i, n) in nilpotents.iter().enumerate() {
            if n.rows() != dim || n.cols() != dim {
                return Err(Error::Schema(format!("nilpotent {} must be {dim}×{dim}", i + 1)));
            }
            if !n.is_nilpotent() {
                return Err(Error::Schema(format!("nilpotent {} is not nilpotent", i + 1)));
            }
            if !n.transpose().mul(&q).add(&q.mul(n)).is_zero() {
                return Err(Error::Schema(format!("nilpotent {} must satisfy Q(Nu,v) + Q(u,Nv) = 0", i + 1)));
            }
        }
        for i in 0..nilpotents.len() {
            for j in i + 1..nilpotents.len() {
                if !nilpotents[i].commutator(&nilpotents[j]).is_zero() {
                    return Err(Error::Schema("nilpotents must commute".into()));
                }
            }
        }
        if f.ambient() != dim || f.weight() != weight {
            return Err(Error::Schema("F must be a filtration of V of the stated weight".into()));
        }
        Ok(PolarizedOrbitSpec { dim, weight, q, nilpotents, f })
    }

    /// Number of nilpotents `k`.
    pub fn k(&self) -> usize {
        self.nilpotents.len()
    }

    /// `Σ_{i∈I} N_i` (zero for the empty set).
    pub fn sum_over(&self, indices: &[usize]) -> QMat {
        indices.iter().fold(QMat::zeros(self.dim, self.dim), |acc, &i| acc.add(&self.nilpotents[i]))
    }

    /// `Σ_i N_i`.
    pub fn total_nilpotent(&self) -> QMat {
        let all: Vec<usize> = (0..self.k()).collect();
        self.sum_over(&all)
    }

    /// `Σ_i c_i N_i`.
    pub fn combination(&self, coeffs: &[crate::algebra::rational::Rational]) -> QMat {
        self.nilpotents
            .iter()
            .zip(coeffs)
            .fold(QMat::zeros(self.dim, self.dim), |acc, (n, c)| acc.add(&n.scale(c)))
    }

    /// Parses the JSON schema
    /// `{"dim", "weight", "Q", "nilpotents", "F": [F^n basis, …, F^0 basis]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let what = "orbit";
        let dim = io::usize_field(v, "dim", what)?;
        let weight = io::field(v, "weight", what)?
            .as_i64()
            .filter(|w| *w >= 0)
            .ok_or_else(|| Error::Schema("orbit: \"weight\" must be a non-negative integer".into()))?;
        let q = io::qmat_from_json(io::field(v, "Q", what)?, "Q")?;
        let nil_json = io::field(v, "nilpotents", what)?
            .as_array()
            .ok_or_else(|| Error::Schema("orbit: \"nilpotents\" must be an array of matrices".into()))?;
        let nilpotents = nil_json
            .iter()
            .enumerate()
            .map(|(i, m)| io::qmat_from_json(m, &format!("nilpotents[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let f_json = io::field(v, "F", what)?
            .as_array()
            .ok_or_else(|| Error::Schema("orbit: \"F\" must be an array of bases".into()))?;
        if f_json.len() != weight as usize + 1 {
            return Err(Error::Schema(format!("orbit: \"F\" must list {} bases (F^n down to F^0)", weight + 1)));
        }
        let mut pieces = Vec::new();
        for (idx, b) in f_json.iter().enumerate() {
            let p = weight as usize - idx;
            let vs = io::cvecs_from_json(b, &format!("F^{p}"))?;
            pieces.push(Subspace::try_span(dim, &vs).map_err(|_| Error::Schema(format!("F^{p}: vectors must have length {dim}")))?);
        }
        pieces.reverse();
        let f = HodgeFiltration::new(weight, pieces)?;
        Self::new(dim, weight, q, nilpotents, f)
    }

    /// The JSON encoding read by [`PolarizedOrbitSpec::from_json`], with
    /// canonical (echelon) bases for the filtration.
    pub fn to_json(&self) -> Value {
        let f: Vec<Value> = (0..=self.weight)
            .rev()
            .map(|p| Value::Array(self.f.get(p).basis().iter().map(|v| io::cvec_to_json(v)).collect()))
            .collect();
        json!({
            "dim": self.dim,
            "weight": self.weight,
            "Q": io::qmat_to_json(&self.q),
            "nilpotents": self.nilpotents.iter().map(io::qmat_to_json).collect::<Vec<_>>(),
            "F": f,
        })
    }

    /// The same orbit with the nilpotents permuted: new `N_i` = old `N_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut s = self.clone();
        s.nilpotents = perm.iter().map(|&i| self.nilpotents[i].clone()).collect();
        s
    }
}
