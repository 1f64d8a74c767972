//! Python bindings.
//!
//! Exact scalars cross the boundary as strings (`"3/4"`, `"1-2i"`), stratum
//! indices are 1-based as on the command line, and structured results are
//! returned as plain Python dictionaries and lists.

use pyo3::exceptions::{PyLookupError, PyValueError};
use pyo3::prelude::*;
use serde_json::Value;

use hodgecalc_core::algebra::{CMat, Gaussian, QMat, Rational};
use hodgecalc_core::document::{DocumentKind, ProblemDocument};
use hodgecalc_core::hodge::{stratum_lmhs, verify_polarized_lmhs, PolarizedOrbitSpec};
use hodgecalc_core::horizontal::{graded_end_algebra, kernel_dimension, xi_from_top_block, PolarizedHS};
use hodgecalc_core::monomial::map::MonomialMap;
use hodgecalc_core::monomial::{compatibility_check, connected_refinement, monomial_map, stratum_monomial_map};
use hodgecalc_core::orbit::{
    chern_form_at, decade_scales, default_rays, hodge_metric_matrix, hodge_metric_polynomial,
    restriction_limit_check,
};
use hodgecalc_core::positivity::{
    grassmannian_model, multiplier_ideal_monomials, projectivized_chern_form, projectivized_chern_form_at_line,
    random_model, schur_polynomial, segre_polynomial, sym_power_model, NormPositivityModel,
};
use hodgecalc_core::{fixtures, Error};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn rationals(v: &[String]) -> PyResult<Vec<Rational>> {
    v.iter().map(|s| s.parse::<Rational>().map_err(py_err)).collect()
}

fn gaussians(v: &[String]) -> PyResult<Vec<Gaussian>> {
    v.iter().map(|s| s.parse::<Gaussian>().map_err(py_err)).collect()
}

fn gaussian_matrix(rows: &[Vec<String>]) -> PyResult<CMat> {
    let rows = rows.iter().map(|r| gaussians(r)).collect::<PyResult<Vec<_>>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("matrix rows must all have the same length"));
    }
    Ok(CMat::new(rows.len(), cols, rows.into_iter().flatten().collect()))
}

fn strings(m: &QMat) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

/// 1-based indices to 0-based, validated against `k`.
fn stratum(indices: &[usize], k: usize) -> PyResult<Vec<usize>> {
    let mut out = Vec::with_capacity(indices.len());
    for &i in indices {
        if i == 0 || i > k {
            return Err(PyValueError::new_err(format!("stratum index {i} is outside 1..={k}")));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Reads either a full problem document or a bare payload of the given kind.
fn payload(text: &str, kind: DocumentKind) -> PyResult<Value> {
    let v: Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(format!("invalid JSON: {e}")))?;
    if v.get("kind").is_none() {
        return Ok(v);
    }
    let doc = ProblemDocument::from_json(&v).map_err(py_err)?;
    if doc.kind != kind {
        return Err(PyValueError::new_err(format!("expected a {kind} document, got {}", doc.kind)));
    }
    Ok(doc.payload)
}

/// A nilpotent orbit `(N_1, …, N_k; F)` with polarization `Q`.
#[pyclass(name = "OrbitSpec", module = "hodgecalc")]
struct PyOrbitSpec {
    inner: PolarizedOrbitSpec,
}

#[pymethods]
impl PyOrbitSpec {
    /// Parses an orbit problem document or its bare payload.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v = payload(text, DocumentKind::Orbit)?;
        Ok(PyOrbitSpec { inner: PolarizedOrbitSpec::from_json(&v).map_err(py_err)? })
    }

    /// A bundled orbit fixture, e.g. `"dollar-bill"`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let doc = fixtures::document(name).ok_or_else(|| PyLookupError::new_err(format!("no fixture {name:?}")))?;
        Ok(PyOrbitSpec { inner: doc.orbit().map_err(py_err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    #[getter]
    fn weight(&self) -> i64 {
        self.inner.weight
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    /// The polarized-LMHS report.
    fn validate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &verify_polarized_lmhs(&self.inner).to_json())
    }

    /// The monic Hodge-metric polynomial, e.g. `"x1*x2 + x1*x3 + x2*x3"`.
    fn metric_polynomial(&self) -> PyResult<String> {
        Ok(hodge_metric_polynomial(&self.inner).map_err(py_err)?.render())
    }

    /// The Hodge-metric matrix with rendered polynomial entries.
    fn metric_matrix(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(hodge_metric_matrix(&self.inner).map_err(py_err)?.render())
    }

    /// `−∂_i∂_j log P` at a positive rational point.
    fn chern_form(&self, x: Vec<String>) -> PyResult<Vec<Vec<String>>> {
        let p = hodge_metric_polynomial(&self.inner).map_err(py_err)?;
        Ok(strings(&chern_form_at(&p.p, &rationals(&x)?).map_err(py_err)?.g))
    }

    /// The restriction-limit check along `stratum` on scales `10^lo..10^hi`.
    #[pyo3(signature = (stratum, rays = 5, lo = 1, hi = 8, seed = 0))]
    fn limit_check(
        &self,
        py: Python<'_>,
        stratum: Vec<usize>,
        rays: usize,
        lo: i32,
        hi: i32,
        seed: u64,
    ) -> PyResult<Py<PyAny>> {
        let s = self::stratum(&stratum, self.inner.k())?;
        let rays = default_rays(self.inner.k(), &s, rays, seed);
        let r = restriction_limit_check(&self.inner, &s, &rays, &decade_scales(lo, hi)).map_err(py_err)?;
        to_py(py, &r.to_json())
    }

    /// Exponent rows of the orbit's monomial map.
    fn monomial_map(&self) -> PyResult<Vec<Vec<i64>>> {
        Ok(monomial_map(&self.inner).map_err(py_err)?.exponents)
    }

    /// The monomial map of a stratum.
    fn stratum_map(&self, py: Python<'_>, stratum: Vec<usize>) -> PyResult<Py<PyAny>> {
        let s = self::stratum(&stratum, self.inner.k())?;
        to_py(py, &stratum_monomial_map(&self.inner, &s).map_err(py_err)?.to_json())
    }

    /// Whether the stratum relations of `stratum ⊊ superset` are compatible.
    fn compatible(&self, stratum: Vec<usize>, superset: Vec<usize>) -> PyResult<bool> {
        let i = self::stratum(&stratum, self.inner.k())?;
        let j = self::stratum(&superset, self.inner.k())?;
        Ok(compatibility_check(&self.inner, &i, &j).map_err(py_err)?.pass)
    }

    /// Hodge numbers `{"p,q": dim I^{p,q}}` of the limit along `stratum`
    /// (all nilpotents by default).
    #[pyo3(signature = (stratum = None))]
    fn bigrading(&self, stratum: Option<Vec<usize>>) -> PyResult<std::collections::BTreeMap<String, usize>> {
        let s = match stratum {
            Some(s) => self::stratum(&s, self.inner.k())?,
            None => (0..self.inner.k()).collect(),
        };
        let (_, _, bg) = stratum_lmhs(&self.inner, &s).map_err(py_err)?;
        Ok(bg.pieces.iter().map(|((p, q), v)| (format!("{p},{q}"), v.dim())).collect())
    }

    fn __repr__(&self) -> String {
        format!("OrbitSpec(dim={}, weight={}, k={})", self.inner.dim, self.inner.weight, self.inner.k())
    }
}

/// A polarized Hodge structure with its graded endomorphism algebra.
#[pyclass(name = "HodgeStructure", module = "hodgecalc")]
struct PyHodgeStructure {
    inner: PolarizedHS,
}

#[pymethods]
impl PyHodgeStructure {
    /// The standard weight-one structure of genus `g`.
    #[staticmethod]
    fn weight_one(g: usize) -> Self {
        PyHodgeStructure { inner: PolarizedHS::weight_one_standard(g) }
    }

    /// The standard weight-two structure with the given Hodge numbers.
    #[staticmethod]
    fn weight_two(h20: usize, h11: usize) -> Self {
        PyHodgeStructure { inner: PolarizedHS::weight_two_standard(h20, h11) }
    }

    /// Parses a phs problem document or its bare payload.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v = payload(text, DocumentKind::Phs)?;
        Ok(PyHodgeStructure { inner: PolarizedHS::from_json(&v).map_err(py_err)? })
    }

    #[getter]
    fn hodge_numbers(&self) -> Vec<usize> {
        self.inner.hodge_numbers()
    }

    /// `{p: dim g^p}` for the graded endomorphism algebra.
    fn algebra_dims(&self) -> PyResult<std::collections::BTreeMap<i64, usize>> {
        Ok(graded_end_algebra(&self.inner).map_err(py_err)?.dims().into_iter().collect())
    }

    /// Kernel dimension of `ad ξ` on `g^{-1}`, for the horizontal `ξ` with
    /// the given top block (rows `V^{n−1,1}`, columns `V^{n,0}`).
    fn kernel_dimension(&self, block: Vec<Vec<String>>) -> PyResult<usize> {
        let ge = graded_end_algebra(&self.inner).map_err(py_err)?;
        let xi = xi_from_top_block(&ge, &gaussian_matrix(&block)?).map_err(py_err)?;
        kernel_dimension(&ge, &xi).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("HodgeStructure(weight={}, hodge_numbers={:?})", self.inner.weight, self.inner.hodge_numbers())
    }
}

/// A norm-positivity model `A: E ⊗ T → G`.
#[pyclass(name = "PositivityModel", module = "hodgecalc")]
struct PyPositivityModel {
    inner: NormPositivityModel,
}

#[pymethods]
impl PyPositivityModel {
    /// The Grassmannian `G(2,4)` model.
    #[staticmethod]
    fn grassmannian() -> Self {
        PyPositivityModel { inner: grassmannian_model() }
    }

    /// A seeded model with small Gaussian-integer entries.
    #[staticmethod]
    #[pyo3(signature = (dim_t, rank_e, rank_g, seed = 0))]
    fn random(dim_t: usize, rank_e: usize, rank_g: usize, seed: u64) -> Self {
        PyPositivityModel { inner: random_model(dim_t, rank_e, rank_g, seed) }
    }

    /// Parses a model problem document or its bare payload.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v = payload(text, DocumentKind::Model)?;
        Ok(PyPositivityModel { inner: NormPositivityModel::from_json(&v).map_err(py_err)? })
    }

    #[getter]
    fn dim_t(&self) -> usize {
        self.inner.dim_t
    }

    #[getter]
    fn rank_e(&self) -> usize {
        self.inner.rank_e
    }

    #[getter]
    fn rank_g(&self) -> usize {
        self.inner.rank_g
    }

    /// The induced model on the `k`-th symmetric power of `E`.
    fn sym_power(&self, k: u32) -> PyResult<Self> {
        Ok(PyPositivityModel { inner: sym_power_model(&self.inner, k).map_err(py_err)? })
    }

    /// The Chern form of `O(1)` on `P(E)` at `point`; with `at_line` the
    /// form is evaluated along the line through the point.
    #[pyo3(signature = (point, at_line = false))]
    fn projectivized_form(&self, py: Python<'_>, point: Vec<String>, at_line: bool) -> PyResult<Py<PyAny>> {
        let e = gaussians(&point)?;
        let f = if at_line {
            projectivized_chern_form_at_line(&self.inner, &e)
        } else {
            projectivized_chern_form(&self.inner, &e)
        }
        .map_err(py_err)?;
        to_py(py, &f.to_json())
    }

    fn __repr__(&self) -> String {
        format!("PositivityModel(dim_t={}, rank_e={}, rank_g={})", self.inner.dim_t, self.inner.rank_e, self.inner.rank_g)
    }
}

/// The degree-`degree` Segre polynomial in the Chern classes.
#[pyfunction]
#[pyo3(signature = (degree, rank = None))]
fn segre(degree: usize, rank: Option<usize>) -> String {
    segre_polynomial(degree, rank.unwrap_or(degree.max(1))).render()
}

/// The Schur polynomial of a partition in the Chern classes.
#[pyfunction]
#[pyo3(signature = (partition, rank = None))]
fn schur(partition: Vec<i64>, rank: Option<usize>) -> PyResult<String> {
    let rank = rank.unwrap_or_else(|| partition.iter().filter(|x| **x > 0).sum::<i64>().max(1) as usize);
    Ok(schur_polynomial(&partition, rank).map_err(py_err)?.render())
}

/// Minimal monomial generators of the multiplier ideal of `x^α`.
#[pyfunction]
#[pyo3(signature = (alpha, degree_bound = None))]
fn multiplier_ideal(alpha: Vec<String>, degree_bound: Option<u32>) -> PyResult<Vec<String>> {
    Ok(multiplier_ideal_monomials(&rationals(&alpha)?, degree_bound).map_err(py_err)?.monomials())
}

/// The connected refinement of a monomial map given by its exponent rows.
#[pyfunction]
fn refine(py: Python<'_>, k: usize, exponents: Vec<Vec<i64>>) -> PyResult<Py<PyAny>> {
    let m = MonomialMap::new(k, exponents).map_err(py_err)?;
    to_py(py, &connected_refinement(&m).map_err(py_err)?.to_json())
}

/// Names of the bundled problem documents.
#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    fixtures::DOCUMENTS.iter().map(|(name, _)| *name).collect()
}

#[pymodule]
fn hodgecalc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOrbitSpec>()?;
    m.add_class::<PyHodgeStructure>()?;
    m.add_class::<PyPositivityModel>()?;
    m.add_function(wrap_pyfunction!(segre, m)?)?;
    m.add_function(wrap_pyfunction!(schur, m)?)?;
    m.add_function(wrap_pyfunction!(multiplier_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(refine, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    Ok(())
}
