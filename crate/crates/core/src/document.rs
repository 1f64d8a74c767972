//! Problem documents: a `kind` tag, a payload validated against the schema
//! of that kind, and free-form `meta` labels.
//!
//! ```json
//! {"kind": "orbit", "meta": {"name": "..."}, "payload": {...}}
//! ```
//!
//! | kind       | payload                                                              |
//! |------------|----------------------------------------------------------------------|
//! | `orbit`    | a polarized nilpotent orbit (`dim`, `weight`, `Q`, `nilpotents`, `F`) |
//! | `phs`      | a weight-1 or weight-2 normal form, optional `xi` / `eta` blocks     |
//! | `model`    | a norm-positivity model, optional `point` and `subspace`             |
//! | `subspace` | `ambient` and a spanning list `basis` of rational vectors            |
//! | `alpha`    | exponent vector `alpha`, optional `degreeBound`                      |

use std::fmt;

use serde_json::{json, Value};

use crate::algebra::gaussian::Gaussian;
use crate::algebra::mat::CMat;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};
use crate::hodge::spec::PolarizedOrbitSpec;
use crate::horizontal::phs::PolarizedHS;
use crate::io;
use crate::monomial::map::MonomialMap;
use crate::positivity::model::NormPositivityModel;

/// The kinds of problem document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DocumentKind {
    Orbit,
    Phs,
    Model,
    Subspace,
    Alpha,
}

impl DocumentKind {
    pub const ALL: [DocumentKind; 5] =
        [DocumentKind::Orbit, DocumentKind::Phs, DocumentKind::Model, DocumentKind::Subspace, DocumentKind::Alpha];

    pub fn name(self) -> &'static str {
        match self {
            DocumentKind::Orbit => "orbit",
            DocumentKind::Phs => "phs",
            DocumentKind::Model => "model",
            DocumentKind::Subspace => "subspace",
            DocumentKind::Alpha => "alpha",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for DocumentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A schema-validated problem document. The payload is kept as JSON so
/// that rendering reproduces the input exactly; the typed accessors never
/// fail on a parsed document of the matching kind.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemDocument {
    pub kind: DocumentKind,
    pub payload: Value,
    pub meta: Value,
}

/// A horizontal-tangent problem: a polarized Hodge structure with optional
/// top blocks `V^{n,0} → V^{n−1,1}` of `ξ` and `η`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhsProblem {
    pub phs: PolarizedHS,
    pub xi: Option<CMat>,
    pub eta: Option<CMat>,
}

/// A model with an optional fiber point and tangent subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelProblem {
    pub model: NormPositivityModel,
    pub point: Option<Vec<Gaussian>>,
    pub subspace: Option<Vec<Vec<Gaussian>>>,
}

/// A rational subspace of `Q^ambient` given by spanning vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceProblem {
    pub ambient: usize,
    pub basis: Vec<Vec<Rational>>,
}

impl SubspaceProblem {
    /// The spanning vectors read as the exponent rows of a monomial map;
    /// they must be non-negative integers.
    pub fn as_monomial_map(&self) -> Result<MonomialMap> {
        let rows = self
            .basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_i64().filter(|v| *v >= 0))
                    .collect::<Option<Vec<i64>>>()
                    .ok_or_else(|| Error::Schema("subspace: exponent rows must be non-negative integers".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        MonomialMap::new(self.ambient, rows)
    }
}

/// Exponents of a monomial weight `Π |z_j|^{−2/α_j}`-type singularity.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaProblem {
    pub alpha: Vec<Rational>,
    pub degree_bound: Option<u32>,
}

impl ProblemDocument {
    /// Parses and validates a JSON document.
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        Self::from_json(&v)
    }

    /// Validates an already-decoded JSON document.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Schema("document: expected a JSON object".into()))?;
        let kind_name = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Schema("document: missing string field \"kind\"".into()))?;
        let kind = DocumentKind::from_name(kind_name).ok_or_else(|| {
            Error::Schema(format!("document: unknown kind \"{kind_name}\" (expected orbit, phs, model, subspace or alpha)"))
        })?;
        let payload = obj.get("payload").cloned().ok_or_else(|| Error::Schema("document: missing field \"payload\"".into()))?;
        let meta = obj.get("meta").cloned().unwrap_or_else(|| json!({}));
        if !meta.is_object() {
            return Err(Error::Schema("document: \"meta\" must be an object".into()));
        }
        let doc = ProblemDocument { kind, payload, meta };
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<()> {
        match self.kind {
            DocumentKind::Orbit => self.orbit().map(|_| ()),
            DocumentKind::Phs => self.phs().map(|_| ()),
            DocumentKind::Model => self.model().map(|_| ()),
            DocumentKind::Subspace => self.subspace().map(|_| ()),
            DocumentKind::Alpha => self.alpha().map(|_| ()),
        }
    }

    fn expect_kind(&self, k: DocumentKind) -> Result<()> {
        if self.kind == k {
            Ok(())
        } else {
            Err(Error::Schema(format!("expected a document of kind {k}, got {}", self.kind)))
        }
    }

    pub fn orbit(&self) -> Result<PolarizedOrbitSpec> {
        self.expect_kind(DocumentKind::Orbit)?;
        PolarizedOrbitSpec::from_json(&self.payload)
    }

    pub fn phs(&self) -> Result<PhsProblem> {
        self.expect_kind(DocumentKind::Phs)?;
        let phs = PolarizedHS::from_json(&self.payload)?;
        let n = phs.weight;
        let (rows, cols) = (phs.h(n - 1), phs.h(n));
        let block = |key: &str| -> Result<Option<CMat>> {
            match self.payload.get(key) {
                None => Ok(None),
                Some(b) => {
                    let m = io::cmat_from_json(b, &format!("phs.{key}"))?;
                    if m.rows() != rows || m.cols() != cols {
                        return Err(Error::Schema(format!("phs.{key}: the top block must be {rows}×{cols}")));
                    }
                    Ok(Some(m))
                }
            }
        };
        Ok(PhsProblem { xi: block("xi")?, eta: block("eta")?, phs })
    }

    pub fn model(&self) -> Result<ModelProblem> {
        self.expect_kind(DocumentKind::Model)?;
        let model = NormPositivityModel::from_json(&self.payload)?;
        let point = match self.payload.get("point") {
            None => None,
            Some(p) => {
                let e = io::cvec_from_json(p, "model.point")?;
                if e.len() != model.rank_e {
                    return Err(Error::Schema(format!("model.point: expected {} entries", model.rank_e)));
                }
                Some(e)
            }
        };
        let subspace = match self.payload.get("subspace") {
            None => None,
            Some(s) => {
                let b = io::cvecs_from_json(s, "model.subspace")?;
                if b.iter().any(|v| v.len() != model.dim_t) {
                    return Err(Error::Schema(format!("model.subspace: vectors must have {} entries", model.dim_t)));
                }
                Some(b)
            }
        };
        Ok(ModelProblem { model, point, subspace })
    }

    pub fn subspace(&self) -> Result<SubspaceProblem> {
        self.expect_kind(DocumentKind::Subspace)?;
        let ambient = io::usize_field(&self.payload, "ambient", "subspace")?;
        let basis = io::qvecs_from_json(io::field(&self.payload, "basis", "subspace")?, "subspace.basis")?;
        if basis.iter().any(|v| v.len() != ambient) {
            return Err(Error::Schema(format!("subspace.basis: vectors must have {ambient} entries")));
        }
        Ok(SubspaceProblem { ambient, basis })
    }

    pub fn alpha(&self) -> Result<AlphaProblem> {
        self.expect_kind(DocumentKind::Alpha)?;
        let alpha = io::qvec_from_json(io::field(&self.payload, "alpha", "alpha")?, "alpha.alpha")?;
        if alpha.is_empty() || alpha.iter().any(|a| !a.is_positive()) {
            return Err(Error::Schema("alpha: entries must be positive rationals".into()));
        }
        let degree_bound = match self.payload.get("degreeBound") {
            None => None,
            Some(d) => Some(
                d.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| Error::Schema("alpha: \"degreeBound\" must be a non-negative integer".into()))?,
            ),
        };
        Ok(AlphaProblem { alpha, degree_bound })
    }

    pub fn to_json(&self) -> Value {
        json!({"kind": self.kind.name(), "meta": self.meta, "payload": self.payload})
    }

    /// Pretty-printed JSON read back by [`ProblemDocument::parse`].
    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("JSON values always serialize")
    }

    /// The `meta.name` label, if present.
    pub fn name(&self) -> Option<&str> {
        self.meta.get("name").and_then(Value::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn bundled_documents_round_trip() {
        for (name, text) in fixtures::DOCUMENTS {
            let doc = ProblemDocument::parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(doc.name(), Some(*name));
            assert_eq!(ProblemDocument::parse(&doc.render()).unwrap(), doc);
        }
    }

    #[test]
    fn dollar_bill_is_an_orbit_of_dimension_four() {
        let doc = ProblemDocument::parse(fixtures::document_text("dollar-bill").unwrap()).unwrap();
        assert_eq!(doc.kind, DocumentKind::Orbit);
        let spec = doc.orbit().unwrap();
        assert_eq!((spec.dim, spec.k()), (4, 3));
    }

    #[test]
    fn empty_input_is_a_parse_error() {
        assert!(matches!(ProblemDocument::parse(""), Err(Error::Parse(_))));
        assert!(matches!(ProblemDocument::parse("{\"kind\": "), Err(Error::Parse(_))));
    }

    #[test]
    fn non_commuting_nilpotents_are_a_schema_error() {
        let text = r#"{"kind": "orbit", "payload": {
            "dim": 4, "weight": 1,
            "Q": [[0,0,1,0],[0,0,0,1],[-1,0,0,0],[0,-1,0,0]],
            "nilpotents": [
                [[0,0,1,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]],
                [[0,0,0,0],[0,0,0,0],[0,1,0,0],[1,0,0,0]]
            ],
            "F": [[[0,0,1,0],[0,0,0,1]], [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]]}}"#;
        match ProblemDocument::parse(text) {
            Err(Error::Schema(m)) => assert!(m.contains("nilpotents must commute"), "{m}"),
            other => panic!("expected a schema error, got {other:?}"),
        }
    }

    #[test]
    fn payloads_are_checked_against_their_kind() {
        let bad = r#"{"kind": "alpha", "payload": {"alpha": ["0"]}}"#;
        assert!(matches!(ProblemDocument::parse(bad), Err(Error::Schema(_))));
        let unknown = r#"{"kind": "torus", "payload": {}}"#;
        assert!(matches!(ProblemDocument::parse(unknown), Err(Error::Schema(_))));
        let sub = ProblemDocument::parse(r#"{"kind": "subspace", "payload": {"ambient": 1, "basis": [["2"]]}}"#).unwrap();
        assert_eq!(sub.subspace().unwrap().as_monomial_map().unwrap().exponents, vec![vec![2]]);
        let g24 = ProblemDocument::parse(fixtures::document_text("g24-model").unwrap()).unwrap();
        assert_eq!(g24.model().unwrap().model, crate::positivity::grassmannian_model());
        let w2 = ProblemDocument::parse(fixtures::document_text("weight2-normal-form").unwrap()).unwrap();
        assert_eq!(w2.phs().unwrap().phs.hodge_numbers(), vec![2, 3, 2]);
    }
}
