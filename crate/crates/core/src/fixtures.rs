//! Bundled example orbits, embedded from the `fixtures/` directory.

use serde_json::Value;

use crate::document::{ModelProblem, PhsProblem, ProblemDocument};
use crate::hodge::spec::PolarizedOrbitSpec;

/// Name and JSON text of every bundled problem document.
pub const DOCUMENTS: &[(&str, &str)] = &[
    ("dollar-bill", include_str!("../fixtures/dollar-bill.json")),
    ("elliptic-degeneration", include_str!("../fixtures/elliptic-degeneration.json")),
    ("product-degeneration", include_str!("../fixtures/product-degeneration.json")),
    ("weight2-normal-form", include_str!("../fixtures/weight2-normal-form.json")),
    ("g24-model", include_str!("../fixtures/g24-model.json")),
];

/// The JSON text of a bundled document.
pub fn document_text(name: &str) -> Option<&'static str> {
    DOCUMENTS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

fn orbit(name: &str) -> PolarizedOrbitSpec {
    let text = document_text(name).expect("bundled fixture exists");
    let v: Value = serde_json::from_str(text).expect("bundled fixture is valid JSON");
    PolarizedOrbitSpec::from_json(&v["payload"]).expect("bundled fixture is a valid orbit")
}

/// Three-parameter degeneration to the dollar-bill curve (weight 1, dim 4).
pub fn dollar_bill() -> PolarizedOrbitSpec {
    orbit("dollar-bill")
}

/// One-parameter degeneration of an elliptic curve to a nodal curve.
pub fn elliptic_degeneration() -> PolarizedOrbitSpec {
    orbit("elliptic-degeneration")
}

/// Product of two elliptic degenerations (commuting sl2-triples).
pub fn product_degeneration() -> PolarizedOrbitSpec {
    orbit("product-degeneration")
}

/// The parsed bundled document `name`.
pub fn document(name: &str) -> Option<ProblemDocument> {
    document_text(name).map(|t| ProblemDocument::parse(t).expect("bundled documents are valid"))
}

/// Weight-2 normal form with Hodge numbers `(2, 3, 2)` and a rank-2 `ξ`.
pub fn weight_two_normal_form() -> PhsProblem {
    document("weight2-normal-form").and_then(|d| d.phs().ok()).expect("bundled fixture is a valid phs")
}

/// The Grassmannian `G(2,4)` model at `(Λ, e₁)`.
pub fn g24_model() -> ModelProblem {
    document("g24-model").and_then(|d| d.model().ok()).expect("bundled fixture is a valid model")
}

/// Every bundled orbit with its name.
pub fn orbit_fixtures() -> Vec<(&'static str, PolarizedOrbitSpec)> {
    DOCUMENTS
        .iter()
        .filter(|(_, t)| serde_json::from_str::<Value>(t).map(|v| v["kind"] == "orbit").unwrap_or(false))
        .map(|(n, _)| (*n, orbit(n)))
        .collect()
}
