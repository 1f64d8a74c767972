use hodgecalc_core::algebra::{Gaussian, QMat};
use hodgecalc_core::fixtures;
use hodgecalc_core::hodge::lmhs::{stratum_lmhs, total_weight_filtration};
use hodgecalc_core::hodge::sl2::{sl2_for, SplittingRule};
use hodgecalc_core::hodge::{
    associated_graded_orbit, deligne_bigrading, relative_weight_filtration_check, verify_polarized_lmhs,
    weight_filtration, y_eigen_decomposition, PolarizedOrbitSpec,
};

#[test]
fn every_fixture_is_a_polarized_lmhs() {
    for (name, spec) in fixtures::orbit_fixtures() {
        let r = verify_polarized_lmhs(&spec);
        assert!(r.passed(), "{name}: {:?}", r.failure);
    }
}

#[test]
fn dollar_bill_limit_is_hodge_tate() {
    let spec = fixtures::dollar_bill();
    let w = total_weight_filtration(&spec);
    let bg = deligne_bigrading(&w, &spec.f).unwrap();
    assert_eq!(bg.h(1, 1), 2);
    assert_eq!(bg.h(0, 0), 2);
    assert_eq!(bg.pieces.len(), 2);
    assert!(bg.is_r_split());
    assert!(bg.check(&w.map_field(|x| Gaussian::real(x.clone())), &spec.f).all());
}

#[test]
fn dollar_bill_stratum_three_keeps_the_elliptic_curve() {
    let spec = fixtures::dollar_bill();
    let (_, _, bg) = stratum_lmhs(&spec, &[2]).unwrap();
    for pq in [(1, 1), (1, 0), (0, 1), (0, 0)] {
        assert_eq!(bg.h(pq.0, pq.1), 1, "I^{pq:?}");
    }
}

#[test]
fn dollar_bill_weight_filtration_of_n1() {
    let spec = fixtures::dollar_bill();
    let w = weight_filtration(&spec.nilpotents[0], 1).unwrap();
    assert_eq!(w.graded_dims_in(0, 2), vec![1, 2, 1]);
    let w3 = weight_filtration(&spec.nilpotents[2], 1).unwrap();
    assert_eq!(w3.graded_dims_in(0, 2), vec![1, 2, 1]);
    let wt = total_weight_filtration(&spec);
    assert_eq!(wt.graded_dims_in(0, 2), vec![2, 0, 2]);
}

#[test]
fn dollar_bill_associated_graded_orbits() {
    let spec = fixtures::dollar_bill();
    let full = associated_graded_orbit(&spec, &[0, 1, 2]).unwrap();
    assert_eq!(full.len(), 1);
    assert_eq!((full[0].a, full[0].spec.dim, full[0].spec.weight), (1, 2, 0));
    assert!(full[0].spec.nilpotents.is_empty());

    let three = associated_graded_orbit(&spec, &[2]).unwrap();
    let elliptic = three.iter().find(|p| p.a == 0).unwrap();
    assert_eq!((elliptic.spec.dim, elliptic.spec.weight), (2, 1));
    assert_eq!(elliptic.indices, vec![0, 1]);
    assert!(elliptic.spec.nilpotents.iter().all(|n| !n.is_zero()));
    assert!(verify_polarized_lmhs(&elliptic.spec).passed());
    let tate = three.iter().find(|p| p.a == 1).unwrap();
    assert_eq!((tate.spec.dim, tate.spec.weight), (1, 0));

    let empty = associated_graded_orbit(&spec, &[]).unwrap();
    assert_eq!(empty.len(), 1);
    assert_eq!(empty[0].spec.dim, 4);
}

#[test]
fn rwfp_holds_on_fixture_pairs() {
    for (name, spec) in fixtures::orbit_fixtures() {
        for i in 0..spec.k() {
            for j in 0..spec.k() {
                if i != j {
                    let r = relative_weight_filtration_check(&spec.nilpotents[i], &spec.nilpotents[j], spec.weight)
                        .unwrap();
                    assert!(r.holds, "{name}: ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn commuting_nilpotents_sit_at_the_bottom_of_strings() {
    for (_, spec) in fixtures::orbit_fixtures() {
        for i in 0..spec.k() {
            let (_, grading, triple) = sl2_for(&spec.nilpotents[i], spec.weight, SplittingRule::Echelon).unwrap();
            assert!(triple.relations_hold());
            for j in 0..spec.k() {
                let parts = y_eigen_decomposition(&spec.nilpotents[j], &grading.y_rep());
                assert!(parts.keys().all(|&m| m <= 0));
                let total = parts.values().fold(QMat::zeros(spec.dim, spec.dim), |acc, c| acc.add(c));
                assert_eq!(total, spec.nilpotents[j]);
            }
        }
    }
}

#[test]
fn broken_specs_are_reported() {
    let spec = fixtures::dollar_bill();
    let flipped = PolarizedOrbitSpec::new(spec.dim, spec.weight, spec.q.neg(), spec.nilpotents.clone(), spec.f.clone())
        .unwrap();
    assert!(!verify_polarized_lmhs(&flipped).positive());

    let mut doc: serde_json::Value =
        serde_json::from_str(fixtures::document_text("dollar-bill").unwrap()).unwrap();
    doc["payload"]["F"][0] = serde_json::json!([["1", "0", "0", "0"], ["0", "1", "0", "0"]]);
    let moved = PolarizedOrbitSpec::from_json(&doc["payload"]).unwrap();
    assert!(!verify_polarized_lmhs(&moved).passed());
}
