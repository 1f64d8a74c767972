//! Engine results against independent reference computations.

use hodgecalc_core::algebra::snf::{determinantal_divisor, integer_det, is_unimodular};
use hodgecalc_core::algebra::{
    poly_mat_det, poly_mat_det_cofactor, smith_normal_form, Gaussian, PolyMat, QMat, QPoly, Rational, Ring,
    Subspace, ZMat,
};
use hodgecalc_core::fixtures;
use hodgecalc_core::hodge::sl2::{sl2_for, SplittingRule};
use hodgecalc_core::hodge::{weight_filtration, PolarizedOrbitSpec};
use hodgecalc_core::horizontal::{
    graded_end_algebra, kernel_dimension, kernel_dimension_direct, random_horizontal, PolarizedHS,
};
use hodgecalc_core::monomial::{monomial_map, orbit_relation_space};
use hodgecalc_core::orbit::{chern_form_at, hodge_metric_polynomial};
use hodgecalc_core::positivity::{schur_polynomial, segre_polynomial};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

/// A nilpotent `P J P⁻¹` together with its planted Jordan chains: each
/// chain lists the columns of `P` from the bottom (`N v = 0`) up.
fn planted_nilpotent(rng: &mut ChaCha8Rng, n: usize) -> (QMat, QMat, Vec<(usize, usize)>) {
    let mut j = QMat::zeros(n, n);
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < n {
        let len = rng.gen_range(1..=n - i);
        for t in 0..len - 1 {
            j.set(i + t, i + t + 1, q(1));
        }
        blocks.push((i, len));
        i += len;
    }
    let mut lower = QMat::identity(n);
    let mut upper = QMat::identity(n);
    for a in 0..n {
        for b in 0..a {
            lower.set(a, b, q(rng.gen_range(-2..=2)));
            upper.set(b, a, q(rng.gen_range(-2..=2)));
        }
    }
    let p = lower.mul(&upper);
    let nil = p.mul(&j).mul(&p.inverse().unwrap());
    (nil, p, blocks)
}

#[test]
fn weight_filtration_matches_planted_jordan_chains() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let n = rng.gen_range(1..=7);
        let center = rng.gen_range(-2..=2);
        let (nil, p, blocks) = planted_nilpotent(&mut rng, n);
        let w = weight_filtration(&nil, center).unwrap();
        // The chain vector at height t in a block of length m has weight
        // center + 2t − (m − 1).
        for l in center - n as i64..=center + n as i64 {
            let expected: Vec<Vec<Rational>> = blocks
                .iter()
                .flat_map(|&(start, m)| {
                    (0..m).filter(move |&t| center + 2 * t as i64 - (m as i64 - 1) <= l).map(move |t| start + t)
                })
                .map(|c| p.col(c))
                .collect();
            assert_eq!(w.get(l), Subspace::span(n, &expected), "W_{l} of {nil:?}");
        }
    }
}

#[test]
fn sl2_triples_satisfy_the_bracket_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let n = rng.gen_range(1..=6);
        let (nil, _, _) = planted_nilpotent(&mut rng, n);
        for rule in [SplittingRule::Echelon, SplittingRule::ReversedEchelon] {
            let (_, _, t) = sl2_for(&nil, 0, rule).unwrap();
            let bracket = |a: &QMat, b: &QMat| a.mul(b).sub(&b.mul(a));
            assert_eq!(bracket(&t.y, &t.n_minus), t.n_minus.scale(&q(-2)));
            assert_eq!(bracket(&t.y, &t.n_plus), t.n_plus.scale(&q(2)));
            assert_eq!(bracket(&t.n_plus, &t.n_minus), t.y);
            assert_eq!(t.n_minus, nil);
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, vars: usize) -> QPoly {
    let mut p = QPoly::zero(vars);
    for _ in 0..rng.gen_range(0..=3) {
        let e: Vec<u32> = (0..vars).map(|_| rng.gen_range(0..=1)).collect();
        p.add_term(e, q(rng.gen_range(-3..=3)));
    }
    p
}

#[test]
fn fraction_free_determinant_matches_cofactor_expansion_and_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..25 {
        let size = rng.gen_range(1..=4);
        let m: PolyMat<Rational> =
            (0..size).map(|_| (0..size).map(|_| random_poly(&mut rng, 3)).collect()).collect();
        let det = poly_mat_det(&m, 3);
        assert_eq!(det, poly_mat_det_cofactor(&m, 3));
        for _ in 0..3 {
            let x: Vec<Rational> = (0..3).map(|_| Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
            let numeric = QMat::from_rows(m.iter().map(|row| row.iter().map(|e| e.evaluate(&x)).collect()).collect());
            assert_eq!(det.evaluate(&x), numeric.det());
        }
    }
}

#[test]
fn smith_form_matches_determinantal_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..40 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let a = ZMat::new(r, c, (0..r * c).map(|_| BigInt::from(rng.gen_range(-6..=6))).collect());
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        for (i, w) in s.invariant_factors.windows(2).enumerate() {
            assert!((&w[1] % &w[0]) == BigInt::from(0), "d_{i} ∤ d_{}", i + 1);
        }
        let mut product = BigInt::from(1);
        for k in 1..=r.min(c) {
            let dk = determinantal_divisor(&a, k);
            if k <= s.invariant_factors.len() {
                product *= &s.invariant_factors[k - 1];
                assert_eq!(dk, product);
            } else {
                assert_eq!(dk, BigInt::from(0));
            }
        }
        if r == c {
            assert_eq!(integer_det(&a).magnitude(), integer_det(&s.d).magnitude());
        }
    }
}

#[test]
fn chern_form_matches_the_quotient_rule_hessian() {
    for (_, spec) in fixtures::orbit_fixtures() {
        let p = hodge_metric_polynomial(&spec).unwrap().p;
        let k = p.num_vars();
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..10 {
            let x: Vec<Rational> = (0..k).map(|_| Rational::new(rng.gen_range(1..=20), rng.gen_range(1..=7))).collect();
            let g = chern_form_at(&p, &x).unwrap().g;
            // −∂_i∂_j log P = (P_i P_j − P P_ij) / P².
            let pv = p.evaluate(&x);
            for i in 0..k {
                for j in 0..k {
                    let pi = p.partial_derivative(i).evaluate(&x);
                    let pj = p.partial_derivative(j).evaluate(&x);
                    let pij = p.partial_derivative(i).partial_derivative(j).evaluate(&x);
                    let expected = &(&(&pi * &pj) - &(&pv * &pij)) / &(&pv * &pv);
                    assert_eq!(g.get(i, j), &expected);
                }
            }
        }
    }
}

#[test]
fn dollar_bill_chern_form_at_the_center() {
    let p = hodge_metric_polynomial(&fixtures::dollar_bill()).unwrap().p;
    let g = chern_form_at(&p, &[q(1), q(1), q(1)]).unwrap().g;
    let n = |a| Rational::new(a, 9);
    assert_eq!(g, QMat::from_rows(vec![vec![n(4), n(1), n(1)], vec![n(1), n(4), n(1)], vec![n(1), n(1), n(4)]]));
}

fn elementary(x: &[Rational], k: usize) -> Rational {
    hodgecalc_core::algebra::snf::combinations(&(0..x.len()).collect::<Vec<_>>(), k)
        .iter()
        .map(|s| s.iter().fold(q(1), |acc, &i| &acc * &x[i]))
        .fold(q(0), |a, b| &a + &b)
}

fn complete(x: &[Rational], d: usize) -> Rational {
    // Sum over all multisets of size d.
    fn go(x: &[Rational], d: usize, from: usize) -> Rational {
        if d == 0 {
            return q(1);
        }
        (from..x.len()).map(|i| &x[i] * &go(x, d - 1, i)).fold(q(0), |a, b| &a + &b)
    }
    go(x, d, 0)
}

fn chern_roots(rng: &mut ChaCha8Rng, r: usize) -> (Vec<Rational>, Vec<Rational>) {
    let x: Vec<Rational> = (0..r).map(|_| Rational::new(rng.gen_range(-7..=7), rng.gen_range(1..=4))).collect();
    let c = (1..=r).map(|i| elementary(&x, i)).collect();
    (x, c)
}

#[test]
fn segre_classes_are_complete_symmetric_in_the_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for r in 1..=4 {
        for d in 0..=6 {
            let s = segre_polynomial(d, r);
            for _ in 0..3 {
                let (x, c) = chern_roots(&mut rng, r);
                assert_eq!(s.evaluate(&c), complete(&x, d), "s_{d} in rank {r}");
            }
        }
    }
}

fn conjugate(lambda: &[i64]) -> Vec<i64> {
    let top = lambda.iter().copied().max().unwrap_or(0);
    (1..=top).map(|j| lambda.iter().filter(|&&l| l >= j).count() as i64).collect()
}

/// Bialternant `det(x_i^{μ_j + n − j}) / det(x_i^{n − j})`.
fn schur_by_bialternant(mu: &[i64], x: &[Rational]) -> Rational {
    let n = x.len();
    let exps = |shift: &dyn Fn(usize) -> i64| {
        QMat::from_rows(
            (0..n)
                .map(|i| (0..n).map(|j| x[i].pow(shift(j) as i32)).collect())
                .collect(),
        )
    };
    let part = |j: usize| mu.get(j).copied().unwrap_or(0);
    let num = exps(&|j| part(j) + (n - 1 - j) as i64).det();
    let den = exps(&|j| (n - 1 - j) as i64).det();
    &num / &den
}

#[test]
fn schur_polynomials_match_the_bialternant_formula() {
    let partitions: &[&[i64]] = &[&[1], &[2], &[1, 1], &[3], &[2, 1], &[1, 1, 1], &[2, 2], &[3, 1], &[2, 1, 1], &[4]];
    let x: Vec<Rational> = [1, 2, -3, 5].iter().map(|&v| Rational::new(v, 2)).collect();
    let c: Vec<Rational> = (1..=4).map(|i| elementary(&x, i)).collect();
    for lambda in partitions {
        let s = schur_polynomial(lambda, 4).unwrap();
        // Jacobi–Trudi in the c_i is the Schur function of the conjugate.
        assert_eq!(s.evaluate(&c), schur_by_bialternant(&conjugate(lambda), &x), "λ = {lambda:?}");
    }
    assert_eq!(schur_polynomial(&[1, 1], 2).unwrap().render(), "c1^2 - c2");
}

#[test]
fn monomial_map_kernel_is_the_relation_space() {
    let base = fixtures::dollar_bill();
    let mut nilpotents = base.nilpotents.clone();
    nilpotents.push(base.nilpotents[0].add(&base.nilpotents[1]));
    nilpotents.push(base.nilpotents[2].scale(&q(2)));
    let spec = PolarizedOrbitSpec::new(base.dim, base.weight, base.q.clone(), nilpotents, base.f.clone()).unwrap();
    let r = orbit_relation_space(&spec).unwrap();
    let planted = Subspace::span(5, &[vec![q(1), q(1), q(0), q(-1), q(0)], vec![q(0), q(0), q(2), q(0), q(-1)]]);
    assert_eq!(r.subspace(), planted);
    let m = monomial_map(&spec).unwrap();
    assert!(m.is_nonnegative());
    assert_eq!(m.kernel(), planted);
}

#[test]
fn kernel_dimension_agrees_with_direct_computation() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for phs in [
        PolarizedHS::weight_one_standard(3),
        PolarizedHS::weight_two_standard(2, 3),
        PolarizedHS::weight_two_standard(1, 4),
    ] {
        let ge = graded_end_algebra(&phs).unwrap();
        for _ in 0..4 {
            let xi = random_horizontal(&ge, &mut rng);
            assert_eq!(kernel_dimension(&ge, &xi).unwrap(), kernel_dimension_direct(&ge, &xi).unwrap());
        }
        let zero = ge.combine(-1, &vec![Gaussian::zero(); ge.dim(-1)]);
        assert_eq!(kernel_dimension(&ge, &zero).unwrap(), ge.dim(-1));
    }
}
