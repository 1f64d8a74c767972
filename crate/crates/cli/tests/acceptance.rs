//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so that the summary is always printed;
//! the process exits non-zero when any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use hodgecalc_core::algebra::{
    is_psd, poly_mat_det, Gaussian, PolyMat, QMat, QPoly, Rational, Ring,
};
use hodgecalc_core::fixtures;
use hodgecalc_core::hodge::lmhs::stratum_lmhs;
use hodgecalc_core::hodge::rwfp::search_rwfp_failure;
use hodgecalc_core::hodge::sl2::{sl2_for, SplittingRule};
use hodgecalc_core::hodge::{relative_weight_filtration_check, satisfies_weight_properties, weight_filtration};
use hodgecalc_core::horizontal::{graded_end_algebra, kernel_dimension, xi_from_top_block, PolarizedHS};
use hodgecalc_core::monomial::{
    compatibility_check, connected_refinement, monomial_map, nested_pairs, stratum_monomial_map,
};
use hodgecalc_core::monomial::map::MonomialMap;
use hodgecalc_core::orbit::{
    chern_form_at, decade_scales, default_rays, hodge_metric_matrix, hodge_metric_polynomial,
    restriction_limit_check,
};
use hodgecalc_core::positivity::{
    curvature_from_model, grassmannian_model, grothendieck_residual, projectivized_chern_form,
    projectivized_chern_form_at_line, random_model, schur_polynomial, segre_polynomial,
    strong_semipositivity_check, sym_power_model, sym_product,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn monomial(k: usize, vars: &[usize]) -> Vec<u32> {
    let mut e = vec![0; k];
    for &v in vars {
        e[v] += 1;
    }
    e
}

/// `P = x1x2 + x1x3 + x2x3`, built term by term.
fn dollar_bill_polynomial() -> QPoly {
    QPoly::from_terms(3, [[0, 1], [0, 2], [1, 2]].iter().map(|vs| (monomial(3, vs), q(1))))
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Outcome {
    check(elapsed < limit, format!("{what} in {:.3} s (limit {} s)", elapsed.as_secs_f64(), limit.as_secs()))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let p = hodge_metric_polynomial(&fixtures::dollar_bill()).map_err(err)?;
    let elapsed = start.elapsed();
    let c = dollar_bill_polynomial()
        .proportionality(&p.p)
        .ok_or_else(|| format!("P = {} is not proportional to x1*x2 + x1*x3 + x2*x3", p.render()))?;
    if !c.is_positive() {
        return Err(format!("constant {c} is not positive"));
    }
    let t = within(elapsed, Duration::from_secs(1), "computed")?;
    Ok(format!("P = {} (constant {c}); {t}", p.render()))
}

fn criterion_2() -> Outcome {
    let spec = fixtures::dollar_bill();
    let h = hodge_metric_matrix(&spec).map_err(err)?;
    let m = h.full_rational().ok_or("the metric matrix is not real")?;
    let x = |i| QPoly::var(3, i);
    let expected: PolyMat<Rational> =
        vec![vec![x(0).add(&x(2)), x(2)], vec![x(2), x(1).add(&x(2))]];
    // The recorded scaling: the rational c with H = c·expected.
    let c = expected[0][0].proportionality(&m[0][0]).ok_or("entry (1,1) has the wrong shape")?;
    let scaled_ok = c.is_positive()
        && m.len() == 2
        && (0..2).all(|i| m[i].len() == 2 && (0..2).all(|j| m[i][j] == expected[i][j].scale(&c)));
    if !scaled_ok {
        return Err(format!("H = {:?}", h.render()));
    }
    let det = poly_mat_det(&m, 3);
    let p = hodge_metric_polynomial(&spec).map_err(err)?;
    let det_ok = det.proportionality(&p.p).is_some_and(|r| r.is_positive());
    check(det_ok, format!("H = {:?} (scaling {c}); det H = {}", h.render(), det.render("x")))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let spec = fixtures::dollar_bill();
    let scales = decade_scales(1, 8);
    let rays = default_rays(3, &[2], 6, 0);
    let three = restriction_limit_check(&spec, &[2], &rays, &scales).map_err(err)?;
    let mut notes = Vec::new();
    if !three.pass {
        return Err(format!("I = {{3}} fails: {}", three.to_json()));
    }
    let worst = three.rays.iter().map(|r| r.final_deviation.clone()).max().unwrap();
    notes.push(format!("I={{3}}: {} rays, worst final deviation {}", rays.len(), worst.to_f64()));

    let rays23 = default_rays(3, &[1, 2], 6, 0);
    let two_three = restriction_limit_check(&spec, &[1, 2], &rays23, &scales).map_err(err)?;
    if !two_three.pass {
        return Err(format!("I = {{2,3}} fails: {}", two_three.to_json()));
    }
    notes.push(format!("I={{2,3}}: {}", if two_three.exact() { "exactly 0" } else { "≤ 1e-6" }));

    // The product degeneration has commuting sl2-triples: the limit is exact.
    let prod = fixtures::product_degeneration();
    let k = prod.k();
    for mask in 1..(1usize << k) - 1 {
        let stratum: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
        let r = restriction_limit_check(&prod, &stratum, &default_rays(k, &stratum, 5, 0), &scales).map_err(err)?;
        if !r.exact() {
            return Err(format!("product degeneration I = {stratum:?} is not exact"));
        }
    }
    notes.push("commuting-sl2 product: exactly 0 on every stratum".into());
    let t = within(start.elapsed(), Duration::from_secs(10), "computed")?;
    Ok(format!("{}; {t}", notes.join("; ")))
}

fn criterion_4() -> Outcome {
    let spec = fixtures::dollar_bill();
    let full = monomial_map(&spec).map_err(err)?;
    let identity: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| i64::from(i == j)).collect()).collect();
    let mut sorted = full.exponents.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted != identity {
        return Err(format!("full map exponents {:?}", full.exponents));
    }
    let s1 = stratum_monomial_map(&spec, &[0]).map_err(err)?;
    if s1.variables != vec![1, 2] || s1.exponents != vec![vec![1, 1]] {
        return Err(format!("I = {{1}} map exponents {:?}", s1.exponents));
    }
    let mut pairs = 0;
    for (i, j) in nested_pairs(spec.k()) {
        let r = compatibility_check(&spec, &i, &j).map_err(err)?;
        if !r.pass {
            return Err(format!("compatibility fails for I = {i:?} ⊊ J = {j:?}"));
        }
        pairs += 1;
    }
    let r = connected_refinement(&MonomialMap::new(1, vec![vec![2]]).map_err(err)?).map_err(err)?;
    check(
        r.invariant_factors == vec![2] && r.degree == 2,
        format!(
            "full map = identity; I={{1}} map = {}; compat on {pairs} nested pairs; refinement of [2]: invariant factors {:?}",
            s1.monomials().join(", "),
            r.invariant_factors
        ),
    )
}

/// A seeded `rows × cols` integer matrix of rank exactly `r` (entries in −2..2).
fn seeded_rank_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, r: usize, symmetric: bool) -> QMat {
    loop {
        let b = QMat::new(rows, r, (0..rows * r).map(|_| q(rng.gen_range(-2..=2))).collect());
        let c = if symmetric {
            b.transpose()
        } else {
            QMat::new(r, cols, (0..r * cols).map(|_| q(rng.gen_range(-2..=2))).collect())
        };
        let m = if r == 0 { QMat::zeros(rows, cols) } else { b.mul(&c) };
        if m.rank() == r {
            return m;
        }
    }
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn kernel_suite(phs: &PolarizedHS, rows: usize, cols: usize, symmetric: bool, expected: impl Fn(usize) -> usize, seed: u64) -> Result<usize, String> {
    let ge = graded_end_algebra(phs).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0;
    for r in 0..=rows.min(cols) {
        for _ in 0..3 {
            let block = seeded_rank_matrix(&mut rng, rows, cols, r, symmetric);
            let xi = xi_from_top_block(&ge, &block.to_gaussian()).map_err(err)?;
            let kd = kernel_dimension(&ge, &xi).map_err(err)?;
            if kd != expected(r) {
                return Err(format!("h = {:?}, rank {r}: kernel {kd}, expected {}", phs.hodge_numbers(), expected(r)));
            }
            let maximal = r == rows.min(cols);
            if maximal != (kd == 0) {
                return Err(format!("h = {:?}, rank {r}: maximal rank but kernel {kd}", phs.hodge_numbers()));
            }
            count += 1;
        }
    }
    Ok(count)
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut samples = 0;
    for g in 1..=4 {
        let phs = PolarizedHS::weight_one_standard(g);
        samples += kernel_suite(&phs, g, g, true, |r| binom2(g - r + 1), 100 + g as u64)?;
    }
    for h20 in 1..=3 {
        for h11 in 1..=4 {
            let phs = PolarizedHS::weight_two_standard(h20, h11);
            samples +=
                kernel_suite(&phs, h11, h20, false, |r| (h20 - r) * (h11 - r), 200 + (10 * h20 + h11) as u64)?;
        }
    }
    let t = within(start.elapsed(), Duration::from_secs(60), "computed")?;
    Ok(format!("weight 1 (g ≤ 4) and weight 2 (h20 ≤ 3, h11 ≤ 4): {samples} seeded blocks; {t}"))
}

fn criterion_6() -> Outcome {
    let s1 = segre_polynomial(1, 4).render();
    let s2 = segre_polynomial(2, 4).render();
    if s1 != "c1" || s2 != "c1^2 - c2" {
        return Err(format!("S1 = {s1}, S2 = {s2}"));
    }
    for r in 1..=4 {
        for qq in 1..=6 {
            let res = grothendieck_residual(qq, r);
            if !res.poly.is_zero() {
                return Err(format!("recursion residual at q = {qq}, r = {r}: {}", res.render()));
            }
        }
    }
    let schur = schur_polynomial(&[1, 1], 2).map_err(err)?.render();
    check(schur == "c1^2 - c2", format!("S1 = {s1}; S2 = {s2}; recursion for q ≤ 6, r ≤ 4; s_(1,1) = {schur}"))
}

fn unit(n: usize, i: usize) -> Vec<Gaussian> {
    (0..n).map(|j| if i == j { Gaussian::one() } else { Gaussian::zero() }).collect()
}

fn criterion_7() -> Outcome {
    let mut tested = 0;
    for r in 1..=3usize {
        let mut seed = 0u64;
        let mut accepted = 0;
        while accepted < 4 {
            seed += 1;
            if seed > 100 {
                return Err(format!("rank {r}: too few strongly semi-positive models among 100 seeds"));
            }
            let m = random_model(2, r, 2, 1000 * r as u64 + seed);
            let report = strong_semipositivity_check(&[curvature_from_model(&m)], 8, seed).map_err(err)?;
            if !report.strongly_semi_positive_on_sampled_set {
                continue;
            }
            let power = sym_power_model(&m, r as u32).map_err(err)?;
            let factors: Vec<Vec<Gaussian>> = (0..r).map(|i| unit(r, i)).collect();
            let point = sym_product(r, &factors).map_err(err)?;
            let form = projectivized_chern_form_at_line(&power, &point).map_err(err)?;
            if !form.is_pd() {
                return Err(format!("rank {r}, model seed {}: not positive definite", 1000 * r as u64 + seed));
            }
            accepted += 1;
            tested += 1;
        }
    }
    let g = grassmannian_model();
    let v = unit(2, 0);
    let kernel = projectivized_chern_form(&g, &v).map_err(err)?.horizontal_kernel_dim();
    if kernel != 2 {
        return Err(format!("G(2,4): horizontal kernel {kernel} at (Λ, v)"));
    }
    let s2 = sym_power_model(&g, 2).map_err(err)?;
    let vv = sym_product(2, &[unit(2, 0), unit(2, 1)]).map_err(err)?;
    let form = projectivized_chern_form_at_line(&s2, &vv).map_err(err)?;
    check(
        form.is_pd(),
        format!("{tested} seeded models (ranks 1–3) positive definite at e1⋯er; G(2,4): kernel 2 at (Λ,v), positive definite at (Λ,v·v')"),
    )
}

/// `P J P⁻¹` for a random Jordan type `J` and a random unitriangular product `P`.
fn seeded_nilpotent(rng: &mut ChaCha8Rng) -> QMat {
    let n = rng.gen_range(1..=8);
    let mut j = QMat::zeros(n, n);
    let mut i = 0;
    while i < n {
        let len = rng.gen_range(1..=n - i);
        for t in 0..len - 1 {
            j.set(i + t, i + t + 1, q(1));
        }
        i += len;
    }
    let mut lower = QMat::identity(n);
    let mut upper = QMat::identity(n);
    for a in 0..n {
        for b in 0..a {
            lower.set(a, b, q(rng.gen_range(-1..=1)));
            upper.set(b, a, q(rng.gen_range(-1..=1)));
        }
    }
    let p = lower.mul(&upper);
    p.mul(&j).mul(&p.inverse().expect("unitriangular products are invertible"))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for t in 0..120 {
        let n = seeded_nilpotent(&mut rng);
        let center = rng.gen_range(0..=3);
        let w = weight_filtration(&n, center).map_err(err)?;
        if !satisfies_weight_properties(&n, &w, center) {
            return Err(format!("nilpotent #{t}: weight-filtration postconditions fail"));
        }
        let (_, _, triple) = sl2_for(&n, center, SplittingRule::Echelon).map_err(err)?;
        if !triple.relations_hold() {
            return Err(format!("nilpotent #{t}: sl2 relations fail"));
        }
    }

    let mut strata = 0;
    let mut pairs = 0;
    let mut points = 0;
    for (name, spec) in fixtures::orbit_fixtures() {
        let k = spec.k();
        for mask in 0..1usize << k {
            let stratum: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            let (w, f, bg) = stratum_lmhs(&spec, &stratum).map_err(err)?;
            if !bg.check(&w.map_field(|x| Gaussian::real(x.clone())), &f).all() {
                return Err(format!("{name}: bigrading checks fail on I = {stratum:?}"));
            }
            strata += 1;
        }
        for mask_a in 1..1usize << k {
            for mask_b in 1..1usize << k {
                if mask_a & mask_b != 0 {
                    continue;
                }
                let pick = |m: usize| (0..k).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>();
                let r = relative_weight_filtration_check(&spec.sum_over(&pick(mask_a)), &spec.sum_over(&pick(mask_b)), spec.weight)
                    .map_err(err)?;
                if !r.holds {
                    return Err(format!("{name}: RWFP fails for {:?}, {:?}", pick(mask_a), pick(mask_b)));
                }
                pairs += 1;
            }
        }
        let p = hodge_metric_polynomial(&spec).map_err(err)?;
        let mut prng = ChaCha8Rng::seed_from_u64(80);
        for _ in 0..100 {
            let x: Vec<Rational> = (0..k).map(|_| Rational::new(prng.gen_range(1..=64), prng.gen_range(1..=16))).collect();
            let s = chern_form_at(&p.p, &x).map_err(err)?;
            if !s.is_psd() || !is_psd(&s.g) {
                return Err(format!("{name}: −Hess log P not PSD at {x:?}"));
            }
            points += 1;
        }
    }
    let (a, b) = search_rwfp_failure(8, 2000).ok_or("no RWFP failure pair found")?;
    let r = relative_weight_filtration_check(&a, &b, 0).map_err(err)?;
    check(
        !r.holds,
        format!("120 nilpotents; bigradings on {strata} strata; RWFP on {pairs} pairs; failure pair reported false; log-concave at {points} points"),
    )
}

fn cli_runs() -> Vec<Vec<&'static str>> {
    let db = |cmd: &'static str, extra: &[&'static str]| {
        let mut v = vec![cmd, "--fixture", "dollar-bill", "--seed", "7"];
        v.extend_from_slice(extra);
        v
    };
    vec![
        db("validate", &[]),
        db("metric-poly", &[]),
        db("chern", &[]),
        db("limit-check", &["--stratum", "3", "--rays", "5"]),
        db("limit-check", &["--stratum", "2,3"]),
        db("monomial-map", &[]),
        db("stratum-map", &["--stratum", "1"]),
        db("compat", &[]),
        db("refine", &[]),
        db("bigrading", &[]),
        db("rwfp", &[]),
        db("factorize", &[]),
        vec!["horizontal", "--fixture", "weight2-normal-form", "--seed", "7"],
        vec!["curvature", "--fixture", "g24-model", "--seed", "7"],
        vec!["curvature", "--fixture", "g24-model", "--power", "2", "--point", "1,0;0,1", "--seed", "7"],
        vec!["segre", "--degree", "4"],
        vec!["schur", "--partition", "1,1"],
        vec!["multiplier-ideal", "--alpha", "4,4"],
    ]
}

fn run_cli_suite() -> Result<Vec<Vec<u8>>, String> {
    cli_runs()
        .iter()
        .map(|args| {
            let out = Command::new(env!("CARGO_BIN_EXE_hodgecalc")).args(args).output().map_err(err)?;
            if !out.status.success() {
                return Err(format!("hodgecalc {} exited with {}", args.join(" "), out.status));
            }
            Ok(out.stdout)
        })
        .collect()
}

fn criterion_9() -> Outcome {
    let first = run_cli_suite()?;
    let second = run_cli_suite()?;
    let runs = cli_runs();
    for (i, (a, b)) in first.iter().zip(&second).enumerate() {
        if a != b {
            return Err(format!("hodgecalc {} differs between runs", runs[i].join(" ")));
        }
    }
    let bytes: usize = first.iter().map(Vec::len).sum();
    Ok(format!("{} reports ({bytes} bytes) byte-identical across two runs", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("dollar-bill metric polynomial", criterion_1),
        ("dollar-bill metric matrix and determinant", criterion_2),
        ("restriction limits", criterion_3),
        ("monomial maps", criterion_4),
        ("kernel-dimension formulas", criterion_5),
        ("Chern-class algebra", criterion_6),
        ("symmetric-power positivity", criterion_7),
        ("property suites", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
