//! Dispatch of subcommands to engine operations.

use serde_json::{json, Map, Value};

use hodgecalc_core::algebra::{inertia, CMat, Gaussian, Rational, Ring, Subspace};
use hodgecalc_core::document::{DocumentKind, ProblemDocument};
use hodgecalc_core::hodge::sl2::{sl2_for, SplittingRule};
use hodgecalc_core::hodge::{relative_weight_filtration_check, satisfies_weight_properties, stratum_lmhs, verify_polarized_lmhs};
use hodgecalc_core::horizontal::{
    bisectional_curvature, graded_end_algebra, kernel_dimension, kernel_dimension_direct, sampled_quartic_minimum,
    sectional_quartic, xi_from_top_block,
};
use hodgecalc_core::hodge::weight::weight_filtration;
use hodgecalc_core::hodge::PolarizedOrbitSpec;
use hodgecalc_core::io;
use hodgecalc_core::monomial::{
    compatibility_check, composite_exponents, connected_refinement, is_saturated, monomial_map, nested_pairs,
    nonnegative_generators, orbit_relation_space, stratum_monomial_map, stratum_relation_space, MonomialMap,
};
use hodgecalc_core::orbit::{
    chern_form_at, default_rays, hodge_metric_matrix, hodge_metric_polynomial, m_pi_summary, restriction_limit_check,
    stratum_factorization,
};
use hodgecalc_core::positivity::{
    chern_form_norm, curvature_from_model, flat_directions, grothendieck_residual, multiplier_ideal_monomials,
    projectivized_chern_form_at_line, schur_polynomial, segre_polynomial, segre_sequence, strong_semipositivity_check,
    sym_power_model, sym_product, tangent_rank,
};
use hodgecalc_core::{Error, Result};

use crate::args::{parse_gaussian_vectors, parse_rationals, Cli, Command};
use crate::report::Status;

/// Findings and status of a completed command.
pub struct Outcome {
    pub status: Status,
    pub findings: Value,
}

impl Outcome {
    fn ok(findings: Value) -> Self {
        Outcome { status: Status::Ok, findings }
    }

    fn checked(pass: bool, findings: Value) -> Self {
        Outcome { status: Status::from_pass(pass), findings }
    }
}

fn obj(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}

fn one_based(s: &[usize]) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

fn indices(cli: &Cli, flag: Option<&crate::args::IndexSet>, k: usize, what: &str) -> Result<Option<Vec<usize>>> {
    let _ = cli;
    match flag {
        None => Ok(None),
        Some(s) => {
            if let Some(bad) = s.0.iter().find(|&&i| i >= k) {
                return Err(Error::InvalidArgument(format!("{what} index {} exceeds the number of nilpotents {k}", bad + 1)));
            }
            Ok(Some(s.0.clone()))
        }
    }
}

fn required_stratum(cli: &Cli, k: usize) -> Result<Vec<usize>> {
    indices(cli, cli.stratum.as_ref(), k, "stratum")?
        .ok_or_else(|| Error::InvalidArgument("this command needs --stratum".into()))
}

fn wrong_kind(cmd: Command, doc: &ProblemDocument) -> Error {
    Error::Schema(format!("{} does not accept documents of kind {}", cmd.name(), doc.kind))
}

fn need_doc(cmd: Command, doc: Option<&ProblemDocument>) -> Result<&ProblemDocument> {
    doc.ok_or_else(|| Error::InvalidArgument(format!("{} needs a problem document (--input or --fixture)", cmd.name())))
}

/// Runs `cli.command` on the (optional) document.
pub fn dispatch(cli: &Cli, doc: Option<&ProblemDocument>) -> Result<Outcome> {
    let cmd = cli.command;
    match cmd {
        Command::Schur => return schur(cli),
        Command::Segre => return segre(cli),
        Command::MultiplierIdeal => return multiplier(cli, doc),
        _ => {}
    }
    let doc = need_doc(cmd, doc)?;
    match (cmd, doc.kind) {
        (Command::Validate, _) => validate(doc),
        (Command::Curvature, DocumentKind::Model) => model_curvature(cli, doc),
        (Command::Curvature, DocumentKind::Phs) => phs_curvature(doc),
        (Command::Horizontal, DocumentKind::Phs) => horizontal(cli, doc),
        (Command::Chern, DocumentKind::Model) => model_chern(doc),
        (Command::MonomialMap, DocumentKind::Subspace) => subspace_generators(doc),
        (Command::Refine, DocumentKind::Subspace) => refine_map(&doc.subspace()?.as_monomial_map()?),
        (_, DocumentKind::Orbit) => orbit_command(cli, &doc.orbit()?),
        _ => Err(wrong_kind(cmd, doc)),
    }
}

fn orbit_command(cli: &Cli, spec: &PolarizedOrbitSpec) -> Result<Outcome> {
    match cli.command {
        Command::WeightFiltration => weight(cli, spec),
        Command::Sl2 => sl2(cli, spec),
        Command::Bigrading => bigrading(cli, spec),
        Command::Rwfp => rwfp(cli, spec),
        Command::MetricPoly => metric_poly(spec),
        Command::Chern => orbit_chern(cli, spec),
        Command::LimitCheck => limit_check(cli, spec),
        Command::Factorize => factorize(cli, spec),
        Command::MonomialMap => orbit_monomial_map(spec),
        Command::StratumMap => stratum_map(cli, spec),
        Command::Refine => {
            let m = match indices(cli, cli.stratum.as_ref(), spec.k(), "stratum")? {
                Some(s) => stratum_monomial_map(spec, &s)?,
                None => monomial_map(spec)?,
            };
            refine_map(&m)
        }
        Command::Compat => compat(cli, spec),
        other => Err(Error::Schema(format!("{} does not accept documents of kind orbit", other.name()))),
    }
}

fn validate(doc: &ProblemDocument) -> Result<Outcome> {
    match doc.kind {
        DocumentKind::Orbit => {
            let spec = doc.orbit()?;
            let r = verify_polarized_lmhs(&spec);
            Ok(Outcome::checked(
                r.passed(),
                obj(vec![
                    ("kind", json!("orbit")),
                    ("dim", json!(spec.dim)),
                    ("weight", json!(spec.weight)),
                    ("k", json!(spec.k())),
                    ("polarization", r.to_json()),
                ]),
            ))
        }
        DocumentKind::Phs => {
            let p = doc.phs()?;
            Ok(Outcome::checked(true, obj(vec![("kind", json!("phs")), ("phs", p.phs.to_json())])))
        }
        DocumentKind::Model => {
            let p = doc.model()?;
            let t = curvature_from_model(&p.model);
            Ok(Outcome::checked(
                true,
                obj(vec![
                    ("kind", json!("model")),
                    ("unitary", json!(p.model.is_unitary())),
                    ("nakano", t.nakano_definiteness().to_json()),
                    ("tangentRank", json!(tangent_rank(&p.model))),
                ]),
            ))
        }
        DocumentKind::Subspace => {
            let s = doc.subspace()?;
            let dim = Subspace::span(s.ambient, &s.basis).dim();
            Ok(Outcome::checked(true, obj(vec![("kind", json!("subspace")), ("ambient", json!(s.ambient)), ("dim", json!(dim))])))
        }
        DocumentKind::Alpha => {
            let a = doc.alpha()?;
            Ok(Outcome::checked(true, obj(vec![("kind", json!("alpha")), ("alpha", io::qvec_to_json(&a.alpha))])))
        }
    }
}

fn stratum_or_all(cli: &Cli, spec: &PolarizedOrbitSpec) -> Result<Vec<usize>> {
    Ok(indices(cli, cli.stratum.as_ref(), spec.k(), "stratum")?.unwrap_or_else(|| (0..spec.k()).collect()))
}

fn weight(cli: &Cli, spec: &PolarizedOrbitSpec) -> Result<Outcome> {
    let s = stratum_or_all(cli, spec)?;
    let n = spec.sum_over(&s);
    let w = weight_filtration(&n, spec.weight)?;
    let holds = satisfies_weight_properties(&n, &w, spec.weight);
    let steps: Vec<Value> = (w.lo()..=w.hi())
        .map(|k| {
            let sub = w.get(k);
            json!({"k": k, "dim": sub.dim(), "basis": sub.basis().iter().map(|v| io::qvec_to_json(v)).collect::<Vec<_>>()})
        })
        .collect();
    let graded: Vec<Value> = (w.lo()..=w.hi()).map(|k| json!({"k": k, "dim": w.graded_dim(k)})).collect();
    Ok(Outcome::checked(
        holds,
        obj(vec![
            ("stratum", json!(one_based(&s))),
            ("center", json!(spec.weight)),
            ("filtration", json!(steps)),
            ("gradedDims", json!(graded)),
            ("propertiesHold", json!(holds)),
        ]),
    ))
}

fn sl2(cli: &Cli, spec: &PolarizedOrbitSpec) -> Result<Outcome> {
    let s = stratum_or_all(cli, spec)?;
    let n = spec.sum_over(&s);
    let (_, grading, triple) = sl2_for(&n, spec.weight, SplittingRule::Echelon)?;
    let holds = triple.relations_hold();
    let eigen: Vec<Value> = grading.spaces.iter().map(|(k, b)| json!({"eigenvalue": k, "dim": b.len()})).collect();
    Ok(Outcome::checked(
        holds,
        obj(vec![
            ("stratum", json!(one_based(&s))),
            ("Y", io::qmat_to_json(&grading.y)),
            ("yShifted", io::qmat_to_json(&triple.y)),
            ("nPlus", io::qmat_to_json(&triple.n_plus)),
            ("nMinus", io::qmat_to_json(&triple.n_minus)),
            ("eigenspaces", json!(eigen)),
            ("relationsHold", json!(holds)),
        ]),
    ))
}

fn bigrading(cli: &Cli, spec: &PolarizedOrbitSpec) -> Result<Outcome> {
    let s = stratum_or_all(cli, spec)?;
    let (w, f, bg) = stratum_lmhs(spec, &s)?;
    let checks = bg.check(&w.map_field(|x: &Rational| Gaussian::real(x.clone())), &f);
    let pieces: Vec<Value> = bg
        .pieces
        .iter()
        .map(|((p, q), sub)| {
            json!({"p": p, "q": q, "dim": sub.dim(), "basis": sub.basis().iter().map(|v| io::cvec_to_json(v)).collect::<Vec<_>>()})
        })
        .collect();
    let r_split = bg.is_r_split();
    Ok(Outcome::checked(
        checks.all() && r_split,
        obj(vec![
            ("stratum", json!(one_based(&s))),
            ("pieces", json!(pieces)),
            ("rSplit", json!(r_split)),
            (
                "checks",
                json!({
                    "directSum": checks.direct_sum,
                    "weightCompatible": checks.weight_compatible,
                    "hodgeCompatible": checks.hodge_compatible,
                    "conjugationCompatible": checks.conjugation_compatible,
                }),
            ),
        ]),
    ))
}

fn rwfp(cli: &Cli, spec: &PolarizedOrbitSpec) -> Result<Outcome> {
    let k = spec.k();
    let pairs: Vec<(Vec<usize>, Vec<usize>)> = match indices(cli, cli.stratum.as_ref(), k, "stratum")? {
        Some(a) => {
            let j = indices(cli, cli.superset.as_ref(), k, "superset")?.unwrap_or_else(|| (0..k).collect());
            let b: Vec<usize> = j.iter().copied().filter(|x| !a.contains(x)).collect();
            vec![(a, b)]
        }
        None => (0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (vec![i], vec![j]))).collect(),
    };
    let mut all = true;
    let mut out = Vec::new();
    for (a, b) in pairs {
        let r = relative_weight_filtration_check(&spec.sum_over(&a), &spec.sum_over(&b), spec.weight)?;
        all &= r.holds;
        out.push(json!({
            "a": one_based(&a),
            "b": one_based(&b),
            "holds": r.holds,
            "pieces": r.pieces.iter().map(|p| json!({"k": p.k, "dim": p.dim, "holds": p.holds})).collect::<Vec<_>>(),
        }));
    }
    Ok(Outcome::checked(all, obj(vec![("checks", json!(out))])))
}

fn metric_poly(spec: &PolarizedOrbitSpec) -> Result<Outcome> {
    let mp = hodge_metric_polynomial(spec)?;
    let mm = hodge_metric_matrix(spec)?;
    let ratio = mm.det().proportionality(&mp.p.to_gaussian());
    let det_matches = ratio.as_ref().is_some_and(|c| c.is_real() && c.re.is_positive());
    let mpi = m_pi_summary(spec, &mp)?;
    let mpi_json: Vec<Value> = mpi.reports.iter().map(|r| r.to_json()).collect();
    Ok(Outcome::checked(
        det_matches && mp.p.is_homogeneous() && mpi.pass(),
        obj(vec![
            ("polynomial", json!(mp.render())),
            ("metric", mp.to_json()),
            ("matrix", mm.to_json()),
            ("detMatchesPolynomial", json!(det_matches)),
            (
                "detRatio",
                ratio.filter(|c| c.is_real()).map_or(Value::Null, |c| io::exact_and_decimal(&c.re)),
            ),
            ("mPi", json!(mpi_json)),
            ("newtonPolytopeInHull", json!(mpi.outside_hull.is_empty())),
        ]),
    ))
}

fn orbit_chern(cli: &Cli, spec: &PolarizedOrbitSpec) -> Result<Outcome> {
    let mp = hodge_metric_polynomial(spec)?;
    let x = match &cli.point {
        Some(p) => parse_rationals(p).map_err(Error::InvalidArgument)?,
        None => vec![Rational::one(); spec.k()],
    };
    if x.len() != spec.k() {
        return Err(Error::InvalidArgument(format!("--point needs {} coordinates", spec.k())));
    }
    let sample = chern_form_at(&mp.p, &x)?;
    Ok(Outcome::ok(obj(vec![("polynomial", json!(mp.render())), ("sample", sample.to_json())])))
}

fn limit_check(cli: &Cli, spec: &PolarizedOrbitSpec) -> Result<Outcome> {
    let s = required_stratum(cli, spec.k())?;
    let rays = default_rays(spec.k(), &s, cli.rays, cli.seed);
    let report = restriction_limit_check(spec, &s, &rays, &cli.scales.scales())?;
    Ok(Outcome::checked(report.pass, report.to_json()))
}

/// Nonempty proper subsets of `0..k` in binary order.
fn proper_subsets(k: usize) -> Vec<Vec<usize>> {
    (1..(1usize << k).saturating_sub(1)).map(|m| (0..k).filter(|i| m >> i & 1 == 1).collect()).collect()
}

fn factorize(cli: &Cli, spec: &PolarizedOrbitSpec) -> Result<Outcome> {
    let mp = hodge_metric_polynomial(spec)?;
    let strata = match indices(cli, cli.stratum.as_ref(), spec.k(), "stratum")? {
        Some(s) => vec![s],
        None => proper_subsets(spec.k()),
    };
    let out = strata
        .iter()
        .map(|s| stratum_factorization(&mp, spec, s).map(|f| f.to_json()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome::checked(true, obj(vec![("polynomial", json!(mp.render())), ("factorizations", json!(out))])))
}

fn orbit_monomial_map(spec: &PolarizedOrbitSpec) -> Result<Outcome> {
    let rel = orbit_relation_space(spec)?;
    let m = monomial_map(spec)?;
    let kernel_ok = m.kernel() == rel.subspace();
    Ok(Outcome::checked(
        kernel_ok,
        obj(vec![("relations", rel.to_json()), ("map", m.to_json()), ("kernelEqualsRelations", json!(kernel_ok))]),
    ))
}

fn subspace_generators(doc: &ProblemDocument) -> Result<Outcome> {
    let s = doc.subspace()?;
    let gens = nonnegative_generators(s.ambient, &s.basis)?;
    let m = MonomialMap::new(s.ambient, gens)?;
    Ok(Outcome::ok(obj(vec![("map", m.to_json())])))
}

fn stratum_map(cli: &Cli, spec: &PolarizedOrbitSpec) -> Result<Outcome> {
    let s = required_stratum(cli, spec.k())?;
    let rel = stratum_relation_space(spec, &s)?;
    let m = stratum_monomial_map(spec, &s)?;
    Ok(Outcome::ok(obj(vec![("stratum", json!(one_based(&s))), ("relations", rel.to_json()), ("map", m.to_json())])))
}

fn refine_map(m: &MonomialMap) -> Result<Outcome> {
    let r = connected_refinement(m)?;
    let composite = composite_exponents(&r)?;
    let composes = composite == m.exponents;
    let saturated = is_saturated(&r.refined);
    Ok(Outcome::checked(
        composes && saturated,
        obj(vec![
            ("input", m.to_json()),
            ("refinement", r.to_json()),
            ("compositeExponents", json!(composite)),
            ("composesToInput", json!(composes)),
            ("refinedSaturated", json!(saturated)),
        ]),
    ))
}

fn compat(cli: &Cli, spec: &PolarizedOrbitSpec) -> Result<Outcome> {
    let k = spec.k();
    let pairs = match (indices(cli, cli.stratum.as_ref(), k, "stratum")?, indices(cli, cli.superset.as_ref(), k, "superset")?) {
        (Some(i), Some(j)) => vec![(i, j)],
        (None, None) => nested_pairs(k),
        _ => return Err(Error::InvalidArgument("compat needs both --stratum and --superset, or neither".into())),
    };
    let reports = pairs.iter().map(|(i, j)| compatibility_check(spec, i, j)).collect::<Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.pass);
    let violations: Vec<Value> = reports
        .iter()
        .flat_map(|r| {
            r.entries.iter().filter(|e| !e.holds).map(move |e| {
                json!({"stratum": one_based(&r.stratum), "superset": one_based(&r.superset), "relation": io::qvec_to_json(&e.relation)})
            })
        })
        .collect();
    Ok(Outcome::checked(
        pass,
        obj(vec![
            ("checks", json!(reports.iter().map(|r| r.to_json()).collect::<Vec<_>>())),
            ("violations", json!(violations)),
        ]),
    ))
}

fn model_curvature(cli: &Cli, doc: &ProblemDocument) -> Result<Outcome> {
    let p = doc.model()?;
    let base_rank = p.model.rank_e;
    let model = if cli.power == 1 { p.model.clone() } else { sym_power_model(&p.model, cli.power)? };
    let t = curvature_from_model(&model);
    let semi = strong_semipositivity_check(std::slice::from_ref(&t), 16, cli.seed)?;
    let mut findings = vec![
        ("power", json!(cli.power)),
        ("dimT", json!(model.dim_t)),
        ("rankE", json!(model.rank_e)),
        ("rankG", json!(model.rank_g)),
        ("unitary", json!(model.is_unitary())),
        ("nakano", t.nakano_definiteness().to_json()),
        ("traceForm", inertia(&t.trace_form()).to_json()),
        ("tangentRank", json!(tangent_rank(&model))),
        ("semipositivity", semi.to_json()),
    ];
    let factors = match &cli.point {
        Some(s) => Some(parse_gaussian_vectors(s).map_err(Error::InvalidArgument)?),
        None => p.point.clone().map(|e| vec![e; cli.power as usize]),
    };
    if let Some(factors) = factors {
        let e = if cli.power == 1 {
            match factors.as_slice() {
                [v] => v.clone(),
                _ => return Err(Error::InvalidArgument("--point takes a single vector without --power".into())),
            }
        } else {
            if factors.len() != cli.power as usize || factors.iter().any(|f| f.len() != base_rank) {
                return Err(Error::InvalidArgument(format!(
                    "--point needs {} factors of length {base_rank} separated by ';'",
                    cli.power
                )));
            }
            sym_product(base_rank, &factors)?
        };
        findings.push(("point", io::cvec_to_json(&e)));
        findings.push(("projectivized", projectivized_chern_form_at_line(&model, &e)?.to_json()));
        findings.push(("flatDirections", flat_directions(&model, &e)?.to_json()));
    }
    Ok(Outcome::ok(obj(findings)))
}

fn model_chern(doc: &ProblemDocument) -> Result<Outcome> {
    let p = doc.model()?;
    let basis = p
        .subspace
        .ok_or_else(|| Error::InvalidArgument("chern on a model needs a \"subspace\" in the payload".into()))?;
    let v = chern_form_norm(&p.model, basis.len(), &basis)?;
    Ok(Outcome::ok(obj(vec![("chernForm", v.to_json())])))
}

fn top_block_for(cli: &Cli, p: &hodgecalc_core::document::PhsProblem) -> Result<Option<CMat>> {
    let n = p.phs.weight;
    let (rows, cols) = (p.phs.h(n - 1), p.phs.h(n));
    match (cli.rank, &p.xi) {
        (Some(r), _) => {
            if r > rows.min(cols) {
                return Err(Error::InvalidArgument(format!("--rank {r} exceeds min({rows}, {cols})")));
            }
            let mut b = CMat::zeros(rows, cols);
            for i in 0..r {
                b.set(i, i, Gaussian::one());
            }
            Ok(Some(b))
        }
        (None, xi) => Ok(xi.clone()),
    }
}

fn horizontal(cli: &Cli, doc: &ProblemDocument) -> Result<Outcome> {
    let p = doc.phs()?;
    let ge = graded_end_algebra(&p.phs)?;
    let mut findings = vec![("algebra", ge.to_json())];
    let min = sampled_quartic_minimum(&ge, 8, cli.seed)?;
    findings.push(("sampledQuarticMinimum", min.map_or(Value::Null, |m| io::exact_and_decimal(&m))));
    let mut pass = ge.bracket_respects_grading();
    if let Some(block) = top_block_for(cli, &p)? {
        let xi = xi_from_top_block(&ge, &block)?;
        let kd = kernel_dimension(&ge, &xi)?;
        let kd_direct = kernel_dimension_direct(&ge, &xi)?;
        let rank = block.rank();
        pass &= kd == kd_direct;
        findings.push(("xiTopBlock", io::cmat_to_json(&block)));
        findings.push(("rank", json!(rank)));
        findings.push(("maximalRank", json!(rank == block.rows().min(block.cols()))));
        findings.push(("kernelDimension", json!(kd)));
        findings.push(("kernelDimensionDirect", json!(kd_direct)));
        if rank > 0 {
            findings.push(("sectionalQuartic", sectional_quartic(&ge, &xi)?.to_json()));
            findings.push(("holomorphicSectional", bisectional_curvature(&ge, &xi, &xi)?.to_json()));
        }
    }
    Ok(Outcome::checked(pass, obj(findings)))
}

fn phs_curvature(doc: &ProblemDocument) -> Result<Outcome> {
    let p = doc.phs()?;
    let ge = graded_end_algebra(&p.phs)?;
    let xi_block = p.xi.clone().ok_or_else(|| Error::InvalidArgument("curvature on a phs needs \"xi\"".into()))?;
    let xi = xi_from_top_block(&ge, &xi_block)?;
    let eta = match &p.eta {
        Some(b) => xi_from_top_block(&ge, b)?,
        None => xi.clone(),
    };
    let b = bisectional_curvature(&ge, &eta, &xi)?;
    Ok(Outcome::ok(obj(vec![("bisectional", b.to_json())])))
}

fn schur(cli: &Cli) -> Result<Outcome> {
    let lambda = cli.partition.as_ref().ok_or_else(|| Error::InvalidArgument("schur needs --partition".into()))?;
    let rank = cli.rank.unwrap_or_else(|| lambda.0.iter().copied().filter(|x| *x > 0).sum::<i64>().max(1) as usize);
    let s = schur_polynomial(&lambda.0, rank)?;
    Ok(Outcome::ok(obj(vec![
        ("partition", json!(lambda.0)),
        ("rank", json!(rank)),
        ("polynomial", json!(s.render())),
        ("symbol", s.to_json()),
    ])))
}

fn segre(cli: &Cli) -> Result<Outcome> {
    let d = cli.degree.ok_or_else(|| Error::InvalidArgument("segre needs --degree".into()))?;
    let rank = cli.rank.unwrap_or(d.max(1));
    let s = segre_polynomial(d, rank);
    let seq: Vec<String> = segre_sequence(d, rank).iter().map(|x| x.render()).collect();
    let recursion = (1..=d).all(|q| grothendieck_residual(q, rank).poly.is_zero());
    Ok(Outcome::checked(
        recursion,
        obj(vec![
            ("degree", json!(d)),
            ("rank", json!(rank)),
            ("polynomial", json!(s.render())),
            ("sequence", json!(seq)),
            ("grothendieckRelationHolds", json!(recursion)),
        ]),
    ))
}

fn multiplier(cli: &Cli, doc: Option<&ProblemDocument>) -> Result<Outcome> {
    let (alpha, doc_bound) = match (&cli.alpha, doc) {
        (Some(a), _) => (a.0.clone(), None),
        (None, Some(d)) if d.kind == DocumentKind::Alpha => {
            let a = d.alpha()?;
            (a.alpha, a.degree_bound)
        }
        (None, Some(d)) => return Err(wrong_kind(Command::MultiplierIdeal, d)),
        (None, None) => return Err(Error::InvalidArgument("multiplier-ideal needs --alpha or an alpha document".into())),
    };
    if alpha.is_empty() || alpha.iter().any(|a| !a.is_positive()) {
        return Err(Error::InvalidArgument("alpha entries must be positive".into()));
    }
    let ideal = multiplier_ideal_monomials(&alpha, cli.degree_bound.or(doc_bound))?;
    Ok(Outcome::ok(ideal.to_json()))
}

/// Options that influence the findings, for the input digest.
pub fn options_json(cli: &Cli) -> Value {
    json!({
        "stratum": cli.stratum.as_ref().map(|s| one_based(&s.0)),
        "superset": cli.superset.as_ref().map(|s| one_based(&s.0)),
        "rays": cli.rays,
        "scales": cli.scales.to_string(),
        "seed": cli.seed,
        "point": cli.point,
        "partition": cli.partition.as_ref().map(|p| p.0.clone()),
        "rank": cli.rank,
        "degree": cli.degree,
        "alpha": cli.alpha.as_ref().map(|a| a.0.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        "degreeBound": cli.degree_bound,
        "power": cli.power,
    })
}
