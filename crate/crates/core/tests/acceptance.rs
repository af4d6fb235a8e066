//! One line per acceptance criterion; the test fails if any criterion does.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use clap::Parser;
use serde_json::Value;

use arrcert::arrangement::{g31, gen_ceva, gen_hexagonal, intersection_lattice, HexagonVariant};
use arrcert::badcurve::{
    collinear_subsets, common_elements, conics_with_min_incidence, pairwise_overlap_table, star_configuration_check,
    BoundKind, DegreeStatus, ExclusionReason, StarVerdict, VectorVerdict,
};
use arrcert::blowup::{closed_form_slack, qdiv_dot, qdiv_self, canonical_divisor, Component, DivisorModel};
use arrcert::certify::{
    ceva_citations, certify_vanishing, milnor_sweep, Aggregate, CertifyOptions, Criterion, NmOutcome, OrderOutcome,
    Status, SystemInput,
};
use arrcert::cli::{resolve_builtin, run, Cli};
use arrcert::exactgeom::rational::int;
use arrcert::exactgeom::{curve_system, ProjPoint};
use arrcert::localsys::{milnor_order_filter, SystemSpec};
use arrcert::badcurve::DegreePolicy;
use common::props;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn cli(args: &[&str]) -> Result<Value, String> {
    let parsed = Cli::try_parse_from(std::iter::once("arrcert").chain(args.iter().copied())).map_err(|e| e.to_string())?;
    run(&parsed).map_err(|e| e.to_string())
}

fn within(t: Instant, limit: u64) -> Result<Duration, String> {
    let e = t.elapsed();
    check(e < Duration::from_secs(limit), format!("took {e:?}, limit {limit} s"))?;
    Ok(e)
}

fn lattice_reproduction() -> Outcome {
    let t = Instant::now();
    let v = cli(&["lattice", "--builtin", "g31-section"])?;
    let e = within(t, 10)?;
    let totals = &v["totals"];
    check(
        totals["2"] == 360 && totals["3"] == 320 && totals["6"] == 30,
        format!("totals {totals}"),
    )?;
    let profile = &v["uniform_line_profile"];
    check(
        profile["2"] == 12 && profile["3"] == 16 && profile["6"] == 3,
        format!("per-line profile {profile}"),
    )?;
    let count = |m: &str| totals[m].as_u64().unwrap_or(0);
    check(
        count("2") + 3 * count("3") + 15 * count("6") == 1770
            && v["identities"]["pair_sum"] == 1770
            && v["identities"]["line_pairs"] == 1770,
        "double counting",
    )?;
    check(v["identities"]["hold"] == true, "per-line identity")?;
    Ok(format!("360/320/30, 12/16/3 per line, 1770 pairs, {e:?}"))
}

fn point_matching() -> Outcome {
    let t = Instant::now();
    let a = g31::published_plane_section();
    let l = intersection_lattice(&a);
    let computed: BTreeSet<ProjPoint> = l.points_of_multiplicity(6).iter().map(|&p| l.point(p).point.clone()).collect();
    let published: Vec<ProjPoint> = g31::published_points();
    let e = within(t, 10)?;
    let missing: Vec<usize> = (0..30).filter(|&j| !computed.contains(&published[j])).map(|j| j + 1).collect();
    check(computed.len() == 30, format!("{} sextuple points", computed.len()))?;
    check(
        missing.is_empty(),
        format!("published points not among the computed sextuple points: p{missing:?}"),
    )?;
    Ok(format!("30/30 equal, {e:?}"))
}

fn collinear_triples() -> Outcome {
    let t = Instant::now();
    let pts = g31::corrected_points();
    let triples = collinear_subsets(&pts, 3);
    let quads = collinear_subsets(&pts, 4);
    let quads24 = collinear_subsets(&pts[..24], 4);
    let e = within(t, 5)?;
    check(common::one_based(&triples.sets) == common::triples_oracle(), "triples differ from the published list")?;
    check(triples.subsets_covered == 4060, "triple count")?;
    check(quads.sets.is_empty() && quads.subsets_covered == 27_405, "quadruples")?;
    check(quads24.sets.is_empty() && quads24.subsets_covered == 10_626, "quadruples in p1..p24")?;
    Ok(format!("60 triples, no quadruples (27405 and 10626 subsets), {e:?}"))
}

fn conic_sets() -> Outcome {
    let t = Instant::now();
    let pts = g31::corrected_points();
    let scan = conics_with_min_incidence(&pts, 12);
    let mut sets: Vec<Vec<usize>> = scan.conics.iter().map(|c| c.points.clone()).collect();
    sets.sort();
    let none13 = conics_with_min_incidence(&pts, 13).conics.is_empty();
    let none13_23 = conics_with_min_incidence(&pts[..23], 13).conics.is_empty();
    let e = within(t, 60)?;
    check(scan.systems == 142_506, format!("{} systems", scan.systems))?;
    check(common::one_based(&sets) == common::conics_oracle(), "conic sets differ from the published list")?;
    let table = pairwise_overlap_table(&sets);
    check(
        (0..10).all(|i| (0..10).all(|j| i == j || table[i][j] == 4)),
        "pairwise overlaps",
    )?;
    check(common_elements(&sets[..3]) == [0, 5], "first three share {1,6}")?;
    check(common_elements(&sets[7..]).is_empty(), "last three share nothing")?;
    check(none13 && none13_23, "a conic through 13 points")?;
    Ok(format!("10 sets, overlaps 4, {{1,6}} and {{}}, none at 13, {e:?}"))
}

fn star_configurations() -> Outcome {
    let t = Instant::now();
    let v = cli(&["incidence", "--builtin", "g31-section", "--points", "mult=6", "--threshold", "12", "--star"])?;
    let e = within(t, 5)?;
    let stars = v["conics"]["star"].as_array().ok_or("no star verdicts")?;
    check(stars.len() == 10, "ten verdicts")?;
    check(stars.iter().all(|s| s["verdict"] == "not_star"), "a star configuration")?;
    let trace = &stars[0]["trace"];
    let first = serde_json::json!([
        {"pair": [1, 2], "center": 3},
        {"pair": [1, 5], "center": 4},
    ]);
    let got: Vec<Value> = trace
        .as_array()
        .ok_or("no trace")?
        .iter()
        .map(|s| serde_json::json!({"pair": s["pair"], "center": s["center"]}))
        .collect();
    check(Value::Array(got.clone()) == first, format!("first trace {got:?}"))?;
    // the library check on the published coordinates agrees
    let a = g31::gen_g31_section();
    let l = intersection_lattice(&a);
    let idx: Vec<usize> = a.marked_points().iter().map(|p| l.index_of(p).unwrap()).collect();
    let s = SystemInput::milnor(&l, 6).map_err(|e| e.to_string())?;
    let set: Vec<usize> = common::G31_CONIC_SETS[0].iter().map(|&j| idx[j - 1]).collect();
    check(
        matches!(star_configuration_check(&set, &l, &s.partition), StarVerdict::NotStar { .. }),
        "library verdict",
    )?;
    Ok(format!("10 not_star, first trace 1,2 -> 3 then 1,5 -> 4, {e:?}"))
}

fn curve_nonexistence() -> Outcome {
    let t = Instant::now();
    let pts = g31::corrected_points();
    let cond = |n: usize| pts[..n].iter().map(|p| (p.clone(), 1)).collect::<Vec<_>>();
    let cubic = curve_system(g31::ORDER, 3, &cond(10)).dimension;
    let quartic = curve_system(g31::ORDER, 4, &cond(15)).dimension;
    let e = within(t, 1)?;
    check(
        cubic == 0 && quartic == 0,
        format!("dimensions: cubics through p1..p10 {cubic}, quartics through p1..p15 {quartic}"),
    )?;
    Ok(format!("both 0, {e:?}"))
}

fn intersection_numbers() -> Outcome {
    let a = g31::gen_g31_section();
    let l = intersection_lattice(&a);
    let s = SystemInput::milnor(&l, 6).map_err(|e| e.to_string())?;
    let model = DivisorModel::blow_up_multiple_points(&l);
    let d = canonical_divisor(&l, &s.partition);
    let slack_set = |cs: Vec<Component>| cs.iter().map(|&c| qdiv_dot(&model, &d, c)).collect::<BTreeSet<_>>();
    let lines = slack_set((0..l.n()).map(Component::Line).collect());
    let triples = slack_set(l.points_of_multiplicity(3).into_iter().map(Component::Exc).collect());
    let sextuples = slack_set(l.points_of_multiplicity(6).into_iter().map(Component::Exc).collect());
    check(lines == BTreeSet::from([int(10)]), format!("line slacks {lines:?}"))?;
    check(triples == BTreeSet::from([int(2)]), format!("triple slacks {triples:?}"))?;
    check(sextuples == BTreeSet::from([int(6)]), format!("sextuple slacks {sextuples:?}"))?;
    check(qdiv_self(&model, &d) == int(1240), "D'^2")?;
    // closed forms against bilinear evaluation, every builtin and Milnor order
    let mut checked = 0;
    for name in [
        "g31-section",
        "ceva:3",
        "ceva:4",
        "ceva:5",
        "ceva:6",
        "hexagon:on-conic",
        "hexagon:off-conic",
        "near-pencil:3:3",
        "near-pencil:2:4",
        "near-pencil:4:2",
    ] {
        let a = resolve_builtin(name).map_err(|e| e.to_string())?;
        let l = intersection_lattice(&a);
        let model = DivisorModel::blow_up_multiple_points(&l);
        for k in (2..=a.n() as u32).filter(|k| (a.n() as u32).is_multiple_of(*k)) {
            let s = SystemInput::milnor(&l, k).map_err(|e| e.to_string())?;
            let d = canonical_divisor(&l, &s.partition);
            for c in model.components() {
                let closed = closed_form_slack(&l, &s.partition, c).ok_or(format!("{name}: no closed form for {c}"))?;
                check(qdiv_dot(&model, &d, c) == int(closed), format!("{name} order {k} at {c}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("10/2/6, D'^2 = 1240, {checked} closed-form checks"))
}

fn end_to_end_g31() -> Outcome {
    let t = Instant::now();
    let v = cli(&["milnor", "--builtin", "g31-section", "--assume-excluded", "2,3:MPP"])?;
    let e = within(t, 120)?;
    check(
        v["aggregate"]["verdict"] == "monodromy identity on H¹",
        format!("aggregate {}", v["aggregate"]),
    )?;
    let orders = v["orders"].as_array().ok_or("no orders")?;
    let six = orders.iter().find(|o| o["order"] == 6).ok_or("order 6 missing")?;
    check(six["outcome"] == "certified" && six["detail"] == "full_pipeline", format!("order 6: {}", six["outcome"]))?;
    let ex = &six["report"]["evidence"]["exclusion"];
    check(ex["bound"] == serde_json::json!({"kind": "proven", "value": 4}), format!("bound {}", ex["bound"]))?;
    check(ex["complete"] == true, "exclusion incomplete")?;
    check(
        ex["degrees"].as_array().is_some_and(|d| d.len() == 4 && d.iter().all(|x| x["status"] == "excluded")),
        "degrees 1..4 excluded",
    )?;
    // the same through the library, with the evidence rechecked
    let a = g31::gen_g31_section();
    let l = intersection_lattice(&a);
    let s = SystemInput::milnor(&l, 6).map_err(|e| e.to_string())?;
    let r = certify_vanishing(&a, &l, &s, &CertifyOptions::default());
    check(
        arrcert::certify::report::reverify_report(&arrcert::certify::report::report_json(&r), &a, &l)
            .map_err(|e| e.to_string())?,
        "re-verification",
    )?;
    let p = r.evidence.pipeline.ok_or("no pipeline")?;
    check(matches!(p.nm, NmOutcome::Certificate(_)), "NM")?;
    let ex = p.exclusion.ok_or("no exclusion")?;
    check(ex.bound == Some(BoundKind::Proven(4)), "bound")?;
    let reasons: Vec<&DegreeStatus> = ex.degrees.iter().map(|d| &d.status).collect();
    Ok(format!("identity, order 6 via full_pipeline, degrees {reasons:?}, {e:?}"))
}

fn ceva_sweep() -> Outcome {
    let mut lines = Vec::new();
    for m in 3..=6u32 {
        let t = Instant::now();
        let a = gen_ceva(m).map_err(|e| e.to_string())?;
        let l = intersection_lattice(&a);
        let options = CertifyOptions {
            citations: ceva_citations(m),
            ..Default::default()
        };
        let r = milnor_sweep(&a, &l, &options).map_err(|e| e.to_string())?;
        within(t, 30)?;
        check(
            r.orders.iter().map(|o| o.order).collect::<BTreeSet<_>>() == milnor_order_filter(&l),
            "orders follow the filter",
        )?;
        for o in &r.orders {
            if o.order == 3 {
                let want = if m % 3 == 0 { 2 } else { 1 };
                check(
                    o.outcome == OrderOutcome::Undetermined && o.citation.as_ref().map(|c| c.dimension) == Some(want),
                    format!("Ceva({m}) order 3: {:?}", o.outcome),
                )?;
            } else if m % o.order == 0 {
                check(
                    o.outcome == OrderOutcome::Certified(Criterion::SingleBadPoint),
                    format!("Ceva({m}) order {}: {:?}", o.order, o.outcome),
                )?;
            }
        }
        check(matches!(r.aggregate, Aggregate::Undetermined(_)), "order 3 stays open")?;
        lines.push(format!(
            "m={m}: {}",
            r.orders
                .iter()
                .map(|o| format!("{}={}", o.order, match &o.outcome {
                    OrderOutcome::Certified(_) => "certified",
                    OrderOutcome::ExternallyExcluded(_) => "assumed",
                    OrderOutcome::Undetermined => "open",
                }))
                .collect::<Vec<_>>()
                .join(",")
        ));
    }
    Ok(lines.join("; "))
}

fn soundness_negatives() -> Outcome {
    let user4 = CertifyOptions {
        policy: DegreePolicy::ProvenOr(4),
        ..Default::default()
    };
    // hexagon with the vertices on a conic
    let a = gen_hexagonal(HexagonVariant::OnConic).map_err(|e| e.to_string())?;
    let l = intersection_lattice(&a);
    let s = SystemInput::from_spec(&SystemSpec::Symbolic(None), &a, &l).map_err(|e| e.to_string())?;
    let r = certify_vanishing(&a, &l, &s, &user4);
    check(r.status == Status::Inconclusive, "on-conic status")?;
    let ex = r.evidence.pipeline.as_ref().and_then(|p| p.exclusion.as_ref()).ok_or("on-conic exclusion")?;
    let conic = ex
        .candidates()
        .find(|c| c.vector.degree == 2)
        .ok_or("no conic candidate")?;
    check(
        matches!(&conic.verdict, VectorVerdict::Candidate { dimension: 1, .. }) && conic.vector.mults.len() == 6,
        "conic through the six vertices",
    )?;
    // vertices off a conic
    let a = gen_hexagonal(HexagonVariant::OffConic).map_err(|e| e.to_string())?;
    let l = intersection_lattice(&a);
    let s = SystemInput::from_spec(&SystemSpec::Symbolic(None), &a, &l).map_err(|e| e.to_string())?;
    let r = certify_vanishing(&a, &l, &s, &user4);
    let ex = r.evidence.pipeline.as_ref().and_then(|p| p.exclusion.as_ref()).ok_or("off-conic exclusion")?;
    check(ex.candidates().next().is_none(), "off-conic candidates")?;
    let d2 = &ex.degrees[1];
    check(
        matches!(d2.status, DegreeStatus::Excluded(_))
            && d2.vectors.iter().all(|v| matches!(v.verdict, VectorVerdict::EmptyLinearSystem { .. })),
        "off-conic degree 2",
    )?;
    let quartic = ex.degrees[3]
        .vectors
        .iter()
        .find(|v| v.vector.mults.len() == 6 && v.vector.mults.iter().all(|&(_, m)| m == 2))
        .ok_or("no six-double-point quartic vector")?;
    check(
        matches!(quartic.verdict, VectorVerdict::EmptyLinearSystem { .. }),
        "six-double-point quartic",
    )?;
    check(r.status == Status::Inconclusive, "a user bound never certifies")?;
    // near-pencil with integral vertex sums
    let a = resolve_builtin("near-pencil:3:3").map_err(|e| e.to_string())?;
    let l = intersection_lattice(&a);
    let s = SystemInput::exponents(
        &l,
        arrcert::localsys::LocalSystem::new(vec![arrcert::exactgeom::rational::rat(1, 3); 9]).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    check(s.partition.t_eq1.len() == 3, "three integral vertex sums")?;
    let r = certify_vanishing(&a, &l, &s, &CertifyOptions::default());
    check(r.status == Status::Inconclusive, "near-pencil status")?;
    let p = r.evidence.pipeline.as_ref().ok_or("near-pencil pipeline")?;
    let ex = p.exclusion.as_ref().ok_or("near-pencil exclusion")?;
    check(
        ex.degrees.len() == 1 && ex.degrees[0].status == DegreeStatus::Candidate,
        "transversal candidate",
    )?;
    let fail = p.aux_checks.first().ok_or("no aux check")?.result.as_ref().err().ok_or("aux NM passed")?;
    check(fail.violations.iter().any(|(c, _)| *c == Component::Aux(0)), "failure names L0")?;
    let _ = ExclusionReason::NoFeasibleVector;
    Ok("hexagon conic candidate; off-conic d=2 and 2^6 quartic empty; transversal L0 fails NM".into())
}

fn property_suites() -> Outcome {
    let n = 24;
    props::run(n, props::field_triple(), |(_, a, b, c)| props::check_field_axioms(&a, &b, &c))
        .map_err(|e| format!("field axioms: {e}"))?;
    props::run(n, props::invariance_input(), |i| props::check_projective_invariance(&i))
        .map_err(|e| format!("projective invariance: {e}"))?;
    props::run(n, props::arrangement(), |a| props::check_double_counting(&a))
        .map_err(|e| format!("double counting: {e}"))?;
    props::run(12, props::builtin_with_exponents(), |(name, ex)| {
        props::check_certificate_reverification(&name, &ex)
    })
    .map_err(|e| format!("re-verification: {e}"))?;
    props::run(n, props::conic_points(), |(p, t)| props::check_conic_oracle(&p, t))
        .map_err(|e| format!("conic oracle: {e}"))?;
    props::run(n, props::inequality_system(), |(k, rows)| props::check_fm_vs_grid(k, &rows))
        .map_err(|e| format!("FM vs grid: {e}"))?;
    props::run(n, props::symmetric_matrix(), |m| props::check_fm_vs_nsd(&m))
        .map_err(|e| format!("FM vs NSD: {e}"))?;
    Ok("field, invariance, double counting, re-verification, conic oracle, FM vs grid and NSD".into())
}

#[test]
fn acceptance() {
    let criteria: [Check; 11] = [
        ("lattice reproduction", lattice_reproduction),
        ("point matching", point_matching),
        ("collinear triples", collinear_triples),
        ("conic sets", conic_sets),
        ("star configurations", star_configurations),
        ("curve non-existence", curve_nonexistence),
        ("intersection numbers", intersection_numbers),
        ("end-to-end G31", end_to_end_g31),
        ("Ceva sweep", ceva_sweep),
        ("soundness negatives", soundness_negatives),
        ("property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
