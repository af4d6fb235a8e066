//! JSON form of vanishing and sweep reports, and re-verification of a
//! serialized report against the arrangement it names.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::sweep::{Aggregate, MilnorReport, OrderOutcome};
use super::{
    bad_lines_through, criterion_cdo, AuxCheck, Evidence, NmOutcome, Pipeline, SystemInput, VanishingReport,
};
use crate::arrangement::{Arrangement, IntersectionLattice};
use crate::badcurve::{
    degree_bound_analysis, BoundKind, CurveExclusionReport, DegreeReport, DegreeStatus, ExclusionOptions,
    ExclusionReason, MultiplicityVector, VectorOutcome, VectorVerdict,
};
use crate::blowup::{divisor_connected, verify_nm, Component, DivisorModel, Infeasibility, NmCertificate, QDivisor};
use crate::error::{Error, Result};
use crate::exactgeom::linalg::Row;
use crate::exactgeom::rational::{fmt_rational, parse_rational};
use crate::exactgeom::Rational;
use crate::localsys::parse_system_spec;

pub const SCHEMA_VERSION: &str = "1";

fn rat(r: &Rational) -> Value {
    Value::String(fmt_rational(r))
}

fn component_map<'a>(it: impl Iterator<Item = (&'a Component, &'a Rational)>) -> Value {
    Value::Object(it.map(|(c, r)| (c.to_string(), rat(r))).collect())
}

fn components(cs: &[Component]) -> Value {
    cs.iter().map(|c| Value::String(c.to_string())).collect()
}

pub fn divisor_json(d: &QDivisor) -> Value {
    component_map(d.iter())
}

pub fn nm_certificate_json(c: &NmCertificate) -> Value {
    json!({
        "divisor": divisor_json(&c.divisor),
        "slacks": component_map(c.slacks.iter()),
        "self_intersection": rat(&c.self_intersection),
    })
}

fn infeasibility_json(inf: &Infeasibility) -> Value {
    match inf {
        Infeasibility::Farkas { block, multipliers } => json!({
            "kind": "farkas",
            "block": components(block),
            "multipliers": multipliers.iter().map(rat).collect::<Vec<_>>(),
        }),
        Infeasibility::NegativeSemidefinite { block } => json!({
            "kind": "negative_semidefinite",
            "block": components(block),
        }),
    }
}

fn row_json(row: &Row) -> Value {
    row.iter().map(|c| Value::String(c.to_string())).collect()
}

fn pairs(v: &[(usize, u32)]) -> Value {
    v.iter().map(|&(p, m)| json!([p, m])).collect()
}

fn vector_json(v: &VectorOutcome) -> Value {
    let mut o = Map::new();
    o.insert("mults".into(), pairs(&v.vector.mults));
    match &v.verdict {
        VectorVerdict::EmptyLinearSystem { prefix } => {
            o.insert("verdict".into(), "empty_linear_system".into());
            o.insert("prefix".into(), pairs(prefix));
        }
        VectorVerdict::DeltaGenus { delta_sum, genus_bound } => {
            o.insert("verdict".into(), "delta_genus".into());
            o.insert("delta_sum".into(), (*delta_sum).into());
            o.insert("genus_bound".into(), (*genus_bound).into());
        }
        VectorVerdict::Candidate { dimension, basis } => {
            o.insert("verdict".into(), "candidate".into());
            o.insert("dimension".into(), (*dimension).into());
            o.insert("basis".into(), basis.iter().map(row_json).collect());
        }
    }
    Value::Object(o)
}

pub fn exclusion_json(r: &CurveExclusionReport) -> Value {
    let bound = match r.bound {
        Some(BoundKind::Proven(d)) => json!({"kind": "proven", "value": d}),
        Some(BoundKind::User(d)) => json!({"kind": "user", "value": d}),
        None => Value::Null,
    };
    let degrees: Vec<Value> = r
        .degrees
        .iter()
        .map(|d| {
            let (status, reason) = match &d.status {
                DegreeStatus::Excluded(why) => ("excluded", Value::String(why.as_str().into())),
                DegreeStatus::Candidate => ("candidate", Value::Null),
                DegreeStatus::Skipped(why) => ("skipped", Value::String(why.clone())),
            };
            json!({
                "degree": d.degree,
                "status": status,
                "reason": reason,
                "vectors": d.vectors.iter().map(vector_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "bound": bound,
        "analysis": {
            "per_line": r.analysis.per_line,
            "multiplicity": r.analysis.multiplicity,
            "full_support": r.analysis.full_support,
            "missing_point": r.analysis.missing_point,
        },
        "point_order": r.point_order,
        "complete": r.is_complete(),
        "degrees": degrees,
    })
}

fn aux_json(a: &AuxCheck) -> Value {
    let result = match &a.result {
        Ok(c) => json!({"ok": true, "certificate": nm_certificate_json(c)}),
        Err(f) => json!({
            "ok": false,
            "nonpositive": components(&f.nonpositive),
            "violations": f.violations.iter().map(|(c, v)| json!([c.to_string(), fmt_rational(v)])).collect::<Vec<_>>(),
        }),
    };
    json!({"component": a.component.to_string(), "line": a.line.to_string(), "result": result})
}

fn pipeline_fields(p: &Pipeline, o: &mut Map<String, Value>) {
    match &p.nm {
        NmOutcome::Certificate(c) => {
            o.insert("nm_certificate".into(), nm_certificate_json(c));
        }
        NmOutcome::Infeasible(inf) => {
            o.insert("nm_infeasible".into(), infeasibility_json(inf));
        }
        NmOutcome::Unresolved(block) => {
            o.insert("nm_unresolved".into(), components(block));
        }
    }
    o.insert("blown_up".into(), json!(p.blown));
    o.insert("support".into(), components(&p.support));
    o.insert("connectivity".into(), p.connected.into());
    o.insert("normal_crossing".into(), p.normal_crossing.clone().into());
    if let Some(e) = &p.exclusion {
        o.insert("exclusion".into(), exclusion_json(e));
    }
    if !p.aux_checks.is_empty() {
        o.insert("aux_checks".into(), p.aux_checks.iter().map(aux_json).collect());
    }
}

fn evidence_json(e: &Evidence) -> Value {
    let mut o = Map::new();
    for key in ["nm_certificate", "exclusion", "connectivity", "normal_crossing"] {
        o.insert(key.into(), Value::Null);
    }
    if let Some(i) = e.cdo_line {
        o.insert("witness_line".into(), i.into());
    }
    if let Some(s) = &e.single_bad_point {
        let mut sb = Map::new();
        sb.insert("witness".into(), s.witness.map_or(Value::Null, |(h, p)| json!({"line": h, "point": p})));
        sb.insert(
            "single_lines".into(),
            s.single_lines.iter().map(|&(h, p)| json!([h, p])).collect(),
        );
        sb.insert(
            "bad_lines".into(),
            s.bad_lines
                .iter()
                .map(|b| json!({"point": b.point, "line": b.line.to_string(), "through": b.through}))
                .collect(),
        );
        o.insert("single_bad_point".into(), Value::Object(sb));
    }
    if let Some(c) = &e.single_bad_point_certificate {
        o.insert("nm_certificate".into(), nm_certificate_json(c));
    }
    if let Some(p) = &e.pipeline {
        pipeline_fields(p, &mut o);
    }
    Value::Object(o)
}

pub fn report_json(r: &VanishingReport) -> Value {
    json!({
        "kind": "vanishing",
        "version": SCHEMA_VERSION,
        "arrangement": r.arrangement,
        "system": r.system,
        "criterion": r.criterion.map(|c| c.as_str()),
        "status": r.status.as_str(),
        "evidence": evidence_json(&r.evidence),
        "notes": r.notes,
        "external_assumptions": r.external_assumptions,
        "citations": Vec::<Value>::new(),
    })
}

pub fn milnor_json(m: &MilnorReport) -> Value {
    let orders: Vec<Value> = m
        .orders
        .iter()
        .map(|o| {
            let (outcome, detail) = match &o.outcome {
                OrderOutcome::Certified(c) => ("certified", Value::String(c.as_str().into())),
                OrderOutcome::ExternallyExcluded(src) => ("externally_excluded", Value::String(src.clone())),
                OrderOutcome::Undetermined => ("undetermined", Value::Null),
            };
            json!({
                "order": o.order,
                "outcome": outcome,
                "detail": detail,
                "same_partition_as": o.same_partition_as,
                "cited_dimension": o.citation.as_ref().map(|c| c.dimension),
                "report": report_json(&o.report),
            })
        })
        .collect();
    let undetermined: Vec<Value> = match &m.aggregate {
        Aggregate::Identity => Vec::new(),
        Aggregate::Undetermined(open) => open
            .iter()
            .map(|(k, c)| {
                json!({
                    "order": k,
                    "cited_dimension": c.as_ref().map(|c| c.dimension),
                    "source": c.as_ref().map(|c| c.source.clone()),
                })
            })
            .collect(),
    };
    let citations: Vec<Value> = m
        .orders
        .iter()
        .filter_map(|o| {
            o.citation
                .as_ref()
                .map(|c| json!({"order": o.order, "dimension": c.dimension, "source": c.source}))
        })
        .collect();
    json!({
        "kind": "milnor",
        "version": SCHEMA_VERSION,
        "arrangement": m.arrangement,
        "orders": orders,
        "aggregate": {"verdict": m.aggregate.verdict(), "undetermined": undetermined},
        "external_assumptions": m
            .external_assumptions
            .iter()
            .map(|(k, s)| json!({"order": k, "source": s}))
            .collect::<Vec<_>>(),
        "citations": citations,
    })
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("report lacks {key:?}")))
}

fn as_usize(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("expected an index, got {v}")))
}

fn parse_component_map(v: &Value) -> Result<BTreeMap<Component, Rational>> {
    let obj = v.as_object().ok_or_else(|| bad("expected a component map"))?;
    obj.iter()
        .map(|(k, x)| {
            let s = x.as_str().ok_or_else(|| bad("expected a rational string"))?;
            Ok((k.parse()?, parse_rational(s)?))
        })
        .collect()
}

fn parse_pairs(v: &Value) -> Result<Vec<(usize, u32)>> {
    v.as_array()
        .ok_or_else(|| bad("expected pairs"))?
        .iter()
        .map(|p| Ok((as_usize(&p[0])?, as_usize(&p[1])? as u32)))
        .collect()
}

fn check_certificate(model: &DivisorModel, v: &Value, support: Option<&[Component]>) -> Result<bool> {
    let coeffs = parse_component_map(get(v, "divisor")?)?;
    let mut d = QDivisor::new();
    for (c, r) in coeffs {
        if !model.contains(c) {
            return Ok(false);
        }
        d.set(c, r);
    }
    let slacks = parse_component_map(get(v, "slacks")?)?;
    let sq = parse_rational(get(v, "self_intersection")?.as_str().unwrap_or(""))?;
    Ok(verify_nm(model, &d, support).is_ok_and(|c| c.slacks == slacks && c.self_intersection == sq))
}

fn parse_exclusion(
    v: &Value,
    lattice: &IntersectionLattice,
    partition: &crate::localsys::Partition,
) -> Result<CurveExclusionReport> {
    let bound = match get(v, "bound")? {
        Value::Null => None,
        b => {
            let d = as_usize(get(b, "value")?)? as u32;
            Some(match get(b, "kind")?.as_str() {
                Some("proven") => BoundKind::Proven(d),
                _ => BoundKind::User(d),
            })
        }
    };
    let point_order = get(v, "point_order")?
        .as_array()
        .ok_or_else(|| bad("point_order"))?
        .iter()
        .map(as_usize)
        .collect::<Result<Vec<_>>>()?;
    let mut degrees = Vec::new();
    for d in get(v, "degrees")?.as_array().ok_or_else(|| bad("degrees"))? {
        let degree = as_usize(get(d, "degree")?)? as u32;
        let status = match (get(d, "status")?.as_str(), get(d, "reason")?.as_str()) {
            (Some("excluded"), Some(r)) => DegreeStatus::Excluded(match r {
                "no-feasible-vector" => ExclusionReason::NoFeasibleVector,
                "empty-linear-system" => ExclusionReason::EmptyLinearSystem,
                "delta-genus" => ExclusionReason::DeltaGenus,
                "vector-checks" => ExclusionReason::VectorChecks,
                other => return Err(bad(format!("unknown exclusion reason {other}"))),
            }),
            (Some("skipped"), r) => DegreeStatus::Skipped(r.unwrap_or_default().to_string()),
            _ => DegreeStatus::Candidate,
        };
        let mut vectors = Vec::new();
        for x in get(d, "vectors")?.as_array().ok_or_else(|| bad("vectors"))? {
            let vector = MultiplicityVector {
                degree,
                mults: parse_pairs(get(x, "mults")?)?,
            };
            let verdict = match get(x, "verdict")?.as_str() {
                Some("empty_linear_system") => VectorVerdict::EmptyLinearSystem {
                    prefix: parse_pairs(get(x, "prefix")?)?,
                },
                Some("delta_genus") => VectorVerdict::DeltaGenus {
                    delta_sum: get(x, "delta_sum")?.as_u64().ok_or_else(|| bad("delta_sum"))?,
                    genus_bound: get(x, "genus_bound")?.as_u64().ok_or_else(|| bad("genus_bound"))?,
                },
                _ => VectorVerdict::Candidate {
                    dimension: 0,
                    basis: Vec::new(),
                },
            };
            vectors.push(VectorOutcome { vector, verdict });
        }
        degrees.push(DegreeReport {
            degree,
            status,
            vectors,
        });
    }
    Ok(CurveExclusionReport {
        bound,
        analysis: degree_bound_analysis(lattice, partition),
        point_order,
        degrees,
    })
}

/// Rechecks the evidence of a serialized vanishing report from scratch.
/// Reports that do not claim vanishing pass trivially.
pub fn reverify_report(value: &Value, arrangement: &Arrangement, lattice: &IntersectionLattice) -> Result<bool> {
    if get(value, "status")?.as_str() != Some("vanishing_certified") {
        return Ok(true);
    }
    let spec = parse_system_spec(get(value, "system")?.as_str().ok_or_else(|| bad("system"))?)?;
    let system = SystemInput::from_spec(&spec, arrangement, lattice)?;
    let part = &system.partition;
    let ev = get(value, "evidence")?;
    let model = DivisorModel::blow_up_multiple_points(lattice);
    match get(value, "criterion")?.as_str() {
        Some("cdo") => {
            let i = as_usize(get(ev, "witness_line")?)?;
            Ok(i < lattice.n() && part.eq1_on_lines(lattice)[i].is_empty() && criterion_cdo(lattice, part).is_some())
        }
        Some("single_bad_point") => {
            let w = get(get(ev, "single_bad_point")?, "witness")?;
            let (h0, p) = (as_usize(get(w, "line")?)?, as_usize(get(w, "point")?)?);
            let eq1 = part.eq1_on_lines(lattice);
            Ok(h0 < lattice.n()
                && eq1[h0] == [p]
                && bad_lines_through(lattice, part, p).is_empty()
                && check_certificate(&model, get(ev, "nm_certificate")?, None)?)
        }
        Some("full_pipeline") => {
            let support: Vec<Component> = (0..lattice.n())
                .map(Component::Line)
                .chain(part.t_neq1.iter().map(|&q| Component::Exc(q)))
                .collect();
            if !check_certificate(&model, get(ev, "nm_certificate")?, Some(&support))? {
                return Ok(false);
            }
            let sq = parse_rational(get(get(ev, "nm_certificate")?, "self_intersection")?.as_str().unwrap_or(""))?;
            if sq <= Rational::from_integer(0.into()) || !divisor_connected(&model, &support) {
                return Ok(false);
            }
            if get(ev, "connectivity")?.as_bool() != Some(true) {
                return Ok(false);
            }
            let ex = parse_exclusion(get(ev, "exclusion")?, lattice, part)?;
            let proven = crate::badcurve::auto_degree_bound(lattice, part);
            let covered: Vec<u32> = ex.degrees.iter().map(|d| d.degree).collect();
            let expected: Vec<u32> = (1..=ex.bound.map_or(0, BoundKind::value)).collect();
            Ok(ex.is_complete()
                && ex.bound == proven.map(BoundKind::Proven)
                && covered == expected
                && ex.reverify(lattice, &ExclusionOptions::default()))
        }
        _ => Ok(false),
    }
}
