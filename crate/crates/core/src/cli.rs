//! Command-line front end. Every verb prints one JSON document; mathematical
//! verdicts live in that document, and the exit status only reports whether
//! the run completed.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arrangement::format::parse_arrangement;
use crate::arrangement::{
    gen_ceva, gen_g31_section, gen_hexagonal, gen_near_pencils, intersection_lattice, Arrangement, HexagonVariant,
    IntersectionLattice,
};
use crate::badcurve::{
    collinear_subsets, common_elements, conics_with_min_incidence, conics_with_min_incidence_brute,
    exclude_bad_curves_with, pairwise_overlap_table, reference_order, star_configuration_check, DegreePolicy,
    ExclusionOptions, StarVerdict,
};
use crate::badcurve::star::Refutation;
use crate::blowup::{
    canonical_divisor, closed_form_slack, divisor_connected, nm_search, qdiv_dot, qdiv_self, verify_nm, Component,
    DivisorModel, NmSearch,
};
use crate::certify::report::{exclusion_json, milnor_json, nm_certificate_json, report_json};
use crate::certify::{ceva_citations, certify_vanishing, milnor_sweep, CertifyOptions, Citation, SystemInput};
use crate::error::{Error, Result};
use crate::exactgeom::rational::fmt_rational;
use crate::exactgeom::ProjPoint;
use crate::localsys::{parse_system_spec, SystemSpec};

#[derive(Parser, Debug)]
#[command(name = "arrcert", version, about = "Certify vanishing of twisted cohomology of line arrangement complements")]
pub struct Cli {
    /// Worker threads for enumerations.
    #[arg(long, global = true, env = "ARRCERT_THREADS")]
    pub threads: Option<usize>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// ceva:m, g31-section, hexagon:on-conic, hexagon:off-conic, near-pencil:l:c
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub builtin: Option<String>,
    /// Arrangement file (`field k` header, then `line: c0 c1 c2`).
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SystemArgs {
    /// The Milnor fiber system of order k (all exponents 1/k).
    #[arg(long, conflicts_with_all = ["system", "system_file"])]
    pub milnor: Option<u32>,
    /// Inline local-system text, e.g. "exponents: 1/3 1/3 ..." or "partition: eq1=marked".
    #[arg(long, conflicts_with = "system_file")]
    pub system: Option<String>,
    #[arg(long)]
    pub system_file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CertifyArgs {
    /// Degree to check bad curves up to when no bound is proven.
    #[arg(long)]
    pub d_max: Option<u32>,
    /// Orders excluded by outside results, as `2,3:SOURCE`. Repeatable.
    #[arg(long)]
    pub assume_excluded: Vec<String>,
    /// Known eigenspace dimensions, as `3=1:SOURCE`. Repeatable.
    #[arg(long)]
    pub cite: Vec<String>,
    /// Skip degrees with more multiplicity vectors than this.
    #[arg(long, default_value_t = 200_000)]
    pub vector_limit: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Intersection lattice statistics.
    Lattice {
        #[command(flatten)]
        input: Input,
    },
    /// Split of the multiple points by total turn monodromy.
    Partition {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Vanishing certificate for one local system.
    Certify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        options: CertifyArgs,
    },
    /// Vanishing for every Milnor fiber eigenvalue order that needs it.
    Milnor {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        options: CertifyArgs,
    },
    /// Collinear subsets and conics through many points.
    Incidence {
        #[command(flatten)]
        input: Input,
        /// `mult=m` (points of multiplicity m), `marked`, or `multiple`.
        #[arg(long, default_value = "marked")]
        points: String,
        /// Use only the first N selected points.
        #[arg(long)]
        prefix: Option<usize>,
        /// Report collinear k-subsets (k = 3 or 4).
        #[arg(long)]
        collinear: Option<usize>,
        /// Report conics through at least this many points.
        #[arg(long)]
        threshold: Option<usize>,
        /// Solve one system per threshold-subset instead of per 5-subset.
        #[arg(long)]
        brute: bool,
        /// Test each conic set for a star configuration.
        #[arg(long)]
        star: bool,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// NM inequalities for the boundary divisor on the blow-up.
    Nm {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Bad-curve exclusion by degree.
    Exclude {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        d_max: Option<u32>,
        #[arg(long, default_value_t = 200_000)]
        vector_limit: usize,
    },
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim().parse().map_err(|_| usage(format!("bad {what} {s:?}")))
}

pub fn resolve_builtin(name: &str) -> Result<Arrangement> {
    let parts: Vec<&str> = name.split(':').collect();
    match parts[..] {
        ["g31-section"] => Ok(gen_g31_section()),
        ["ceva", m] => gen_ceva(parse_num(m, "Ceva parameter")?),
        ["hexagon", "on-conic"] => gen_hexagonal(HexagonVariant::OnConic),
        ["hexagon", "off-conic"] => gen_hexagonal(HexagonVariant::OffConic),
        ["near-pencil", l, c] => {
            let l: usize = parse_num(l, "center count")?;
            let c: usize = parse_num(c, "lines per center")?;
            gen_near_pencils(&vec![c; l])
        }
        _ => Err(usage(format!("unknown builtin {name:?}"))),
    }
}

pub fn load_arrangement(input: &Input) -> Result<Arrangement> {
    match (&input.builtin, &input.file) {
        (Some(b), _) => resolve_builtin(b),
        (None, Some(f)) => parse_arrangement(&std::fs::read_to_string(f)?),
        (None, None) => Err(usage("need --builtin or --file")),
    }
}

fn system_spec(args: &SystemArgs) -> Result<Option<SystemSpec>> {
    if let Some(k) = args.milnor {
        return Ok(Some(SystemSpec::Milnor(k)));
    }
    let text = match (&args.system, &args.system_file) {
        (Some(t), _) => t.clone(),
        (None, Some(f)) => std::fs::read_to_string(f)?,
        (None, None) => return Ok(None),
    };
    parse_system_spec(&text).map(Some)
}

fn load_system(args: &SystemArgs, a: &Arrangement, l: &IntersectionLattice) -> Result<SystemInput> {
    let spec = system_spec(args)?.ok_or_else(|| usage("need --milnor, --system or --system-file"))?;
    SystemInput::from_spec(&spec, a, l)
}

/// `2,3:SOURCE` → {2: SOURCE, 3: SOURCE}.
pub fn parse_assumption(text: &str) -> Result<BTreeMap<u32, String>> {
    let (orders, src) = text
        .split_once(':')
        .ok_or_else(|| usage(format!("expected ORDERS:SOURCE, got {text:?}")))?;
    orders
        .split(',')
        .map(|k| Ok((parse_num(k, "order")?, src.trim().to_string())))
        .collect()
}

/// `3=1:SOURCE` → (3, dimension 1 from SOURCE).
pub fn parse_citation(text: &str) -> Result<(u32, Citation)> {
    let (head, src) = text
        .split_once(':')
        .ok_or_else(|| usage(format!("expected ORDER=DIM:SOURCE, got {text:?}")))?;
    let (k, dim) = head
        .split_once('=')
        .ok_or_else(|| usage(format!("expected ORDER=DIM, got {head:?}")))?;
    Ok((
        parse_num(k, "order")?,
        Citation {
            dimension: parse_num(dim, "dimension")?,
            source: src.trim().to_string(),
        },
    ))
}

fn certify_options(args: &CertifyArgs, builtin: Option<&str>) -> Result<CertifyOptions> {
    let mut external_assumptions = BTreeMap::new();
    for a in &args.assume_excluded {
        external_assumptions.extend(parse_assumption(a)?);
    }
    let mut citations = match builtin.and_then(|b| b.strip_prefix("ceva:")) {
        Some(m) => ceva_citations(parse_num(m, "Ceva parameter")?),
        None => BTreeMap::new(),
    };
    for c in &args.cite {
        let (k, c) = parse_citation(c)?;
        citations.insert(k, c);
    }
    Ok(CertifyOptions {
        policy: args.d_max.map_or(DegreePolicy::Proven, DegreePolicy::ProvenOr),
        vector_limit: args.vector_limit,
        external_assumptions,
        citations,
    })
}

fn counts_json(m: &BTreeMap<usize, usize>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

pub fn lattice_json(a: &Arrangement, l: &IntersectionLattice) -> Value {
    let profiles: Vec<BTreeMap<usize, usize>> = (0..l.n()).map(|i| l.line_profile(i)).collect();
    let uniform = profiles.windows(2).all(|w| w[0] == w[1]);
    let id = l.identities();
    json!({
        "kind": "lattice",
        "arrangement": a.label(),
        "field": a.field_order(),
        "lines": l.n(),
        "totals": counts_json(&l.multiplicity_counts()),
        "uniform_line_profile": if uniform { profiles.first().map(counts_json) } else { None },
        "per_line": profiles.iter().map(counts_json).collect::<Vec<_>>(),
        "identities": {
            "pair_sum": id.pair_sum,
            "line_pairs": id.line_pairs,
            "bad_lines": id.bad_lines,
            "hold": id.hold(),
        },
    })
}

fn point_list(l: &IntersectionLattice, idx: &[usize]) -> Value {
    idx.iter()
        .map(|&p| json!({"index": p, "multiplicity": l.point(p).multiplicity(), "point": l.point(p).point.to_string()}))
        .collect()
}

pub fn partition_json(a: &Arrangement, l: &IntersectionLattice, s: &SystemInput) -> Value {
    let p = &s.partition;
    json!({
        "kind": "partition",
        "arrangement": a.label(),
        "system": s.description,
        "strict": s.is_strict(),
        "t_eq1": point_list(l, &p.t_eq1),
        "t_neq1": point_list(l, &p.t_neq1),
        "eq1_per_line": p.eq1_on_lines(l).iter().map(Vec::len).collect::<Vec<_>>(),
        "neq1_per_line": p.k_prime(l),
    })
}

pub fn nm_json(a: &Arrangement, l: &IntersectionLattice, s: &SystemInput) -> Value {
    let model = DivisorModel::blow_up_multiple_points(l);
    let d = canonical_divisor(l, &s.partition);
    let support = d.support();
    let intersections: serde_json::Map<String, Value> = model
        .components()
        .into_iter()
        .map(|c| (c.to_string(), Value::String(fmt_rational(&qdiv_dot(&model, &d, c)))))
        .collect();
    let closed_forms_agree = model.components().into_iter().all(|c| {
        closed_form_slack(l, &s.partition, c).is_none_or(|v| qdiv_dot(&model, &d, c) == crate::exactgeom::rational::int(v))
    });
    let unit = match verify_nm(&model, &d, Some(&support)) {
        Ok(c) => json!({"ok": true, "certificate": nm_certificate_json(&c)}),
        Err(f) => json!({
            "ok": false,
            "nonpositive": f.nonpositive.iter().map(Component::to_string).collect::<Vec<_>>(),
            "violations": f.violations.iter().map(|(c, v)| json!([c.to_string(), fmt_rational(v)])).collect::<Vec<_>>(),
        }),
    };
    let search = match nm_search(&model, &support) {
        NmSearch::Feasible(x) => json!({"result": "feasible", "divisor": crate::certify::report::divisor_json(&x)}),
        NmSearch::Infeasible(inf) => json!({"result": "infeasible", "evidence": format!("{inf:?}")}),
        NmSearch::Unresolved { block } => {
            json!({"result": "unresolved", "block": block.iter().map(Component::to_string).collect::<Vec<_>>()})
        }
    };
    json!({
        "kind": "nm",
        "arrangement": a.label(),
        "system": s.description,
        "unit_divisor": unit,
        "self_intersection": fmt_rational(&qdiv_self(&model, &d)),
        "intersections": intersections,
        "closed_forms_agree": closed_forms_agree,
        "search": search,
        "connectivity": divisor_connected(&model, &support),
    })
}

pub fn exclude_json(a: &Arrangement, l: &IntersectionLattice, s: &SystemInput, d_max: Option<u32>, limit: usize) -> Value {
    let r = exclude_bad_curves_with(
        l,
        &s.partition,
        &ExclusionOptions {
            policy: d_max.map_or(DegreePolicy::Proven, DegreePolicy::ProvenOr),
            point_order: Some(reference_order(l, &s.partition, a.marked_points())),
            vector_limit: limit,
        },
    );
    json!({
        "kind": "exclusion",
        "arrangement": a.label(),
        "system": s.description,
        "exclusion": exclusion_json(&r),
    })
}

/// Lattice indices of the selected points, in label order.
pub fn select_points(a: &Arrangement, l: &IntersectionLattice, spec: &str) -> Result<Vec<usize>> {
    let marked = || -> Result<Vec<usize>> {
        a.marked_points()
            .iter()
            .map(|p| l.index_of(p).ok_or_else(|| usage(format!("marked point {p} is not a lattice point"))))
            .collect()
    };
    if spec == "marked" {
        return marked();
    }
    if spec == "multiple" {
        return Ok(l.multiple_points());
    }
    let m: usize = parse_num(
        spec.strip_prefix("mult=").ok_or_else(|| usage(format!("bad point selection {spec:?}")))?,
        "multiplicity",
    )?;
    let all = l.points_of_multiplicity(m);
    // marked points fix the labels when they are exactly these points
    if let Ok(mk) = marked() {
        let as_set: BTreeSet<usize> = mk.iter().copied().collect();
        if !mk.is_empty() && as_set == all.iter().copied().collect() {
            return Ok(mk);
        }
    }
    Ok(all)
}

fn one_based(sets: &[Vec<usize>]) -> Value {
    sets.iter()
        .map(|s| s.iter().map(|i| i + 1).collect::<Vec<_>>())
        .collect()
}

/// Collinear subsets of `points`, 1-based and sorted.
pub fn collinear_table(points: &[ProjPoint], k: usize) -> (Value, u64, u64) {
    let scan = collinear_subsets(points, k);
    (one_based(&scan.sets), scan.tests, scan.subsets_covered)
}

/// Conic incidence sets, 1-based and sorted, with the systems solved.
pub fn conic_table(points: &[ProjPoint], threshold: usize, brute: bool) -> (Vec<Vec<usize>>, u64) {
    let scan = if brute {
        conics_with_min_incidence_brute(points, threshold)
    } else {
        conics_with_min_incidence(points, threshold)
    };
    let mut sets: Vec<Vec<usize>> = scan.conics.iter().map(|c| c.points.clone()).collect();
    sets.sort();
    (sets, scan.systems)
}

fn star_json(v: &StarVerdict, label: &dyn Fn(usize) -> Value) -> Value {
    match v {
        StarVerdict::Star { center, pairs } => json!({
            "verdict": "star",
            "center": label(*center),
            "pairs": pairs.iter().map(|&(a, b)| json!([label(a), label(b)])).collect::<Vec<_>>(),
        }),
        StarVerdict::NotStar { implied, refutations } => json!({
            "verdict": "not_star",
            "trace": implied.iter().map(|s| json!({
                "pair": [label(s.pair.0), label(s.pair.1)],
                "line": s.line,
                "center": label(s.center),
            })).collect::<Vec<_>>(),
            "refutations": refutations.iter().map(|r| match r {
                Refutation::NotJoined { center, point } => json!({"center": label(*center), "not_joined": label(*point)}),
                Refutation::LineCount { center, line, count } => json!({"center": label(*center), "line": line, "count": count}),
            }).collect::<Vec<_>>(),
        }),
    }
}

#[allow(clippy::too_many_arguments)]
fn incidence_json(
    a: &Arrangement,
    l: &IntersectionLattice,
    selection: &str,
    prefix: Option<usize>,
    collinear: Option<usize>,
    threshold: Option<usize>,
    brute: bool,
    star: Option<&SystemInput>,
) -> Result<Value> {
    let mut idx = select_points(a, l, selection)?;
    if let Some(n) = prefix {
        idx.truncate(n);
    }
    let points: Vec<ProjPoint> = idx.iter().map(|&p| l.point(p).point.clone()).collect();
    let mut out = serde_json::Map::new();
    out.insert("kind".into(), "incidence".into());
    out.insert("arrangement".into(), a.label().into());
    out.insert("selection".into(), selection.into());
    out.insert(
        "points".into(),
        idx.iter()
            .enumerate()
            .map(|(j, &p)| json!({"label": j + 1, "index": p, "point": l.point(p).point.to_string()}))
            .collect(),
    );
    if let Some(k) = collinear {
        if !(3..=4).contains(&k) {
            return Err(usage("--collinear takes 3 or 4"));
        }
        let (sets, tests, covered) = collinear_table(&points, k);
        out.insert(
            "collinear".into(),
            json!({"k": k, "determinants": tests, "subsets_covered": covered, "sets": sets}),
        );
    }
    if let Some(t) = threshold {
        if t < 6 {
            return Err(usage("--threshold must be at least 6"));
        }
        let (sets, systems) = conic_table(&points, t, brute);
        let mut c = serde_json::Map::new();
        c.insert("threshold".into(), t.into());
        c.insert("mode".into(), if brute { "brute" } else { "five-subsets" }.into());
        c.insert("systems".into(), systems.into());
        c.insert("sets".into(), one_based(&sets));
        c.insert("overlaps".into(), json!(pairwise_overlap_table(&sets)));
        if sets.len() >= 3 {
            let first: Vec<usize> = common_elements(&sets[..3]).iter().map(|i| i + 1).collect();
            let last: Vec<usize> = common_elements(&sets[sets.len() - 3..]).iter().map(|i| i + 1).collect();
            c.insert("first_three_common".into(), json!(first));
            c.insert("last_three_common".into(), json!(last));
        }
        if let Some(s) = star {
            let label = |p: usize| match idx.iter().position(|&q| q == p) {
                Some(j) => json!(j + 1),
                None => json!(format!("index {p}")),
            };
            let verdicts: Vec<Value> = sets
                .iter()
                .map(|set| {
                    let lat: Vec<usize> = set.iter().map(|&j| idx[j]).collect();
                    star_json(&star_configuration_check(&lat, l, &s.partition), &label)
                })
                .collect();
            c.insert("star".into(), verdicts.into());
        }
        out.insert("conics".into(), Value::Object(c));
    }
    Ok(Value::Object(out))
}

pub fn run(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Lattice { input } => {
            let a = load_arrangement(input)?;
            Ok(lattice_json(&a, &intersection_lattice(&a)))
        }
        Command::Partition { input, system } => {
            let a = load_arrangement(input)?;
            let l = intersection_lattice(&a);
            let s = load_system(system, &a, &l)?;
            Ok(partition_json(&a, &l, &s))
        }
        Command::Certify { input, system, options } => {
            let a = load_arrangement(input)?;
            let l = intersection_lattice(&a);
            let s = load_system(system, &a, &l)?;
            let opts = certify_options(options, input.builtin.as_deref())?;
            Ok(report_json(&certify_vanishing(&a, &l, &s, &opts)))
        }
        Command::Milnor { input, options } => {
            let a = load_arrangement(input)?;
            let l = intersection_lattice(&a);
            let opts = certify_options(options, input.builtin.as_deref())?;
            Ok(milnor_json(&milnor_sweep(&a, &l, &opts)?))
        }
        Command::Incidence {
            input,
            points,
            prefix,
            collinear,
            threshold,
            brute,
            star,
            system,
        } => {
            let a = load_arrangement(input)?;
            let l = intersection_lattice(&a);
            let s = if *star {
                Some(match system_spec(system)? {
                    Some(spec) => SystemInput::from_spec(&spec, &a, &l)?,
                    None => SystemInput::symbolic(&l, &select_points(&a, &l, points)?.into_iter().collect())?,
                })
            } else {
                None
            };
            incidence_json(&a, &l, points, *prefix, *collinear, *threshold, *brute, s.as_ref())
        }
        Command::Nm { input, system } => {
            let a = load_arrangement(input)?;
            let l = intersection_lattice(&a);
            let s = load_system(system, &a, &l)?;
            Ok(nm_json(&a, &l, &s))
        }
        Command::Exclude {
            input,
            system,
            d_max,
            vector_limit,
        } => {
            let a = load_arrangement(input)?;
            let l = intersection_lattice(&a);
            let s = load_system(system, &a, &l)?;
            Ok(exclude_json(&a, &l, &s, *d_max, *vector_limit))
        }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Writes each `(name, table)` to `dir/name.json`.
pub fn emit_goldens(results: &[(String, Value)], dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    results
        .iter()
        .map(|(name, v)| {
            let path = dir.join(format!("{name}.json"));
            std::fs::write(&path, canonical_json(v))?;
            Ok(path)
        })
        .collect()
}

/// The G₃₁ tables: collinear triples and quadruples, the quadruple check on
/// the first 24 points, conic sets with overlaps, and the order-6 exclusion.
pub fn g31_golden_tables() -> Result<Vec<(String, Value)>> {
    let a = gen_g31_section();
    let l = intersection_lattice(&a);
    let points = a.marked_points();
    let (triples, ..) = collinear_table(points, 3);
    let (quads, ..) = collinear_table(points, 4);
    let (quads24, ..) = collinear_table(&points[..24], 4);
    let (conics, _) = conic_table(points, 12, false);
    let s = SystemInput::milnor(&l, 6)?;
    let ex = exclude_json(&a, &l, &s, None, ExclusionOptions::default().vector_limit);
    Ok(vec![
        ("g31_triples".into(), triples),
        ("g31_quadruples".into(), quads),
        ("g31_quadruples_first24".into(), quads24),
        ("g31_conics".into(), one_based(&conics)),
        ("g31_conic_overlaps".into(), json!(pairwise_overlap_table(&conics))),
        ("g31_exclusion_order6".into(), ex["exclusion"].clone()),
    ])
}

pub fn main_with(cli: Cli) -> i32 {
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return 2;
        }
    }
    let out = run(&cli).and_then(|v| {
        let text = canonical_json(&v);
        match &cli.output {
            Some(p) => std::fs::write(p, text).map_err(Error::from),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match out {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
