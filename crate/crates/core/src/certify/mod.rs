//! Vanishing certificates for rank-one local systems, tried from cheapest to
//! most expensive: a line free of `T₌₁` points, a line with a single `T₌₁`
//! point and no bad line through it, and the full blow-up pipeline.

pub mod report;
pub mod sweep;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Signed;

use crate::arrangement::{Arrangement, IntersectionLattice};
use crate::badcurve::{
    exclude_bad_curves_with, reference_order, CurveExclusionReport, DegreePolicy, ExclusionOptions, VectorVerdict,
};
use crate::blowup::{
    canonical_divisor, certificate_from_single_bad_point, divisor_connected, nm_search, qdiv_self, verify_nm, Component, DivisorModel,
    Infeasibility, NmCertificate, NmFailure, NmSearch,
};
use crate::error::Result;
use crate::exactgeom::rational::fmt_rational;
use crate::exactgeom::{ProjLine, Rational};
use crate::localsys::{milnor_system, partition, LocalSystem, Partition, SystemSpec};

pub use sweep::{ceva_citations, milnor_sweep, Aggregate, MilnorReport, OrderOutcome, OrderResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    Cdo,
    SingleBadPoint,
    FullPipeline,
}

impl Criterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::Cdo => "cdo",
            Criterion::SingleBadPoint => "single_bad_point",
            Criterion::FullPipeline => "full_pipeline",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    VanishingCertified,
    Inconclusive,
    HypothesesViolated,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::VanishingCertified => "vanishing_certified",
            Status::Inconclusive => "inconclusive",
            Status::HypothesesViolated => "hypotheses_violated",
        }
    }
}

/// A local system as the certifier sees it: either exponents, from which the
/// partition is computed, or the partition itself.
#[derive(Clone, Debug)]
pub struct SystemInput {
    /// Text form accepted by [`crate::localsys::parse_system_spec`].
    pub description: String,
    pub local: Option<LocalSystem>,
    pub partition: Partition,
}

impl SystemInput {
    pub fn milnor(lattice: &IntersectionLattice, k: u32) -> Result<Self> {
        let l = milnor_system(lattice.n(), k)?;
        Ok(SystemInput {
            description: format!("milnor: {k}"),
            partition: partition(lattice, &l),
            local: Some(l),
        })
    }

    pub fn exponents(lattice: &IntersectionLattice, l: LocalSystem) -> Result<Self> {
        if l.n() != lattice.n() {
            return Err(crate::Error::InvalidLocalSystem(format!(
                "{} exponents for {} lines",
                l.n(),
                lattice.n()
            )));
        }
        let text: Vec<String> = l.exponents().iter().map(fmt_rational).collect();
        Ok(SystemInput {
            description: format!("exponents: {}", text.join(" ")),
            partition: partition(lattice, &l),
            local: Some(l),
        })
    }

    /// The caller asserts strictness and names the `T₌₁` points.
    pub fn symbolic(lattice: &IntersectionLattice, eq1: &BTreeSet<usize>) -> Result<Self> {
        let inner: Vec<String> = eq1.iter().map(usize::to_string).collect();
        Ok(SystemInput {
            description: format!("partition: eq1={{{}}}", inner.join(",")),
            local: None,
            partition: Partition::symbolic(lattice, eq1)?,
        })
    }

    pub fn from_spec(spec: &SystemSpec, arrangement: &Arrangement, lattice: &IntersectionLattice) -> Result<Self> {
        match spec {
            SystemSpec::Milnor(k) => Self::milnor(lattice, *k),
            SystemSpec::Exponents(e) => Self::exponents(lattice, LocalSystem::new(e.clone())?),
            SystemSpec::Symbolic(Some(eq1)) => Self::symbolic(lattice, eq1),
            SystemSpec::Symbolic(None) => {
                let eq1 = arrangement
                    .marked_points()
                    .iter()
                    .map(|p| {
                        lattice.index_of(p).ok_or_else(|| {
                            crate::Error::InvalidLocalSystem(format!("marked point {p} is not a lattice point"))
                        })
                    })
                    .collect::<Result<BTreeSet<usize>>>()?;
                Self::symbolic(lattice, &eq1)
            }
        }
    }

    pub fn is_strict(&self) -> bool {
        self.local.as_ref().is_none_or(LocalSystem::is_strict)
    }
}

/// Known dimension of an eigenspace, quoted rather than computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Citation {
    pub dimension: usize,
    pub source: String,
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub policy: DegreePolicy,
    pub vector_limit: usize,
    /// Milnor orders excluded by outside results, with their source.
    pub external_assumptions: BTreeMap<u32, String>,
    pub citations: BTreeMap<u32, Citation>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            policy: DegreePolicy::Proven,
            vector_limit: ExclusionOptions::default().vector_limit,
            external_assumptions: BTreeMap::new(),
            citations: BTreeMap::new(),
        }
    }
}

/// A line with no `T₌₁` point on it.
pub fn criterion_cdo(lattice: &IntersectionLattice, partition: &Partition) -> Option<usize> {
    partition.eq1_on_lines(lattice).iter().position(Vec::is_empty)
}

/// A line through `point` meeting every arrangement line in a `T₌₁` point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadLine {
    pub point: usize,
    pub line: ProjLine,
    /// The `T₌₁` points on it.
    pub through: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingleBadPoint {
    /// `(H₀, p)` with `H₀ ∩ T₌₁ = {p}` and no bad line through `p`.
    pub witness: Option<(usize, usize)>,
    /// Lines with a single `T₌₁` point, as `(H₀, p)`.
    pub single_lines: Vec<(usize, usize)>,
    /// Bad lines found through the points of `single_lines`.
    pub bad_lines: Vec<BadLine>,
}

/// Bad lines through `p`. A line through `p` meeting the arrangement only in
/// `T₌₁` points meets every arrangement line missing `p` at a second `T₌₁`
/// point, so it is the join of `p` with one; joins that are arrangement lines
/// are not candidates.
pub fn bad_lines_through(lattice: &IntersectionLattice, partition: &Partition, p: usize) -> Vec<BadLine> {
    let pp = &lattice.point(p).point;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &q in &partition.t_eq1 {
        if q == p || lattice.point(p).incident.iter().any(|i| lattice.point(q).contains_line(*i)) {
            continue;
        }
        let line = pp.join(&lattice.point(q).point).expect("distinct lattice points");
        if !seen.insert(line.clone()) {
            continue;
        }
        let through: Vec<usize> = partition
            .t_eq1
            .iter()
            .copied()
            .filter(|&r| line.contains(&lattice.point(r).point))
            .collect();
        let covered: BTreeSet<usize> = through
            .iter()
            .flat_map(|&r| lattice.point(r).incident.iter().copied())
            .collect();
        if covered.len() == lattice.n() {
            out.push(BadLine { point: p, line, through });
        }
    }
    out
}

pub fn criterion_single_bad_point(lattice: &IntersectionLattice, partition: &Partition) -> SingleBadPoint {
    let single_lines: Vec<(usize, usize)> = partition
        .eq1_on_lines(lattice)
        .iter()
        .enumerate()
        .filter_map(|(i, pts)| match pts[..] {
            [p] => Some((i, p)),
            _ => None,
        })
        .collect();
    let mut bad_lines = Vec::new();
    let mut checked = BTreeMap::new();
    let mut witness = None;
    for &(h0, p) in &single_lines {
        let bad = checked.entry(p).or_insert_with(|| bad_lines_through(lattice, partition, p));
        if bad.is_empty() {
            witness = Some((h0, p));
            break;
        }
    }
    for (_, b) in checked {
        bad_lines.extend(b);
    }
    SingleBadPoint {
        witness,
        single_lines,
        bad_lines,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NmOutcome {
    Certificate(NmCertificate),
    Infeasible(Infeasibility),
    Unresolved(Vec<Component>),
}

/// `D̃ + L̄` for a degree-1 candidate `L`; `D̃·L̄ ≤ 0` shows `L` is disjoint from the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxCheck {
    pub component: Component,
    pub line: ProjLine,
    pub result: std::result::Result<NmCertificate, NmFailure>,
}

#[derive(Clone, Debug)]
pub struct Pipeline {
    pub blown: Vec<usize>,
    pub support: Vec<Component>,
    pub nm: NmOutcome,
    pub self_intersection: Option<Rational>,
    pub connected: bool,
    pub exclusion: Option<CurveExclusionReport>,
    pub aux_checks: Vec<AuxCheck>,
    pub normal_crossing: String,
}

#[derive(Clone, Debug)]
pub struct Evidence {
    pub cdo_line: Option<usize>,
    pub single_bad_point: Option<SingleBadPoint>,
    pub single_bad_point_certificate: Option<NmCertificate>,
    pub pipeline: Option<Pipeline>,
}

#[derive(Clone, Debug)]
pub struct VanishingReport {
    pub arrangement: String,
    pub system: String,
    pub criterion: Option<Criterion>,
    pub status: Status,
    pub evidence: Evidence,
    /// Concrete obstructions when not certified.
    pub notes: Vec<String>,
    pub external_assumptions: Vec<String>,
}

impl fmt::Display for VanishingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}: {}", self.arrangement, self.system, self.status.as_str())?;
        if let Some(c) = self.criterion {
            write!(f, " via {}", c.as_str())?;
        }
        Ok(())
    }
}

fn run_pipeline(
    arrangement: &Arrangement,
    lattice: &IntersectionLattice,
    part: &Partition,
    options: &CertifyOptions,
    notes: &mut Vec<String>,
) -> Pipeline {
    let model = DivisorModel::blow_up_multiple_points(lattice);
    let support: Vec<Component> = (0..lattice.n())
        .map(Component::Line)
        .chain(part.t_neq1.iter().map(|&q| Component::Exc(q)))
        .collect();
    let unit = canonical_divisor(lattice, part);
    let nm = match verify_nm(&model, &unit, Some(&support)) {
        Ok(c) => NmOutcome::Certificate(c),
        Err(_) => match nm_search(&model, &support) {
            NmSearch::Feasible(d) => match verify_nm(&model, &d, Some(&support)) {
                Ok(c) => NmOutcome::Certificate(c),
                Err(_) => NmOutcome::Unresolved(support.clone()),
            },
            NmSearch::Infeasible(inf) => NmOutcome::Infeasible(inf),
            NmSearch::Unresolved { block } => NmOutcome::Unresolved(block),
        },
    };
    let connected = divisor_connected(&model, &support);
    let mut pipeline = Pipeline {
        blown: model.blown(),
        support,
        nm,
        self_intersection: None,
        connected,
        exclusion: None,
        aux_checks: Vec::new(),
        normal_crossing: "every point of multiplicity >= 3 is blown up; the remaining crossings of D' are nodes"
            .into(),
    };
    let divisor = match &pipeline.nm {
        NmOutcome::Certificate(c) => c.divisor.clone(),
        NmOutcome::Infeasible(_) => {
            notes.push("no divisor supported on D' satisfies the NM inequalities".into());
            return pipeline;
        }
        NmOutcome::Unresolved(block) => {
            notes.push(format!("NM search unresolved on a block of {} components", block.len()));
            return pipeline;
        }
    };
    let sq = qdiv_self(&model, &divisor);
    if !sq.is_positive() {
        notes.push(format!("D'^2 = {} is not positive", fmt_rational(&sq)));
    }
    pipeline.self_intersection = Some(sq);
    if !connected {
        notes.push("D' is not connected".into());
    }
    let exclusion = exclude_bad_curves_with(
        lattice,
        part,
        &ExclusionOptions {
            policy: options.policy,
            point_order: Some(reference_order(lattice, part, arrangement.marked_points())),
            vector_limit: options.vector_limit,
        },
    );
    match exclusion.bound {
        None => notes.push("no proven degree bound for bad curves; supply a maximal degree".into()),
        Some(crate::badcurve::BoundKind::User(d)) => {
            notes.push(format!("bad curves checked only up to the user bound {d}"))
        }
        Some(_) => {}
    }
    for deg in &exclusion.degrees {
        match &deg.status {
            crate::badcurve::DegreeStatus::Candidate => notes.push(format!(
                "degree {}: {} candidate curve system(s) not excluded",
                deg.degree,
                deg.candidates().count()
            )),
            crate::badcurve::DegreeStatus::Skipped(why) => {
                notes.push(format!("degree {} skipped: {why}", deg.degree))
            }
            _ => {}
        }
        if deg.degree != 1 {
            continue;
        }
        for cand in deg.candidates() {
            let VectorVerdict::Candidate { basis, .. } = &cand.verdict else {
                continue;
            };
            for row in basis {
                let Ok(line) = ProjLine::new([row[0].clone(), row[1].clone(), row[2].clone()]) else {
                    continue;
                };
                let mut m = model.clone();
                let Ok(c) = m.add_aux_line(arrangement, line.clone()) else {
                    continue;
                };
                let mut d = divisor.clone();
                d.set(c, Rational::from_integer(1.into()));
                let result = verify_nm(&m, &d, None);
                if let Err(f) = &result {
                    let named: Vec<String> = f.violations.iter().map(|(c, _)| c.to_string()).collect();
                    notes.push(format!("adding the candidate line {c} breaks the NM inequalities at {}", named.join(", ")));
                }
                pipeline.aux_checks.push(AuxCheck {
                    component: c,
                    line,
                    result,
                });
            }
        }
    }
    pipeline.exclusion = Some(exclusion);
    pipeline
}

pub fn certify_vanishing(
    arrangement: &Arrangement,
    lattice: &IntersectionLattice,
    system: &SystemInput,
    options: &CertifyOptions,
) -> VanishingReport {
    let mut report = VanishingReport {
        arrangement: arrangement.label().to_string(),
        system: system.description.clone(),
        criterion: None,
        status: Status::Inconclusive,
        evidence: Evidence {
            cdo_line: None,
            single_bad_point: None,
            single_bad_point_certificate: None,
            pipeline: None,
        },
        notes: Vec::new(),
        external_assumptions: options
            .external_assumptions
            .iter()
            .map(|(k, s)| format!("order {k} excluded by {s}"))
            .collect(),
    };
    if arrangement.is_pencil() {
        report.status = Status::HypothesesViolated;
        report.notes.push("the arrangement is a pencil".into());
        return report;
    }
    if !system.is_strict() {
        report.status = Status::HypothesesViolated;
        report.notes.push("some line has trivial monodromy".into());
        return report;
    }
    let part = &system.partition;
    if let Some(line) = criterion_cdo(lattice, part) {
        report.criterion = Some(Criterion::Cdo);
        report.status = Status::VanishingCertified;
        report.evidence.cdo_line = Some(line);
        return report;
    }
    let single = criterion_single_bad_point(lattice, part);
    if let Some((h0, p)) = single.witness {
        let model = DivisorModel::blow_up_multiple_points(lattice);
        let cert = certificate_from_single_bad_point(&model, h0, p, part)
            .ok()
            .and_then(|d| verify_nm(&model, &d, None).ok());
        report.evidence.single_bad_point = Some(single);
        if cert.is_some() {
            report.criterion = Some(Criterion::SingleBadPoint);
            report.status = Status::VanishingCertified;
            report.evidence.single_bad_point_certificate = cert;
            return report;
        }
        report.notes.push("single bad point construction failed its NM check".into());
    } else {
        if !single.single_lines.is_empty() {
            report.notes.push(format!(
                "{} line(s) carry a single T=1 point, but every such point lies on a line meeting the arrangement only in T=1 points",
                single.single_lines.len()
            ));
        }
        report.evidence.single_bad_point = Some(single);
    }
    let mut notes = Vec::new();
    let pipeline = run_pipeline(arrangement, lattice, part, options, &mut notes);
    report.criterion = Some(Criterion::FullPipeline);
    let certified = matches!(pipeline.nm, NmOutcome::Certificate(_))
        && pipeline.self_intersection.as_ref().is_some_and(Signed::is_positive)
        && pipeline.connected
        && pipeline.exclusion.as_ref().is_some_and(CurveExclusionReport::is_complete);
    report.status = if certified {
        Status::VanishingCertified
    } else {
        Status::Inconclusive
    };
    if !certified && notes.is_empty() {
        notes.push("bad-curve exclusion incomplete".into());
    }
    report.notes.extend(notes);
    report.evidence.pipeline = Some(pipeline);
    report
}
