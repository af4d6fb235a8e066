//! Degree-by-degree exclusion of bad curves.

use rayon::prelude::*;

use super::bound::{degree_bound_analysis, DegreeBoundAnalysis};
use super::mult::{enumerate_with, MultiplicityVector, Prunes};
use crate::arrangement::IntersectionLattice;
use crate::exactgeom::linalg::Row;
use crate::exactgeom::{ProjPoint, SystemBuilder};
use crate::localsys::Partition;

/// How far up in degree to go.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreePolicy {
    /// Only a proven bound; without one nothing is checked.
    Proven,
    /// The given bound, reported as user-supplied.
    User(u32),
    /// The proven bound when available, otherwise the given one.
    ProvenOr(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Proven(u32),
    User(u32),
}

impl BoundKind {
    pub fn value(self) -> u32 {
        match self {
            BoundKind::Proven(d) | BoundKind::User(d) => d,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VectorVerdict {
    /// Conditions, in order, after which no curve of the degree is left.
    EmptyLinearSystem { prefix: Vec<(usize, u32)> },
    /// Curves exist but the δ-form of the genus bound fails.
    DeltaGenus { delta_sum: u64, genus_bound: u64 },
    /// Curves exist; irreducibility is not decided.
    Candidate { dimension: usize, basis: Vec<Row> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorOutcome {
    pub vector: MultiplicityVector,
    pub verdict: VectorVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExclusionReason {
    NoFeasibleVector,
    EmptyLinearSystem,
    DeltaGenus,
    /// Every vector is excluded, by different checks.
    VectorChecks,
}

impl ExclusionReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ExclusionReason::NoFeasibleVector => "no-feasible-vector",
            ExclusionReason::EmptyLinearSystem => "empty-linear-system",
            ExclusionReason::DeltaGenus => "delta-genus",
            ExclusionReason::VectorChecks => "vector-checks",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeStatus {
    Excluded(ExclusionReason),
    Candidate,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: u32,
    pub status: DegreeStatus,
    pub vectors: Vec<VectorOutcome>,
}

impl DegreeReport {
    pub fn candidates(&self) -> impl Iterator<Item = &VectorOutcome> {
        self.vectors
            .iter()
            .filter(|v| matches!(v.verdict, VectorVerdict::Candidate { .. }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveExclusionReport {
    pub bound: Option<BoundKind>,
    pub analysis: DegreeBoundAnalysis,
    /// `T₌₁` points in the order used for enumeration and rank tests.
    pub point_order: Vec<usize>,
    pub degrees: Vec<DegreeReport>,
}

impl CurveExclusionReport {
    /// Every degree excluded up to a proven bound.
    pub fn is_complete(&self) -> bool {
        matches!(self.bound, Some(BoundKind::Proven(_)))
            && self
                .degrees
                .iter()
                .all(|d| matches!(d.status, DegreeStatus::Excluded(_)))
    }

    pub fn candidates(&self) -> impl Iterator<Item = &VectorOutcome> {
        self.degrees.iter().flat_map(DegreeReport::candidates)
    }

    /// Re-runs every piece of exclusion evidence from scratch.
    pub fn reverify(&self, lattice: &IntersectionLattice, options: &ExclusionOptions) -> bool {
        let order = lattice_field_order(lattice);
        self.degrees.iter().all(|deg| match &deg.status {
            DegreeStatus::Excluded(ExclusionReason::NoFeasibleVector) => {
                let e = enumerate_with(lattice, &self.point_order, deg.degree, Prunes::MILNOR, options.vector_limit);
                e.vectors.is_empty() && !e.truncated
            }
            DegreeStatus::Excluded(_) => deg.vectors.iter().all(|v| match &v.verdict {
                VectorVerdict::EmptyLinearSystem { prefix } => {
                    let mut b = SystemBuilder::new(order, deg.degree);
                    for &(p, m) in prefix {
                        b.add(&lattice.point(p).point, m);
                    }
                    b.dimension() == 0
                }
                VectorVerdict::DeltaGenus {
                    delta_sum,
                    genus_bound,
                } => v.vector.delta_sum() == *delta_sum && *delta_sum > *genus_bound,
                VectorVerdict::Candidate { .. } => false,
            }),
            _ => true,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ExclusionOptions {
    pub policy: DegreePolicy,
    /// Order of the `T₌₁` points; lattice order when absent.
    pub point_order: Option<Vec<usize>>,
    /// Degrees with more vectors than this are skipped.
    pub vector_limit: usize,
}

impl Default for ExclusionOptions {
    fn default() -> Self {
        ExclusionOptions {
            policy: DegreePolicy::Proven,
            point_order: None,
            vector_limit: 200_000,
        }
    }
}

pub(crate) fn lattice_field_order(lattice: &IntersectionLattice) -> u32 {
    lattice
        .points()
        .iter()
        .map(|p| p.point.order())
        .max()
        .unwrap_or(1)
}

/// `T₌₁` points at the given reference points first, then the rest by lattice index.
pub fn reference_order(lattice: &IntersectionLattice, partition: &Partition, reference: &[ProjPoint]) -> Vec<usize> {
    let mut out: Vec<usize> = reference
        .iter()
        .filter_map(|p| lattice.index_of(p))
        .filter(|&i| partition.is_eq1(i))
        .collect();
    let mut seen: std::collections::BTreeSet<usize> = out.iter().copied().collect();
    for &p in &partition.t_eq1 {
        if seen.insert(p) {
            out.push(p);
        }
    }
    out
}

fn judge(lattice: &IntersectionLattice, order: u32, v: MultiplicityVector) -> VectorOutcome {
    let mut b = SystemBuilder::new(order, v.degree);
    let mut prefix = Vec::new();
    for &(p, m) in &v.mults {
        prefix.push((p, m));
        if b.add(&lattice.point(p).point, m) == 0 {
            return VectorOutcome {
                vector: v,
                verdict: VectorVerdict::EmptyLinearSystem { prefix },
            };
        }
    }
    let verdict = if !v.passes_delta() {
        VectorVerdict::DeltaGenus {
            delta_sum: v.delta_sum(),
            genus_bound: v.genus_bound(),
        }
    } else {
        let sys = b.finish();
        VectorVerdict::Candidate {
            dimension: sys.dimension,
            basis: sys.basis(),
        }
    };
    VectorOutcome { vector: v, verdict }
}

pub fn exclude_bad_curves_with(
    lattice: &IntersectionLattice,
    partition: &Partition,
    options: &ExclusionOptions,
) -> CurveExclusionReport {
    let analysis = degree_bound_analysis(lattice, partition);
    let bound = match (options.policy, analysis.bound) {
        (DegreePolicy::Proven, b) => b.map(BoundKind::Proven),
        (DegreePolicy::ProvenOr(_), Some(b)) => Some(BoundKind::Proven(b)),
        (DegreePolicy::ProvenOr(d) | DegreePolicy::User(d), _) => Some(BoundKind::User(d)),
    };
    let point_order = options
        .point_order
        .clone()
        .unwrap_or_else(|| partition.t_eq1.clone());
    let field = lattice_field_order(lattice);
    let degrees = (1..=bound.map_or(0, BoundKind::value))
        .map(|d| {
            let e = enumerate_with(lattice, &point_order, d, Prunes::MILNOR, options.vector_limit);
            if e.truncated {
                return DegreeReport {
                    degree: d,
                    status: DegreeStatus::Skipped(format!("more than {} vectors", options.vector_limit)),
                    vectors: Vec::new(),
                };
            }
            let vectors: Vec<VectorOutcome> = e
                .vectors
                .into_par_iter()
                .map(|v| judge(lattice, field, v))
                .collect();
            let status = if vectors.is_empty() {
                DegreeStatus::Excluded(ExclusionReason::NoFeasibleVector)
            } else if vectors
                .iter()
                .any(|v| matches!(v.verdict, VectorVerdict::Candidate { .. }))
            {
                DegreeStatus::Candidate
            } else if vectors
                .iter()
                .all(|v| matches!(v.verdict, VectorVerdict::EmptyLinearSystem { .. }))
            {
                DegreeStatus::Excluded(ExclusionReason::EmptyLinearSystem)
            } else if vectors
                .iter()
                .all(|v| matches!(v.verdict, VectorVerdict::DeltaGenus { .. }))
            {
                DegreeStatus::Excluded(ExclusionReason::DeltaGenus)
            } else {
                DegreeStatus::Excluded(ExclusionReason::VectorChecks)
            };
            DegreeReport {
                degree: d,
                status,
                vectors,
            }
        })
        .collect();
    CurveExclusionReport {
        bound,
        analysis,
        point_order,
        degrees,
    }
}

pub fn exclude_bad_curves(
    lattice: &IntersectionLattice,
    partition: &Partition,
    policy: DegreePolicy,
) -> CurveExclusionReport {
    exclude_bad_curves_with(
        lattice,
        partition,
        &ExclusionOptions {
            policy,
            ..Default::default()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{gen_hexagonal, intersection_lattice, HexagonVariant};

    fn hexagon(variant: HexagonVariant) -> CurveExclusionReport {
        let a = gen_hexagonal(variant).unwrap();
        let l = intersection_lattice(&a);
        let eq1 = l.multiple_points().into_iter().collect();
        let part = Partition::symbolic(&l, &eq1).unwrap();
        let options = ExclusionOptions {
            policy: DegreePolicy::User(4),
            point_order: Some(reference_order(&l, &part, a.marked_points())),
            ..Default::default()
        };
        let r = exclude_bad_curves_with(&l, &part, &options);
        assert!(r.reverify(&l, &options));
        r
    }

    #[test]
    fn hexagon_on_conic_keeps_the_conic() {
        let r = hexagon(HexagonVariant::OnConic);
        assert_eq!(r.bound, Some(BoundKind::User(4)));
        assert_eq!(r.degrees[0].status, DegreeStatus::Excluded(ExclusionReason::EmptyLinearSystem));
        assert_eq!(r.degrees[1].status, DegreeStatus::Candidate);
        let c: Vec<_> = r.degrees[1].candidates().collect();
        assert_eq!(c.len(), 1);
        assert!(matches!(c[0].verdict, VectorVerdict::Candidate { dimension: 1, .. }));
        assert_eq!(r.degrees[2].status, DegreeStatus::Excluded(ExclusionReason::NoFeasibleVector));
        // the doubled conic passes through the six double points
        assert_eq!(r.degrees[3].status, DegreeStatus::Excluded(ExclusionReason::DeltaGenus));
        assert!(!r.is_complete());
    }

    #[test]
    fn hexagon_off_conic_is_excluded_up_to_four() {
        let r = hexagon(HexagonVariant::OffConic);
        assert_eq!(r.degrees[1].status, DegreeStatus::Excluded(ExclusionReason::EmptyLinearSystem));
        assert_eq!(r.degrees[3].status, DegreeStatus::Excluded(ExclusionReason::EmptyLinearSystem));
        assert_eq!(r.degrees[3].vectors.len(), 1);
        // user bounds never count as complete
        assert!(!r.is_complete());
    }
}
