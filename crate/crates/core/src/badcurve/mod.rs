//! Curves whose strict transform misses the boundary divisor, and the
//! incidence computations used to rule them out.

pub mod bound;
pub mod exclude;
pub mod incidence;
pub mod mult;
pub mod star;

pub use bound::{auto_degree_bound, degree_bound_analysis, DegreeBoundAnalysis};
pub use exclude::{
    exclude_bad_curves, exclude_bad_curves_with, reference_order, BoundKind, CurveExclusionReport, DegreePolicy,
    DegreeReport, DegreeStatus, ExclusionOptions, ExclusionReason, VectorOutcome, VectorVerdict,
};
pub use incidence::{
    collinear_subsets, common_elements, conics_with_min_incidence, conics_with_min_incidence_brute,
    pairwise_overlap_table, CollinearScan, ConicIncidence, ConicScan,
};
pub use mult::{enumerate_mult_vectors, MultiplicityVector};
pub use star::{star_configuration_check, StarVerdict};
