//! Proven degree bounds for bad curves.
//!
//! Two profiles are covered. If every line carries exactly one `T₌₁` point,
//! the per-line equation forces the curve to be a line. If every line carries
//! exactly three `T₌₁` points and all of them have the same multiplicity `ν`,
//! Cauchy–Schwarz against the genus inequality bounds the degree, once for
//! curves through every `T₌₁` point and once for curves missing one of them.

use std::collections::BTreeSet;

use crate::arrangement::IntersectionLattice;
use crate::localsys::Partition;

/// Degrees surviving each branch of the three-per-line analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBoundAnalysis {
    /// Common number of `T₌₁` points per line.
    pub per_line: usize,
    /// Common multiplicity of the `T₌₁` points, when uniform.
    pub multiplicity: Option<usize>,
    /// Curves through every `T₌₁` point.
    pub full_support: Vec<u32>,
    /// Curves missing at least one `T₌₁` point.
    pub missing_point: Vec<u32>,
    pub bound: Option<u32>,
}

/// Integer `d ≥ 1` with `a d² + b d + c ≤ 0`, for `a > 0`.
fn quadratic_nonpositive(a: i128, b: i128, c: i128) -> Vec<u32> {
    assert!(a > 0);
    let limit = (b.abs() + c.abs()) / a + 2;
    (1..=limit)
        .filter(|&d| a * d * d + b * d + c <= 0)
        .map(|d| d as u32)
        .collect()
}

pub fn degree_bound_analysis(lattice: &IntersectionLattice, partition: &Partition) -> DegreeBoundAnalysis {
    let counts: BTreeSet<usize> = partition.eq1_on_lines(lattice).iter().map(Vec::len).collect();
    let mults: BTreeSet<usize> = partition
        .t_eq1
        .iter()
        .map(|&p| lattice.point(p).multiplicity())
        .collect();
    let multiplicity = (mults.len() == 1).then(|| *mults.first().unwrap());
    let mut out = DegreeBoundAnalysis {
        per_line: 0,
        multiplicity,
        full_support: Vec::new(),
        missing_point: Vec::new(),
        bound: None,
    };
    if counts.len() != 1 {
        return out;
    }
    out.per_line = *counts.first().unwrap();
    match (out.per_line, multiplicity) {
        // a curve of positive degree meets every line, necessarily in T₌₁
        (0, _) => out.bound = Some(0),
        (1, _) => out.bound = Some(1),
        (3, Some(nu)) => {
            let big_n = partition.t_eq1.len() as i128;
            let nu = nu as i128;
            // full support: s = N d / 3 and Σ(m-1)² ≥ (s-N)²/N give
            // 9(d-1)(d-2) ≥ N(d-3)²
            if big_n > 9 {
                out.full_support = quadratic_nonpositive(big_n - 9, 27 - 6 * big_n, 9 * big_n - 18);
            }
            // a missing point q: the ν lines through q each carry two further
            // points with multiplicities summing to d, all positive unless the
            // curve is a line, so Σ(m-1)² ≥ ν(d-2)²/2
            if nu > 2 {
                out.missing_point = quadratic_nonpositive(nu - 2, 6 - 4 * nu, 4 * nu - 4)
                    .into_iter()
                    .filter(|&d| d >= 2)
                    .collect();
            }
            if big_n > 9 && nu > 2 {
                let top = out.full_support.iter().chain(&out.missing_point).max().copied();
                out.bound = Some(top.unwrap_or(1).max(1));
            }
        }
        _ => {}
    }
    out
}

/// Largest degree a bad curve can have, when one of the covered profiles applies.
pub fn auto_degree_bound(lattice: &IntersectionLattice, partition: &Partition) -> Option<u32> {
    degree_bound_analysis(lattice, partition).bound
}
