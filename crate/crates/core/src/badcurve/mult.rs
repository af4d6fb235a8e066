//! Multiplicity vectors of candidate bad curves.
//!
//! A bad curve of degree `d` meets the arrangement only at `T₌₁` points, and
//! transversally to every line there. With `m_p` its multiplicity at `p`:
//! every line carries `Σ m_p = d`, summing over lines gives `Σ n_p m_p = n d`,
//! and the genus bound gives `(d-1)(d-2) ≥ Σ (m_p - 1)²`; the δ-invariant form
//! strengthens this to `(d-1)(d-2) ≥ Σ m_p (m_p - 1)`.

use crate::arrangement::IntersectionLattice;
use crate::localsys::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicityVector {
    pub degree: u32,
    /// `(lattice point, m_p)` for the points with `m_p > 0`, in enumeration order.
    pub mults: Vec<(usize, u32)>,
}

impl MultiplicityVector {
    pub fn support_size(&self) -> usize {
        self.mults.len()
    }

    pub fn milnor_sum(&self) -> u64 {
        self.mults.iter().map(|&(_, m)| ((m - 1) as u64).pow(2)).sum()
    }

    pub fn delta_sum(&self) -> u64 {
        self.mults.iter().map(|&(_, m)| (m as u64) * (m as u64 - 1)).sum()
    }

    pub fn genus_bound(&self) -> u64 {
        genus_bound(self.degree)
    }

    pub fn passes_delta(&self) -> bool {
        self.delta_sum() <= self.genus_bound()
    }

    /// `Σ n_p m_p`.
    pub fn weighted_sum(&self, lattice: &IntersectionLattice) -> u64 {
        self.mults
            .iter()
            .map(|&(p, m)| lattice.point(p).multiplicity() as u64 * m as u64)
            .sum()
    }
}

/// `(d-1)(d-2)`.
pub fn genus_bound(d: u32) -> u64 {
    (d as u64 - 1) * (d.max(2) as u64 - 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prunes {
    pub milnor: bool,
    pub delta: bool,
}

impl Prunes {
    pub const BOTH: Prunes = Prunes {
        milnor: true,
        delta: true,
    };
    pub const MILNOR: Prunes = Prunes {
        milnor: true,
        delta: false,
    };
}

struct Search<'a> {
    d: u32,
    bound: u64,
    prunes: Prunes,
    order: &'a [usize],
    /// Lines through each point, by position in `order`.
    lines_of: Vec<Vec<usize>>,
    line_sum: Vec<u32>,
    line_left: Vec<usize>,
    current: Vec<u32>,
    milnor: u64,
    delta: u64,
    out: Vec<MultiplicityVector>,
    limit: usize,
    truncated: bool,
}

impl Search<'_> {
    fn run(&mut self, k: usize) {
        if self.out.len() >= self.limit {
            self.truncated = true;
            return;
        }
        if k == self.order.len() {
            let mults = self
                .order
                .iter()
                .zip(&self.current)
                .filter(|(_, &m)| m > 0)
                .map(|(&p, &m)| (p, m))
                .collect();
            self.out.push(MultiplicityVector {
                degree: self.d,
                mults,
            });
            return;
        }
        let cap = self.lines_of[k]
            .iter()
            .map(|&j| self.d - self.line_sum[j])
            .min()
            .unwrap_or(self.d);
        for m in 0..=cap {
            let dm = if m == 0 { 0 } else { ((m - 1) as u64).pow(2) };
            let dd = m as u64 * (m as u64).saturating_sub(1);
            if self.prunes.milnor && self.milnor + dm > self.bound {
                break;
            }
            if self.prunes.delta && self.delta + dd > self.bound {
                break;
            }
            // the last free point on a line must complete its sum
            let closes = self.lines_of[k]
                .iter()
                .all(|&j| self.line_left[j] > 1 || self.line_sum[j] + m == self.d);
            if !closes {
                continue;
            }
            for &j in &self.lines_of[k] {
                self.line_sum[j] += m;
                self.line_left[j] -= 1;
            }
            self.current.push(m);
            self.milnor += dm;
            self.delta += dd;
            self.run(k + 1);
            self.milnor -= dm;
            self.delta -= dd;
            self.current.pop();
            for &j in &self.lines_of[k] {
                self.line_sum[j] -= m;
                self.line_left[j] += 1;
            }
        }
    }
}

/// Result of an enumeration; `truncated` is set when `limit` vectors were reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub vectors: Vec<MultiplicityVector>,
    pub truncated: bool,
}

/// All nonnegative solutions of the per-line equations over the `T₌₁` points
/// listed in `order`, lexicographic in that order.
pub fn enumerate_with(
    lattice: &IntersectionLattice,
    order: &[usize],
    d: u32,
    prunes: Prunes,
    limit: usize,
) -> Enumeration {
    assert!(d >= 1, "degree must be positive");
    let n = lattice.n();
    let mut line_left = vec![0usize; n];
    let lines_of: Vec<Vec<usize>> = order
        .iter()
        .map(|&p| lattice.point(p).incident.clone())
        .collect();
    for ls in &lines_of {
        for &j in ls {
            line_left[j] += 1;
        }
    }
    if line_left.contains(&0) {
        // a line without T₌₁ points cannot carry d > 0
        return Enumeration {
            vectors: Vec::new(),
            truncated: false,
        };
    }
    let mut s = Search {
        d,
        bound: genus_bound(d),
        prunes,
        order,
        lines_of,
        line_sum: vec![0; n],
        line_left,
        current: Vec::with_capacity(order.len()),
        milnor: 0,
        delta: 0,
        out: Vec::new(),
        limit,
        truncated: false,
    };
    s.run(0);
    Enumeration {
        vectors: s.out,
        truncated: s.truncated,
    }
}

/// Enumeration with both genus prunes and no limit.
pub fn enumerate_mult_vectors(
    lattice: &IntersectionLattice,
    partition: &Partition,
    d: u32,
) -> Vec<MultiplicityVector> {
    enumerate_with(lattice, &partition.t_eq1, d, Prunes::BOTH, usize::MAX).vectors
}
