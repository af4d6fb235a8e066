//! Intersection lattice: the multiple points of an arrangement with incidences.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use super::Arrangement;
use crate::exactgeom::ProjPoint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    pub point: ProjPoint,
    /// Sorted indices of the lines through the point.
    pub incident: Vec<usize>,
}

impl LatticePoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }

    pub fn contains_line(&self, i: usize) -> bool {
        self.incident.binary_search(&i).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineStats {
    /// Number of points of multiplicity ≥ 3 on the line.
    pub k: usize,
    /// Number of nodes on the line.
    pub d: usize,
    /// All lattice points on the line, ascending.
    pub points: Vec<usize>,
}

/// Results of the two double-counting identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIdentities {
    /// Σ_p C(n_p, 2).
    pub pair_sum: usize,
    /// C(n, 2).
    pub line_pairs: usize,
    /// Lines violating Σ_{p ∈ H_i} (n_p − 1) = n − 1.
    pub bad_lines: Vec<usize>,
}

impl LatticeIdentities {
    pub fn hold(&self) -> bool {
        self.pair_sum == self.line_pairs && self.bad_lines.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    n: usize,
    points: Vec<LatticePoint>,
    per_line: Vec<LineStats>,
    /// `pair[i * n + j]` is the lattice point where lines i and j meet.
    pair: Vec<u32>,
    index: HashMap<ProjPoint, usize>,
    identities: LatticeIdentities,
}

pub fn intersection_lattice(a: &Arrangement) -> IntersectionLattice {
    let lines = a.lines();
    let n = lines.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let meets: Vec<ProjPoint> = pairs
        .par_iter()
        .map(|&(i, j)| lines[i].meet(&lines[j]).expect("arrangement lines are distinct"))
        .collect();
    let mut groups: BTreeMap<ProjPoint, BTreeSet<usize>> = BTreeMap::new();
    for (p, &(i, j)) in meets.into_iter().zip(&pairs) {
        let s = groups.entry(p).or_default();
        s.insert(i);
        s.insert(j);
    }
    let points: Vec<LatticePoint> = groups
        .into_iter()
        .map(|(point, s)| LatticePoint {
            point,
            incident: s.into_iter().collect(),
        })
        .collect();
    IntersectionLattice::from_points(n, points)
}

impl IntersectionLattice {
    fn from_points(n: usize, points: Vec<LatticePoint>) -> Self {
        let mut per_line = vec![
            LineStats {
                k: 0,
                d: 0,
                points: Vec::new(),
            };
            n
        ];
        let mut pair = vec![u32::MAX; n * n];
        let mut index = HashMap::with_capacity(points.len());
        for (idx, p) in points.iter().enumerate() {
            index.insert(p.point.clone(), idx);
            for &i in &p.incident {
                let st = &mut per_line[i];
                st.points.push(idx);
                if p.multiplicity() >= 3 {
                    st.k += 1;
                } else {
                    st.d += 1;
                }
                for &j in &p.incident {
                    if i != j {
                        pair[i * n + j] = idx as u32;
                    }
                }
            }
        }
        let pair_sum = points
            .iter()
            .map(|p| p.multiplicity() * (p.multiplicity() - 1) / 2)
            .sum();
        let bad_lines = (0..n)
            .filter(|&i| {
                let s: usize = per_line[i]
                    .points
                    .iter()
                    .map(|&q| points[q].multiplicity() - 1)
                    .sum();
                s != n - 1
            })
            .collect();
        IntersectionLattice {
            n,
            points,
            per_line,
            pair,
            index,
            identities: LatticeIdentities {
                pair_sum,
                line_pairs: n * (n - 1) / 2,
                bad_lines,
            },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn point(&self, idx: usize) -> &LatticePoint {
        &self.points[idx]
    }

    pub fn per_line(&self) -> &[LineStats] {
        &self.per_line
    }

    pub fn identities(&self) -> &LatticeIdentities {
        &self.identities
    }

    /// Index of the point where lines `i ≠ j` meet.
    pub fn meet_index(&self, i: usize, j: usize) -> usize {
        assert_ne!(i, j, "a line does not meet itself in a point");
        self.pair[i * self.n + j] as usize
    }

    pub fn index_of(&self, p: &ProjPoint) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Indices of the points of multiplicity ≥ 3 (the set T).
    pub fn multiple_points(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.points[i].multiplicity() >= 3)
            .collect()
    }

    pub fn points_of_multiplicity(&self, m: usize) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.points[i].multiplicity() == m)
            .collect()
    }

    /// Number of points per multiplicity.
    pub fn multiplicity_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for p in &self.points {
            *out.entry(p.multiplicity()).or_insert(0) += 1;
        }
        out
    }

    /// Number of points per multiplicity on line `i`.
    pub fn line_profile(&self, i: usize) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &q in &self.per_line[i].points {
            *out.entry(self.points[q].multiplicity()).or_insert(0) += 1;
        }
        out
    }
}
