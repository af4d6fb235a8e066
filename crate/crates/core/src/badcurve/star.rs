//! Star configurations: an even set of `T₌₁` points split into pairs whose
//! joining lines are arrangement lines, all through one further `T₌₁` point.

use std::collections::BTreeMap;

use crate::arrangement::IntersectionLattice;
use crate::localsys::Partition;

/// An arrangement line through `pair` whose only other `T₌₁` point outside the
/// set is `center`: if the two points were partners, this would be the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImpliedCenter {
    pub pair: (usize, usize),
    pub line: usize,
    pub center: usize,
}

/// Why a candidate center fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// No arrangement line joins `point` to the center.
    NotJoined { center: usize, point: usize },
    /// A line through the center carries `count ≠ 2` points of the set.
    LineCount { center: usize, line: usize, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarVerdict {
    Star {
        center: usize,
        pairs: Vec<(usize, usize)>,
    },
    NotStar {
        /// Implied centers in pair order, ending at the first disagreement.
        implied: Vec<ImpliedCenter>,
        /// One refutation per candidate center.
        refutations: Vec<Refutation>,
    },
}

fn common_line(lattice: &IntersectionLattice, p: usize, q: usize) -> Option<usize> {
    let a = &lattice.point(p).incident;
    lattice.point(q).incident.iter().copied().find(|i| a.contains(i))
}

fn check_center(lattice: &IntersectionLattice, set: &[usize], c: usize) -> Result<Vec<(usize, usize)>, Refutation> {
    let mut by_line: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &p in set {
        let line = common_line(lattice, p, c).ok_or(Refutation::NotJoined { center: c, point: p })?;
        by_line.entry(line).or_default().push(p);
    }
    by_line
        .into_iter()
        .map(|(line, pts)| match pts[..] {
            [a, b] => Ok((a, b)),
            _ => Err(Refutation::LineCount {
                center: c,
                line,
                count: pts.len(),
            }),
        })
        .collect()
}

/// Decides whether `set` (lattice indices, in the order pairs should be
/// scanned for the trace) is a star configuration. Candidate centers are the
/// `T₌₁` points outside the set.
pub fn star_configuration_check(set: &[usize], lattice: &IntersectionLattice, partition: &Partition) -> StarVerdict {
    let in_set = |p: usize| set.contains(&p);
    let mut refutations = Vec::new();
    for &c in partition.t_eq1.iter().filter(|&&c| !in_set(c)) {
        match check_center(lattice, set, c) {
            Ok(pairs) => return StarVerdict::Star { center: c, pairs },
            Err(r) => refutations.push(r),
        }
    }
    let mut implied: Vec<ImpliedCenter> = Vec::new();
    'scan: for (i, &p) in set.iter().enumerate() {
        for &q in &set[i + 1..] {
            let Some(line) = common_line(lattice, p, q) else {
                continue;
            };
            let others: Vec<usize> = lattice.per_line()[line]
                .points
                .iter()
                .copied()
                .filter(|&r| partition.is_eq1(r) && !in_set(r))
                .collect();
            if let [center] = others[..] {
                let conflict = implied.last().is_some_and(|s| s.center != center);
                implied.push(ImpliedCenter {
                    pair: (p, q),
                    line,
                    center,
                });
                if conflict {
                    break 'scan;
                }
            }
        }
    }
    StarVerdict::NotStar { implied, refutations }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::arrangement::{gen_ceva, intersection_lattice};

    #[test]
    fn star_around_a_ceva_triple_point() {
        // a triple point c of Ceva(3) with two more multiple points taken on each
        // of its lines; only those seven points get t_p = 1
        let a = gen_ceva(3).unwrap();
        let l = intersection_lattice(&a);
        let c = *l.points_of_multiplicity(3).first().unwrap();
        let set: Vec<usize> = l
            .point(c)
            .incident
            .iter()
            .flat_map(|&i| {
                l.per_line()[i]
                    .points
                    .iter()
                    .copied()
                    .filter(|&q| q != c && l.point(q).multiplicity() >= 3)
                    .take(2)
                    .collect::<Vec<_>>()
            })
            .collect();
        assert_eq!(set.len(), 6);
        let mut eq1: BTreeSet<usize> = set.iter().copied().collect();
        eq1.insert(c);
        let part = Partition::symbolic(&l, &eq1).unwrap();
        match star_configuration_check(&set, &l, &part) {
            StarVerdict::Star { center, pairs } => {
                assert_eq!(center, c);
                assert_eq!(pairs.len(), 3);
            }
            v => panic!("expected a star, got {v:?}"),
        }
        // replace one point by a multiple point on none of c's lines
        let far = l
            .multiple_points()
            .into_iter()
            .find(|&q| common_line(&l, q, c).is_none())
            .unwrap();
        let mut broken = set.clone();
        broken[0] = far;
        let mut eq1: BTreeSet<usize> = broken.iter().copied().collect();
        eq1.insert(c);
        let part = Partition::symbolic(&l, &eq1).unwrap();
        let StarVerdict::NotStar { refutations, .. } = star_configuration_check(&broken, &l, &part) else {
            panic!("a point off every line through c breaks the star");
        };
        assert_eq!(refutations, vec![Refutation::NotJoined { center: c, point: far }]);
    }
}
