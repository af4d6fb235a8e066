//! Incidence enumerations over a fixed list of points: collinear subsets,
//! conics through many of the points, and overlaps between index sets.
//!
//! Indices are positions in the input list. Subsets come out sorted, and the
//! list of subsets is sorted lexicographically.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::exactgeom::curves::condition_rows;
use crate::exactgeom::linalg::{Echelon, Row};
use crate::exactgeom::modp::ModP;
use crate::exactgeom::proj::det3;
use crate::exactgeom::{Conic, ConicThroughFive, Cyclotomic, ProjPoint};

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}

fn on_line(points: &[ProjPoint], a: usize, b: usize, c: usize) -> bool {
    det3(points[a].coords(), points[b].coords(), points[c].coords()).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollinearScan {
    pub k: usize,
    pub sets: Vec<Vec<usize>>,
    /// Determinant evaluations performed.
    pub tests: u64,
    /// `k`-subsets decided, all of them.
    pub subsets_covered: u64,
}

/// `k`-subsets (`k` = 3 or 4) of pairwise distinct points that lie on one line.
/// Triples are tested exhaustively; a collinear quadruple contains its first
/// three points as a collinear triple, so quadruples extend triples.
pub fn collinear_subsets(points: &[ProjPoint], k: usize) -> CollinearScan {
    assert!(k == 3 || k == 4, "k must be 3 or 4");
    let n = points.len();
    let triples: Vec<Vec<usize>> = subsets(n, 3)
        .into_par_iter()
        .filter(|s| on_line(points, s[0], s[1], s[2]))
        .collect();
    let mut tests = binomial(n, 3);
    let sets = if k == 3 {
        triples
    } else {
        let mut out = Vec::new();
        for t in &triples {
            for m in t[2] + 1..n {
                tests += 1;
                if on_line(points, t[0], t[1], m) {
                    out.push(vec![t[0], t[1], t[2], m]);
                }
            }
        }
        out
    };
    CollinearScan {
        k,
        sets,
        tests,
        subsets_covered: binomial(n, k),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicIncidence {
    pub conic: Conic,
    pub points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicScan {
    pub threshold: usize,
    pub conics: Vec<ConicIncidence>,
    /// Linear systems solved.
    pub systems: u64,
}

fn conic_rows(points: &[ProjPoint]) -> Vec<Row> {
    points
        .iter()
        .map(|p| condition_rows(2, p, 1).pop().unwrap())
        .collect()
}

fn field_order(points: &[ProjPoint]) -> u32 {
    points.iter().map(ProjPoint::order).max().unwrap_or(1)
}

/// The conic through the given rows when it is unique.
fn unique_conic(order: u32, rows: &[Row], subset: &[usize]) -> Option<Vec<Cyclotomic>> {
    let mut e = Echelon::new(order, 6);
    for &i in subset {
        e.insert(rows[i].clone());
    }
    (e.nullity() == 1).then(|| e.nullspace().pop().unwrap())
}

fn incident(rows: &[Row], coeffs: &[Cyclotomic]) -> Vec<usize> {
    rows.iter()
        .enumerate()
        .filter(|(_, r)| {
            r.iter()
                .zip(coeffs)
                .fold(Cyclotomic::zero(coeffs[0].order()), |acc, (a, b)| &acc + &(a * b))
                .is_zero()
        })
        .map(|(i, _)| i)
        .collect()
}

fn canonical_conic(points: &[ProjPoint], set: &[usize]) -> Conic {
    for s in subsets(set.len(), 5) {
        let five: [ProjPoint; 5] = std::array::from_fn(|j| points[set[s[j]]].clone());
        if let ConicThroughFive::Unique(c) = crate::exactgeom::conic_through_five(&five) {
            return c;
        }
    }
    unreachable!("an incidence set of size >= 5 always has a 5-subset with a unique conic")
}

fn finish(points: &[ProjPoint], threshold: usize, sets: BTreeSet<Vec<usize>>, systems: u64) -> ConicScan {
    let conics = sets
        .into_iter()
        .map(|s| ConicIncidence {
            conic: canonical_conic(points, &s),
            points: s,
        })
        .collect();
    ConicScan {
        threshold,
        conics,
        systems,
    }
}

fn modp_rows(m: &ModP, points: &[ProjPoint]) -> Option<Vec<Vec<u64>>> {
    points
        .iter()
        .map(|p| {
            let [x, y, z] = m.reduce_point(p)?;
            Some(vec![
                m.mul(x, x),
                m.mul(x, y),
                m.mul(x, z),
                m.mul(y, y),
                m.mul(y, z),
                m.mul(z, z),
            ])
        })
        .collect()
}

/// Conics through at least `threshold` (≥ 6) of the points. Every 5-subset
/// is examined; those with a unique conic have the conic's full incidence set
/// counted. Conics are identified by their incidence sets, which determine
/// them once they have five or more points.
///
/// The scan runs modulo a large prime. A 5-subset of rank five mod p has rank
/// five exactly and its conic reduces to the one found mod p, so mod-p
/// incidence counts bound the exact ones from above; subsets of lower rank
/// mod p, and every set reaching the threshold, are redone exactly.
pub fn conics_with_min_incidence(points: &[ProjPoint], threshold: usize) -> ConicScan {
    assert!(threshold >= 6, "threshold must be at least 6");
    if points.len() < threshold {
        return ConicScan {
            threshold,
            conics: Vec::new(),
            systems: 0,
        };
    }
    let order = field_order(points);
    let rows = conic_rows(points);
    let (m, mrows) = (0..)
        .find_map(|skip| {
            let m = ModP::new(order, skip);
            modp_rows(&m, points).map(|r| (m, r))
        })
        .unwrap();
    let dot = |r: &[u64], v: &[u64]| r.iter().zip(v).fold(0, |acc, (a, b)| m.add(acc, m.mul(*a, *b)));
    let five = subsets(points.len(), 5);
    let systems = five.len() as u64;
    enum Hit {
        Modular(Vec<usize>, Vec<usize>),
        Exact(Vec<usize>),
    }
    let hits: Vec<Hit> = five
        .par_iter()
        .filter_map(|s| {
            let (rank, kernel) = m.rank_and_kernel(s.iter().map(|&i| mrows[i].clone()).collect(), 6);
            match kernel {
                Some(v) if rank == 5 => {
                    let inc: Vec<usize> = (0..points.len()).filter(|&i| dot(&mrows[i], &v) == 0).collect();
                    (inc.len() >= threshold).then(|| Hit::Modular(inc, s.clone()))
                }
                _ => {
                    let c = unique_conic(order, &rows, s)?;
                    let inc = incident(&rows, &c);
                    (inc.len() >= threshold).then_some(Hit::Exact(inc))
                }
            }
        })
        .collect();
    let mut sets = BTreeSet::new();
    let mut modular: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = std::collections::BTreeMap::new();
    for h in hits {
        match h {
            Hit::Exact(inc) => {
                sets.insert(inc);
            }
            Hit::Modular(inc, s) => {
                modular.entry(inc).or_insert(s);
            }
        }
    }
    for s in modular.into_values() {
        let c = unique_conic(order, &rows, &s).expect("rank five mod p implies rank five");
        let inc = incident(&rows, &c);
        if inc.len() >= threshold {
            sets.insert(inc);
        }
    }
    finish(points, threshold, sets, systems)
}

/// Oracle version: every `threshold`-subset is tested directly for a unique conic.
pub fn conics_with_min_incidence_brute(points: &[ProjPoint], threshold: usize) -> ConicScan {
    assert!(threshold >= 6, "threshold must be at least 6");
    let order = field_order(points);
    let rows = conic_rows(points);
    let all = subsets(points.len(), threshold);
    let systems = all.len() as u64;
    let sets: BTreeSet<Vec<usize>> = all
        .par_iter()
        .filter_map(|s| {
            let c = unique_conic(order, &rows, s)?;
            Some(incident(&rows, &c))
        })
        .collect();
    finish(points, threshold, sets, systems)
}

/// `table[i][j] = |sets[i] ∩ sets[j]|`.
pub fn pairwise_overlap_table(sets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let as_sets: Vec<BTreeSet<usize>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
    as_sets
        .iter()
        .map(|a| as_sets.iter().map(|b| a.intersection(b).count()).collect())
        .collect()
}

pub fn common_elements(sets: &[Vec<usize>]) -> Vec<usize> {
    let Some((first, rest)) = sets.split_first() else {
        return Vec::new();
    };
    first
        .iter()
        .copied()
        .filter(|x| rest.iter().all(|s| s.contains(x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: [i64; 3]) -> ProjPoint {
        ProjPoint::from_ints(1, c)
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(5, 5), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(binomial(30, 5), 142_506);
        assert_eq!(binomial(24, 4), 10_626);
    }

    #[test]
    fn collinear_grid() {
        // the 3x3 grid has 8 lines of three
        let pts: Vec<_> = (0..3).flat_map(|x| (0..3).map(move |y| pt([x, y, 1]))).collect();
        let s = collinear_subsets(&pts, 3);
        assert_eq!(s.sets.len(), 8);
        assert_eq!(s.tests, 84);
        assert!(collinear_subsets(&pts, 4).sets.is_empty());
        let row: Vec<_> = (0..5).map(|x| pt([x, 0, 1])).collect();
        assert_eq!(collinear_subsets(&row, 4).sets.len(), 5);
    }

    #[test]
    fn six_points_on_a_conic() {
        let pts: Vec<_> = [0, 1, -1, 2, -2, 3].iter().map(|&t| pt([1, t, t * t])).collect();
        let s = conics_with_min_incidence(&pts, 6);
        assert_eq!(s.conics.len(), 1);
        assert_eq!(s.conics[0].points, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(s.systems, 6);
        assert_eq!(s.conics, conics_with_min_incidence_brute(&pts, 6).conics);
    }

    #[test]
    fn overlaps() {
        let sets = vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 5]];
        assert_eq!(pairwise_overlap_table(&sets), vec![vec![3, 2, 1], vec![2, 3, 1], vec![1, 1, 2]]);
        assert_eq!(common_elements(&sets), vec![2]);
    }
}
