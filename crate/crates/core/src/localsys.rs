//! Rank-one local systems given by monodromy exponents.
//!
//! Line `i` has monodromy `t_i = exp(2πi·a_i)` with `a_i ∈ [0, 1)`. A Milnor
//! system of order `k` uses `a_i = 1/k` for every line (the choice between λ and
//! λ⁻¹ does not affect vanishing).

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::arrangement::IntersectionLattice;
use crate::error::{Error, Result};
use crate::exactgeom::rational::{fmt_rational, frac_part, is_integer, parse_rational, rat};
use crate::exactgeom::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSystem {
    exponents: Vec<Rational>,
}

impl LocalSystem {
    /// Exponents are reduced mod 1; their sum must be an integer.
    pub fn new(exponents: Vec<Rational>) -> Result<Self> {
        let exponents: Vec<Rational> = exponents.iter().map(frac_part).collect();
        let sum: Rational = exponents.iter().sum();
        if !is_integer(&sum) {
            return Err(Error::InvalidLocalSystem(format!(
                "exponents sum to {}, which is not an integer",
                fmt_rational(&sum)
            )));
        }
        Ok(LocalSystem { exponents })
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.exponents
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    /// No line has trivial monodromy.
    pub fn is_strict(&self) -> bool {
        self.exponents.iter().all(|a| !a.is_zero())
    }
}

/// All exponents `1/k`; requires `k ≥ 2` and `k | n`.
pub fn milnor_system(n: usize, k: u32) -> Result<LocalSystem> {
    if k < 2 || !n.is_multiple_of(k as usize) {
        return Err(Error::InvalidLocalSystem(format!(
            "Milnor order {k} does not divide the line count {n}"
        )));
    }
    LocalSystem::new(vec![rat(1, k as i64); n])
}

/// `Σ_{i ∋ p} a_i mod 1`; zero means `t_p = 1`.
pub fn total_turn_exponent(incident: &[usize], l: &LocalSystem) -> Rational {
    let s: Rational = incident.iter().map(|&i| &l.exponents[i]).sum();
    frac_part(&s)
}

/// Split of the points of multiplicity ≥ 3 by whether `t_p = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub t_eq1: Vec<usize>,
    pub t_neq1: Vec<usize>,
}

pub fn partition(lattice: &IntersectionLattice, l: &LocalSystem) -> Partition {
    let (mut t_eq1, mut t_neq1) = (Vec::new(), Vec::new());
    for idx in lattice.multiple_points() {
        if total_turn_exponent(&lattice.point(idx).incident, l).is_zero() {
            t_eq1.push(idx);
        } else {
            t_neq1.push(idx);
        }
    }
    Partition { t_eq1, t_neq1 }
}

impl Partition {
    /// Symbolic mode: the caller names the points with `t_p = 1`; every other
    /// point of multiplicity ≥ 3 goes to `T≠1`.
    pub fn symbolic(lattice: &IntersectionLattice, eq1: &BTreeSet<usize>) -> Result<Self> {
        let t: BTreeSet<usize> = lattice.multiple_points().into_iter().collect();
        if let Some(bad) = eq1.iter().find(|i| !t.contains(i)) {
            return Err(Error::InvalidLocalSystem(format!(
                "point {bad} is not a point of multiplicity >= 3"
            )));
        }
        Ok(Partition {
            t_eq1: eq1.iter().copied().collect(),
            t_neq1: t.difference(eq1).copied().collect(),
        })
    }

    pub fn is_eq1(&self, idx: usize) -> bool {
        self.t_eq1.binary_search(&idx).is_ok()
    }

    pub fn is_neq1(&self, idx: usize) -> bool {
        self.t_neq1.binary_search(&idx).is_ok()
    }

    /// `k'_i = #(H_i ∩ T≠1)` for each line.
    pub fn k_prime(&self, lattice: &IntersectionLattice) -> Vec<usize> {
        lattice
            .per_line()
            .iter()
            .map(|s| s.points.iter().filter(|&&q| self.is_neq1(q)).count())
            .collect()
    }

    /// `T₌₁` points on each line.
    pub fn eq1_on_lines(&self, lattice: &IntersectionLattice) -> Vec<Vec<usize>> {
        lattice
            .per_line()
            .iter()
            .map(|s| s.points.iter().copied().filter(|&q| self.is_eq1(q)).collect())
            .collect()
    }
}

/// Orders `k > 1` dividing `n` such that every line carries a point whose
/// multiplicity is divisible by `k`. Eigenvalues of other orders are known to
/// have trivial eigenspaces, so only these need certification.
pub fn milnor_order_filter(lattice: &IntersectionLattice) -> BTreeSet<u32> {
    let n = lattice.n();
    (2..=n as u32)
        .filter(|&k| n.is_multiple_of(k as usize))
        .filter(|&k| {
            lattice.per_line().iter().all(|s| {
                s.points
                    .iter()
                    .any(|&q| lattice.point(q).multiplicity().is_multiple_of(k as usize))
            })
        })
        .collect()
}

/// Text form: `exponents: a1 a2 …`, `milnor: k`, or `partition: eq1={i,j,…}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemSpec {
    Exponents(Vec<Rational>),
    Milnor(u32),
    /// Lattice point indices, or `None` for "the arrangement's marked points".
    Symbolic(Option<BTreeSet<usize>>),
}

pub fn parse_system_spec(text: &str) -> Result<SystemSpec> {
    let mut found = None;
    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let s = raw.split('#').next().unwrap().trim();
        if s.is_empty() {
            continue;
        }
        if found.is_some() {
            return Err(err("only one local-system directive is allowed".into()));
        }
        let (key, val) = s
            .split_once(':')
            .ok_or_else(|| err(format!("expected `key: value`, got {s:?}")))?;
        let val = val.trim();
        found = Some(match key.trim() {
            "exponents" => SystemSpec::Exponents(
                val.split_whitespace()
                    .map(parse_rational)
                    .collect::<Result<_>>()
                    .map_err(|e| err(e.to_string()))?,
            ),
            "milnor" => SystemSpec::Milnor(val.parse().map_err(|_| err(format!("bad order {val:?}")))?),
            "partition" => {
                let set = val
                    .strip_prefix("eq1=")
                    .ok_or_else(|| err("expected `eq1=...`".into()))?
                    .trim();
                if set == "marked" {
                    SystemSpec::Symbolic(None)
                } else {
                    let inner = set
                        .strip_prefix('{')
                        .and_then(|x| x.strip_suffix('}'))
                        .ok_or_else(|| err("expected `{i,j,...}`".into()))?;
                    let idx = inner
                        .split(',')
                        .map(str::trim)
                        .filter(|x| !x.is_empty())
                        .map(|x| x.parse::<usize>().map_err(|_| err(format!("bad index {x:?}"))))
                        .collect::<Result<BTreeSet<_>>>()?;
                    SystemSpec::Symbolic(Some(idx))
                }
            }
            other => return Err(err(format!("unknown local-system kind {other:?}"))),
        });
    }
    found.ok_or(Error::Parse {
        line: 0,
        msg: "empty local-system spec".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{gen_ceva, intersection_lattice};

    #[test]
    fn milnor_system_requires_divisibility() {
        let l = milnor_system(60, 6).unwrap();
        assert!(l.is_strict());
        assert_eq!(l.exponents().iter().sum::<Rational>(), rat(10, 1));
        assert_eq!(milnor_system(9, 3).unwrap().exponents()[0], rat(1, 3));
        assert!(milnor_system(60, 7).is_err());
    }

    #[test]
    fn non_integral_sum_is_named() {
        let e = LocalSystem::new(vec![rat(1, 2), rat(1, 3), rat(1, 2)]).unwrap_err();
        assert!(e.to_string().contains("4/3"), "{e}");
    }

    #[test]
    fn zero_exponents_give_trivial_turn() {
        let l = LocalSystem::new(vec![rat(0, 1); 4]).unwrap();
        assert!(total_turn_exponent(&[0, 1, 2], &l).is_zero());
        assert!(!l.is_strict());
    }

    #[test]
    fn ceva_partition_by_order() {
        let a = gen_ceva(4).unwrap();
        let lat = intersection_lattice(&a);
        let p = partition(&lat, &milnor_system(12, 4).unwrap());
        assert_eq!(p.t_eq1.len(), 3);
        assert_eq!(p.t_neq1.len(), 16);
        assert!(p.t_eq1.iter().all(|&i| lat.point(i).multiplicity() == 4));
    }

    #[test]
    fn order_filter_for_ceva() {
        let f = |m| milnor_order_filter(&intersection_lattice(&gen_ceva(m).unwrap()));
        assert_eq!(f(3), BTreeSet::from([3]));
        assert_eq!(f(4), BTreeSet::from([2, 3, 4]));
        assert_eq!(f(5), BTreeSet::from([3, 5]));
        assert_eq!(f(6), BTreeSet::from([2, 3, 6]));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(parse_system_spec("milnor: 6").unwrap(), SystemSpec::Milnor(6));
        assert_eq!(
            parse_system_spec("partition: eq1={3, 1}").unwrap(),
            SystemSpec::Symbolic(Some(BTreeSet::from([1, 3])))
        );
        assert_eq!(parse_system_spec("partition: eq1=marked").unwrap(), SystemSpec::Symbolic(None));
        assert!(matches!(
            parse_system_spec("# x\nexponents: 1/2 1/2 q"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
