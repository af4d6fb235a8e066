//! Intersection theory on the blow-up of ℙ² at a set of lattice points.

pub mod construct;
pub mod fm;
pub mod search;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::arrangement::{Arrangement, IntersectionLattice};
use crate::error::{Error, Result};
use crate::exactgeom::{ProjLine, Rational};
use crate::localsys::Partition;

pub use construct::{certificate_from_single_bad_point, extend_nm};
pub use search::{nm_search, Infeasibility, NmSearch};

/// An irreducible curve on the blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    /// Strict transform of arrangement line `i`.
    Line(usize),
    /// Exceptional curve over lattice point `p`.
    Exc(usize),
    /// Strict transform of an auxiliary line that is not in the arrangement.
    Aux(usize),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Line(i) => write!(f, "H{i}"),
            Component::Exc(p) => write!(f, "E{p}"),
            Component::Aux(a) => write!(f, "L{a}"),
        }
    }
}

impl FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad component label {s:?}"));
        let (head, num) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: usize = num.parse().map_err(|_| bad())?;
        match head {
            "H" => Ok(Component::Line(n)),
            "E" => Ok(Component::Exc(n)),
            "L" => Ok(Component::Aux(n)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug)]
struct AuxLine {
    line: ProjLine,
    /// Lattice point where the auxiliary line crosses each arrangement line, if any.
    meets: Vec<Option<usize>>,
    points: BTreeSet<usize>,
}

/// `S = Bl_B ℙ²` together with the components it knows about.
#[derive(Clone, Debug)]
pub struct DivisorModel<'a> {
    lattice: &'a IntersectionLattice,
    blown: Vec<bool>,
    blown_on_line: Vec<usize>,
    aux: Vec<AuxLine>,
}

impl<'a> DivisorModel<'a> {
    pub fn new(lattice: &'a IntersectionLattice, blown: impl IntoIterator<Item = usize>) -> Self {
        let mut flags = vec![false; lattice.points().len()];
        for p in blown {
            flags[p] = true;
        }
        let blown_on_line = lattice
            .per_line()
            .iter()
            .map(|s| s.points.iter().filter(|&&q| flags[q]).count())
            .collect();
        DivisorModel {
            lattice,
            blown: flags,
            blown_on_line,
            aux: Vec::new(),
        }
    }

    /// Blows up every point of multiplicity ≥ 3.
    pub fn blow_up_multiple_points(lattice: &'a IntersectionLattice) -> Self {
        Self::new(lattice, lattice.multiple_points())
    }

    pub fn lattice(&self) -> &'a IntersectionLattice {
        self.lattice
    }

    pub fn is_blown(&self, p: usize) -> bool {
        self.blown[p]
    }

    pub fn blown(&self) -> Vec<usize> {
        (0..self.blown.len()).filter(|&p| self.blown[p]).collect()
    }

    /// Registers a line that is not in the arrangement.
    pub fn add_aux_line(&mut self, arrangement: &Arrangement, line: ProjLine) -> Result<Component> {
        if arrangement.lines().contains(&line) {
            return Err(Error::InvalidParameter("auxiliary line is an arrangement line".into()));
        }
        let meets: Vec<Option<usize>> = arrangement
            .lines()
            .iter()
            .map(|h| Ok(self.lattice.index_of(&h.meet(&line)?)))
            .collect::<Result<_>>()?;
        let points = meets.iter().flatten().copied().collect();
        self.aux.push(AuxLine { line, meets, points });
        Ok(Component::Aux(self.aux.len() - 1))
    }

    pub fn aux_line(&self, a: usize) -> &ProjLine {
        &self.aux[a].line
    }

    pub fn components(&self) -> Vec<Component> {
        (0..self.lattice.n())
            .map(Component::Line)
            .chain(self.blown().into_iter().map(Component::Exc))
            .chain((0..self.aux.len()).map(Component::Aux))
            .collect()
    }

    pub fn contains(&self, c: Component) -> bool {
        match c {
            Component::Line(i) => i < self.lattice.n(),
            Component::Exc(p) => p < self.blown.len() && self.blown[p],
            Component::Aux(a) => a < self.aux.len(),
        }
    }

    fn blown_idx(&self, p: Option<usize>) -> bool {
        p.is_some_and(|q| self.blown[q])
    }

    /// Intersection number of two components.
    pub fn pairing(&self, a: Component, b: Component) -> i64 {
        use Component::*;
        match (a, b) {
            (Line(i), Line(j)) if i == j => 1 - self.blown_on_line[i] as i64,
            (Line(i), Line(j)) => 1 - self.blown[self.lattice.meet_index(i, j)] as i64,
            (Exc(p), Exc(q)) => -((p == q) as i64),
            (Exc(p), Line(i)) | (Line(i), Exc(p)) => self.lattice.point(p).contains_line(i) as i64,
            (Aux(x), Aux(y)) if x == y => {
                1 - self.aux[x].points.iter().filter(|&&q| self.blown[q]).count() as i64
            }
            (Aux(x), Aux(y)) => {
                let p = self.aux[x].line.meet(&self.aux[y].line).expect("distinct auxiliary lines");
                1 - self.blown_idx(self.lattice.index_of(&p)) as i64
            }
            (Aux(x), Line(i)) | (Line(i), Aux(x)) => 1 - self.blown_idx(self.aux[x].meets[i]) as i64,
            (Aux(x), Exc(p)) | (Exc(p), Aux(x)) => self.aux[x].points.contains(&p) as i64,
        }
    }
}

/// Effective ℚ-divisor; only positive coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QDivisor(BTreeMap<Component, Rational>);

impl QDivisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(components: impl IntoIterator<Item = Component>) -> Self {
        QDivisor(components.into_iter().map(|c| (c, Rational::one())).collect())
    }

    /// Sets a coefficient; zero removes the component.
    pub fn set(&mut self, c: Component, v: Rational) {
        if v.is_zero() {
            self.0.remove(&c);
        } else {
            self.0.insert(c, v);
        }
    }

    pub fn coeff(&self, c: Component) -> Rational {
        self.0.get(&c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<Component> {
        self.0.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Component, &Rational)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn qdiv_dot(model: &DivisorModel, d: &QDivisor, c: Component) -> Rational {
    d.iter()
        .map(|(&x, a)| a * Rational::from_integer(model.pairing(x, c).into()))
        .sum()
}

pub fn qdiv_self(model: &DivisorModel, d: &QDivisor) -> Rational {
    d.iter().map(|(&c, a)| a * qdiv_dot(model, d, c)).sum()
}

/// Unit coefficients on every strict line and on `E_p` for `p ∈ T≠1`.
pub fn canonical_divisor(lattice: &IntersectionLattice, partition: &Partition) -> QDivisor {
    QDivisor::unit(
        (0..lattice.n())
            .map(Component::Line)
            .chain(partition.t_neq1.iter().map(|&p| Component::Exc(p))),
    )
}

/// Closed forms for the canonical divisor when exactly the points of
/// multiplicity ≥ 3 are blown up: `1 - k_i + k'_i + d_i` on lines and
/// `n_p - 1` (resp. `n_p`) on exceptional curves over `T≠1` (resp. `T₌₁`).
pub fn closed_form_slack(lattice: &IntersectionLattice, partition: &Partition, c: Component) -> Option<i64> {
    match c {
        Component::Line(i) => {
            let s = &lattice.per_line()[i];
            let kp = s.points.iter().filter(|&&q| partition.is_neq1(q)).count();
            Some(1 - s.k as i64 + kp as i64 + s.d as i64)
        }
        Component::Exc(p) => {
            let n = lattice.point(p).multiplicity() as i64;
            if partition.is_neq1(p) {
                Some(n - 1)
            } else if partition.is_eq1(p) {
                Some(n)
            } else {
                None
            }
        }
        Component::Aux(_) => None,
    }
}

/// A divisor with positive coefficients whose intersection with each support
/// component is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NmCertificate {
    pub divisor: QDivisor,
    pub slacks: BTreeMap<Component, Rational>,
    pub self_intersection: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NmFailure {
    /// Support components whose coefficient is not positive.
    pub nonpositive: Vec<Component>,
    /// Support components `C` with `D̃·C ≤ 0`, with the offending value.
    pub violations: Vec<(Component, Rational)>,
}

/// Checks the NM inequalities over `support` (the divisor's own support when `None`).
pub fn verify_nm(
    model: &DivisorModel,
    d: &QDivisor,
    support: Option<&[Component]>,
) -> std::result::Result<NmCertificate, NmFailure> {
    let support: Vec<Component> = support.map_or_else(|| d.support(), <[_]>::to_vec);
    let nonpositive: Vec<Component> = support
        .iter()
        .copied()
        .filter(|&c| !d.coeff(c).is_positive())
        .collect();
    let mut slacks = BTreeMap::new();
    let mut violations = Vec::new();
    for &c in &support {
        let s = qdiv_dot(model, d, c);
        if !s.is_positive() {
            violations.push((c, s.clone()));
        }
        slacks.insert(c, s);
    }
    if !nonpositive.is_empty() || !violations.is_empty() {
        return Err(NmFailure {
            nonpositive,
            violations,
        });
    }
    Ok(NmCertificate {
        divisor: d.clone(),
        self_intersection: qdiv_self(model, d),
        slacks,
    })
}

impl NmCertificate {
    /// Recomputes everything from the divisor alone.
    pub fn reverify(&self, model: &DivisorModel) -> bool {
        let support = self.slacks.keys().copied().collect::<Vec<_>>();
        verify_nm(model, &self.divisor, Some(&support)).is_ok_and(|c| c == *self)
    }
}

/// Connectivity of the graph on `support` with an edge wherever the pairing is positive.
pub fn divisor_connected(model: &DivisorModel, support: &[Component]) -> bool {
    if support.is_empty() {
        return false;
    }
    let mut seen = vec![false; support.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..support.len() {
            if !seen[j] && model.pairing(support[i], support[j]) > 0 {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
