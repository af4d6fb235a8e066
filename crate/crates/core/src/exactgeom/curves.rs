//! Linear systems of plane curves with prescribed points and multiplicities.

use num_bigint::BigInt;
use num_traits::One;

use super::cyclotomic::Cyclotomic;
use super::linalg::{Echelon, Row};
use super::proj::ProjPoint;

/// Exponent triples `(a, b, c)` of the degree-`d` monomials `x^a y^b z^c`,
/// ordered `x^d, x^(d-1) y, x^(d-1) z, x^(d-2) y², …, z^d`.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

pub fn monomial_count(d: u32) -> usize {
    ((d + 1) * (d + 2) / 2) as usize
}

fn falling(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j))
}

fn powers(x: &Cyclotomic, d: u32) -> Vec<Cyclotomic> {
    let mut out = vec![Cyclotomic::one(x.order())];
    for _ in 0..d {
        let next = out.last().unwrap() * x;
        out.push(next);
    }
    out
}

/// Rows expressing that a degree-`d` form vanishes to order `m` at `p`:
/// every partial derivative of order `m - 1` vanishes there (Euler's identity
/// then takes care of the lower orders).
pub fn condition_rows(d: u32, p: &ProjPoint, m: u32) -> Vec<Row> {
    assert!(m >= 1, "multiplicity must be positive");
    let mons = monomials(d);
    let [x, y, z] = p.coords();
    let (px, py, pz) = (powers(x, d), powers(y, d), powers(z, d));
    let order = p.order();
    let k = m - 1;
    let mut rows = Vec::new();
    for i in (0..=k).rev() {
        for j in (0..=k - i).rev() {
            let l = k - i - j;
            let row = mons
                .iter()
                .map(|&[a, b, c]| {
                    if a < i || b < j || c < l {
                        return Cyclotomic::zero(order);
                    }
                    let coef = falling(a, i) * falling(b, j) * falling(c, l);
                    let v = &(&px[(a - i) as usize] * &py[(b - j) as usize]) * &pz[(c - l) as usize];
                    v.scale(&coef.into())
                })
                .collect();
            rows.push(row);
        }
    }
    rows
}

/// Evaluates the form with coefficients `coeffs` (in [`monomials`] order) at `p`.
pub fn eval_form(d: u32, coeffs: &[Cyclotomic], p: &ProjPoint) -> Cyclotomic {
    let row = condition_rows(d, p, 1).pop().unwrap();
    row.iter()
        .zip(coeffs)
        .fold(Cyclotomic::zero(p.order()), |acc, (a, b)| &acc + &(a * b))
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    pub degree: u32,
    pub conditions: Vec<(ProjPoint, u32)>,
    /// Vector-space dimension of the degree-`d` forms meeting every condition.
    pub dimension: usize,
    echelon: Echelon,
}

impl LinearSystem {
    /// Basis of the forms in the system, coefficients in [`monomials`] order.
    pub fn basis(&self) -> Vec<Row> {
        self.echelon.nullspace()
    }

    pub fn is_empty(&self) -> bool {
        self.dimension == 0
    }
}

/// Incremental construction; lets callers watch the dimension drop condition by condition.
#[derive(Clone, Debug)]
pub struct SystemBuilder {
    degree: u32,
    conditions: Vec<(ProjPoint, u32)>,
    echelon: Echelon,
}

impl SystemBuilder {
    pub fn new(order: u32, degree: u32) -> Self {
        assert!(degree >= 1, "curve degree must be positive");
        SystemBuilder {
            degree,
            conditions: Vec::new(),
            echelon: Echelon::new(order, monomial_count(degree)),
        }
    }

    pub fn dimension(&self) -> usize {
        self.echelon.nullity()
    }

    /// Adds a condition and returns the new dimension.
    pub fn add(&mut self, p: &ProjPoint, m: u32) -> usize {
        for row in condition_rows(self.degree, p, m) {
            if self.echelon.is_full() {
                break;
            }
            self.echelon.insert(row);
        }
        self.conditions.push((p.clone(), m));
        self.dimension()
    }

    pub fn finish(self) -> LinearSystem {
        LinearSystem {
            degree: self.degree,
            dimension: self.echelon.nullity(),
            conditions: self.conditions,
            echelon: self.echelon,
        }
    }
}

pub fn curve_system(order: u32, d: u32, conditions: &[(ProjPoint, u32)]) -> LinearSystem {
    let mut b = SystemBuilder::new(order, d);
    for (p, m) in conditions {
        b.add(p, *m);
    }
    b.finish()
}

/// A conic `Σ c_j · monomial_j`, canonical up to scaling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Conic {
    pub coeffs: [Cyclotomic; 6],
}

impl Conic {
    pub fn from_coeffs(coeffs: Vec<Cyclotomic>) -> Option<Self> {
        let lead = coeffs.iter().position(|c| !c.is_zero())?;
        let inv = coeffs[lead].inverse().ok()?;
        let v: Vec<Cyclotomic> = coeffs.iter().map(|c| c * &inv).collect();
        Some(Conic {
            coeffs: v.try_into().ok()?,
        })
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        eval_form(2, &self.coeffs, p).is_zero()
    }

    /// True when the conic factors as a product of two lines (determinant of its symmetric matrix is zero).
    pub fn is_degenerate(&self) -> bool {
        let c = &self.coeffs;
        let half = Cyclotomic::from_rational(1, super::rational::rat(1, 2));
        let (a, b, cc, d, e, f) = (&c[0], &(&c[1] * &half), &(&c[2] * &half), &c[3], &(&c[4] * &half), &c[5]);
        let m = [
            [a.clone(), b.clone(), cc.clone()],
            [b.clone(), d.clone(), e.clone()],
            [cc.clone(), e.clone(), f.clone()],
        ];
        super::proj::det3(&m[0], &m[1], &m[2]).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicThroughFive {
    Unique(Conic),
    NonUnique { dimension: usize },
}

pub fn conic_through_five(points: &[ProjPoint; 5]) -> ConicThroughFive {
    let order = points.iter().map(ProjPoint::order).max().unwrap_or(1);
    let conds: Vec<_> = points.iter().map(|p| (p.clone(), 1)).collect();
    let sys = curve_system(order, 2, &conds);
    if sys.dimension == 1 {
        let basis = sys.basis().pop().unwrap();
        ConicThroughFive::Unique(Conic::from_coeffs(basis).expect("basis vector is nonzero"))
    } else {
        ConicThroughFive::NonUnique {
            dimension: sys.dimension,
        }
    }
}
