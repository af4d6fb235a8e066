//! Fourier–Motzkin elimination for homogeneous strict systems `A x > 0`.
//!
//! Feasible systems come back with a witness found by back-substitution.
//! Infeasible ones come back with nonnegative multipliers `y ≠ 0` such that
//! `yᵀA = 0`, which rules out any solution.

use num_traits::{One, Signed, Zero};

use crate::exactgeom::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FmOutcome {
    Feasible(Vec<Rational>),
    Infeasible(Vec<Rational>),
}

#[derive(Clone, Debug)]
struct Constraint {
    coeffs: Vec<Rational>,
    /// Multipliers expressing this constraint over the original rows.
    hist: Vec<Rational>,
    /// Original rows involved, for Chernikov's redundancy rule.
    origin_mask: Vec<bool>,
}

impl Constraint {
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(Signed::abs) {
            if !lead.is_one() {
                for c in self.coeffs.iter_mut().chain(self.hist.iter_mut()) {
                    *c /= &lead;
                }
            }
        }
        self
    }
}

/// Decides `∃ x : A x > 0` exactly.
pub fn strict_feasibility(rows: &[Vec<Rational>], nvars: usize) -> FmOutcome {
    let m = rows.len();
    let mut system: Vec<Constraint> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), nvars, "row length mismatch");
            let mut hist = vec![Rational::zero(); m];
            hist[i] = Rational::one();
            let mut origin_mask = vec![false; m];
            origin_mask[i] = true;
            Constraint {
                coeffs: r.clone(),
                hist,
                origin_mask,
            }
            .normalized()
        })
        .collect();
    let mut stages: Vec<Vec<Constraint>> = Vec::with_capacity(nvars + 1);
    for step in 0..=nvars {
        if let Some(c) = system.iter().find(|c| c.coeffs.iter().all(Zero::is_zero)) {
            return FmOutcome::Infeasible(c.hist.clone());
        }
        if step == nvars {
            break;
        }
        let v = nvars - 1 - step;
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for c in &system {
            if c.coeffs[v].is_positive() {
                pos.push(c);
            } else if c.coeffs[v].is_negative() {
                neg.push(c);
            } else {
                next.push(c.clone());
            }
        }
        for p in &pos {
            for q in &neg {
                let origins = p
                    .origin_mask
                    .iter()
                    .zip(&q.origin_mask)
                    .filter(|(a, b)| **a || **b)
                    .count();
                if origins > step + 2 {
                    continue;
                }
                let (wp, wq) = (-&q.coeffs[v], p.coeffs[v].clone());
                let comb = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
                    a.iter().zip(b).map(|(x, y)| x * &wp + y * &wq).collect()
                };
                let mut coeffs = comb(&p.coeffs, &q.coeffs);
                coeffs[v] = Rational::zero();
                let c = Constraint {
                    coeffs,
                    hist: comb(&p.hist, &q.hist),
                    origin_mask: p.origin_mask.iter().zip(&q.origin_mask).map(|(a, b)| *a || *b).collect(),
                }
                .normalized();
                if !next.iter().any(|d: &Constraint| d.coeffs == c.coeffs) {
                    next.push(c);
                }
            }
        }
        stages.push(std::mem::replace(&mut system, next));
    }
    // back-substitution, innermost variable first
    let mut x: Vec<Rational> = Vec::with_capacity(nvars);
    for (step, sys) in stages.iter().enumerate().rev() {
        let v = nvars - 1 - step;
        debug_assert_eq!(x.len(), v);
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for c in sys {
            let rest: Rational = c.coeffs[..v].iter().zip(&x).map(|(a, b)| a * b).sum();
            let a = &c.coeffs[v];
            if a.is_zero() {
                continue;
            }
            let bound = -&rest / a;
            if a.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l: Rational| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h: Rational| h.min(bound)));
            }
        }
        let val = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / Rational::from_integer(2.into()),
            (Some(l), None) => l.floor() + Rational::one(),
            (None, Some(h)) => h.ceil() - Rational::one(),
            (None, None) => Rational::one(),
        };
        x.push(val);
    }
    FmOutcome::Feasible(x)
}

/// `A x > 0` componentwise.
pub fn satisfies(rows: &[Vec<Rational>], x: &[Rational]) -> bool {
    rows.iter().all(|r| {
        let s: Rational = r.iter().zip(x).map(|(a, b)| a * b).sum();
        s.is_positive()
    })
}

/// `y ≥ 0`, `y ≠ 0` and `yᵀA = 0`.
pub fn is_farkas_certificate(rows: &[Vec<Rational>], nvars: usize, y: &[Rational]) -> bool {
    if y.len() != rows.len() || y.iter().any(Signed::is_negative) || y.iter().all(Zero::is_zero) {
        return false;
    }
    (0..nvars).all(|j| {
        let s: Rational = rows.iter().zip(y).map(|(r, w)| &r[j] * w).sum();
        s.is_zero()
    })
}
