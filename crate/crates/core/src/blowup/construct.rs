//! Explicit NM divisors: the single-bad-point construction and ε-extensions.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::{qdiv_dot, verify_nm, Component, DivisorModel, NmCertificate, QDivisor};
use crate::error::{Error, Result};
use crate::exactgeom::rational::{int, rat};
use crate::exactgeom::Rational;
use crate::localsys::Partition;

/// NM divisor around a line `H₀` whose only `T₌₁` point is `p`.
///
/// With `q_1, …, q_s` the `T≠1` points on `H₀`, the divisor is
/// `H̄₀ + Σ b_i E_{q_i} + Σ a_{i,c} H̄_{i,c}` over the other lines `H_{i,c}`
/// through `q_i`, where `a_{i,c} = 1/(2·(-H̄²))` if `H̄² < 0` (else 1) and
/// `b_i = 1 + (Σ_c a_{i,c})/2`. When `s = 0` it is `H̄₀ + ε H̄₁` for a line
/// `H₁` missing `p`, with `ε = 1/(2·max(1, -H̄₁²))`.
pub fn certificate_from_single_bad_point(
    model: &DivisorModel,
    h0: usize,
    p: usize,
    partition: &Partition,
) -> Result<QDivisor> {
    let lattice = model.lattice();
    let on_h0 = &lattice.per_line()[h0].points;
    let bad: Vec<usize> = on_h0.iter().copied().filter(|&q| partition.is_eq1(q)).collect();
    if bad != [p] {
        return Err(Error::Hypothesis(format!(
            "line {h0} carries T=1 points {bad:?}, expected exactly [{p}]"
        )));
    }
    let qs: Vec<usize> = on_h0.iter().copied().filter(|&q| partition.is_neq1(q)).collect();
    let mut d = QDivisor::new();
    d.set(Component::Line(h0), Rational::one());
    if qs.is_empty() {
        let h1 = (0..lattice.n())
            .find(|&i| !lattice.point(p).contains_line(i))
            .ok_or_else(|| Error::Hypothesis("arrangement is a pencil".into()))?;
        let sq = model.pairing(Component::Line(h1), Component::Line(h1));
        d.set(Component::Line(h1), rat(1, 2 * (-sq).max(1)));
    } else {
        for &q in &qs {
            if !model.is_blown(q) {
                return Err(Error::Hypothesis(format!("point {q} is not blown up")));
            }
            let mut sum_a = Rational::zero();
            for &i in &lattice.point(q).incident {
                if i == h0 {
                    continue;
                }
                let sq = model.pairing(Component::Line(i), Component::Line(i));
                let a = if sq < 0 { rat(1, 2 * (-sq)) } else { Rational::one() };
                sum_a += &a;
                d.set(Component::Line(i), a);
            }
            d.set(Component::Exc(q), Rational::one() + sum_a / int(2));
        }
    }
    verify_nm(model, &d, None)
        .map_err(|f| Error::Hypothesis(format!("constructed divisor fails the NM inequalities: {f:?}")))?;
    Ok(d)
}

/// Adds the components of `extra` layer by layer, each layer with a common
/// coefficient `ε`: half the largest value that keeps the new slacks positive
/// (1 when no bound applies). Every component must be reachable from the
/// current support through positive pairings.
pub fn extend_nm(model: &DivisorModel, cert: &NmCertificate, extra: &[Component]) -> Result<QDivisor> {
    let mut d = cert.divisor.clone();
    let mut support: BTreeSet<Component> = cert.slacks.keys().copied().collect();
    support.extend(d.support());
    let mut remaining: Vec<Component> = extra.iter().copied().filter(|c| !support.contains(c)).collect();
    remaining.sort();
    remaining.dedup();
    while !remaining.is_empty() {
        let (layer, rest): (Vec<Component>, Vec<Component>) = remaining
            .iter()
            .partition(|&&x| support.iter().any(|&s| model.pairing(s, x) > 0));
        if layer.is_empty() {
            return Err(Error::DisconnectedExtension(
                rest.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
            ));
        }
        let mut eps: Option<Rational> = None;
        for &x in &layer {
            let dx = qdiv_dot(model, &d, x);
            let q: i64 = layer.iter().map(|&y| model.pairing(x, y)).sum();
            if q < 0 {
                let bound = dx / int(-q);
                eps = Some(eps.map_or(bound.clone(), |e| e.min(bound)));
            }
        }
        let eps = eps.map_or_else(Rational::one, |e| e / int(2));
        debug_assert!(eps.is_positive());
        for &x in &layer {
            d.set(x, eps.clone());
            support.insert(x);
        }
        remaining = rest;
    }
    let all: Vec<Component> = support.into_iter().collect();
    verify_nm(model, &d, Some(&all))
        .map_err(|f| Error::Hypothesis(format!("extension fails the NM inequalities: {f:?}")))?;
    Ok(d)
}
