//! Dense univariate polynomials, coefficients stored low degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;

pub type IntPoly = Vec<BigInt>;
pub type RatPoly = Vec<Rational>;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact division of integer polynomials; `None` if the divisor does not divide.
pub fn int_div_exact(num: &IntPoly, den: &IntPoly) -> Option<IntPoly> {
    let mut rem = num.clone();
    trim(&mut rem);
    let mut den = den.clone();
    trim(&mut den);
    let lead = den.last()?.clone();
    if rem.len() < den.len() {
        return rem.is_empty().then(Vec::new);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let (q, r) = rem.last().unwrap().div_rem(&lead);
        if !r.is_zero() {
            return None;
        }
        for (j, d) in den.iter().enumerate() {
            rem[shift + j] -= &q * d;
        }
        quot[shift] = q;
        trim(&mut rem);
    }
    rem.is_empty().then_some(quot)
}

/// The k-th cyclotomic polynomial, by dividing `x^k - 1` by every `Φ_d` with `d | k`, `d < k`.
pub fn cyclotomic_polynomial(k: u32) -> IntPoly {
    assert!(k >= 1, "cyclotomic polynomial needs k >= 1");
    let mut p: IntPoly = vec![BigInt::zero(); k as usize + 1];
    p[0] = -BigInt::one();
    p[k as usize] = BigInt::one();
    for d in (1..k).filter(|d| k.is_multiple_of(*d)) {
        p = int_div_exact(&p, &cyclotomic_polynomial(d)).expect("Φ_d divides x^k - 1");
    }
    p
}

pub fn rat_degree(p: &RatPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn rat_trimmed(mut p: RatPoly) -> RatPoly {
    trim(&mut p);
    p
}

pub fn rat_divrem(num: &RatPoly, den: &RatPoly) -> (RatPoly, RatPoly) {
    let den = rat_trimmed(den.clone());
    let dd = den.len() - 1;
    let lead_inv = den[dd].recip();
    let mut rem = rat_trimmed(num.clone());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    while rem.len() > dd && !rem.is_empty() {
        let shift = rem.len() - 1 - dd;
        let q = rem.last().unwrap() * &lead_inv;
        for (j, d) in den.iter().enumerate() {
            rem[shift + j] -= &q * d;
        }
        quot[shift] = q;
        trim(&mut rem);
    }
    (quot, rem)
}

pub fn rat_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rat_trimmed(out)
}

pub fn rat_sub(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    rat_trimmed(out)
}

/// Returns `s` with `s·a ≡ 1 (mod m)`, or `None` when `gcd(a, m) ≠ 1`.
pub fn rat_inverse_mod(a: &RatPoly, m: &RatPoly) -> Option<RatPoly> {
    let (mut r0, mut r1) = (rat_trimmed(m.clone()), rat_divrem(a, m).1);
    let (mut s0, mut s1): (RatPoly, RatPoly) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = rat_divrem(&r0, &r1);
        let s2 = rat_sub(&s0, &rat_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd; invertible iff it is a nonzero constant
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let s: RatPoly = s0.into_iter().map(|x| x * &c).collect();
    Some(rat_divrem(&s, m).1)
}
