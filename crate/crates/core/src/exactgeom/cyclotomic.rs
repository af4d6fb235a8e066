//! Exact arithmetic in the cyclotomic fields ℚ(ζ_k).
//!
//! An element is a polynomial in ζ_k of degree below φ(k), i.e. the unique
//! reduced residue modulo Φ_k. Equality is therefore coefficient-wise.
//! Field tables are built on first use and live for the rest of the process.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{cyclotomic_polynomial, rat_inverse_mod, IntPoly, RatPoly};
use super::rational::{fmt_rational, parse_rational, Rational};
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    modulus: IntPoly,
    /// `reduce[j]` expresses `ζ^(deg + j)` in the power basis `1, ζ, …, ζ^(deg-1)`.
    reduce: Vec<Vec<BigInt>>,
}

impl CyclotomicField {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    fn build(order: u32) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let deg = modulus.len() - 1;
        // ζ^deg = -(c_0 + c_1 ζ + … + c_{deg-1} ζ^(deg-1)), then shift repeatedly
        let mut cur: Vec<BigInt> = modulus[..deg].iter().map(|c| -c).collect();
        let extra = (order as usize).saturating_sub(deg).max(deg.saturating_sub(1));
        let mut reduce = Vec::with_capacity(extra);
        for _ in 0..extra {
            reduce.push(cur.clone());
            let top = cur[deg - 1].clone();
            let mut next = vec![BigInt::zero(); deg];
            for j in (1..deg).rev() {
                next[j] = cur[j - 1].clone();
            }
            for j in 0..deg {
                next[j] -= &top * &modulus[j];
            }
            cur = next;
        }
        CyclotomicField {
            order,
            modulus,
            reduce,
        }
    }
}

/// ℚ(ζ_1) = ℚ(ζ_2) = ℚ; both are stored as order 1.
fn canonical_order(order: u32) -> u32 {
    if order == 2 {
        1
    } else {
        order
    }
}

pub fn field(order: u32) -> &'static CyclotomicField {
    assert!(order >= 1, "cyclotomic field order must be positive");
    let order = canonical_order(order);
    static FIELDS: OnceLock<Mutex<HashMap<u32, &'static CyclotomicField>>> = OnceLock::new();
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = map.lock().expect("field cache poisoned");
    map.entry(order)
        .or_insert_with(|| Box::leak(Box::new(CyclotomicField::build(order))))
}

#[derive(Clone)]
pub struct Cyclotomic {
    field: &'static CyclotomicField,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let field = field(order);
        Cyclotomic {
            field,
            coeffs: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(n)))
    }

    /// ζ_k^e, reduced.
    pub fn root_of_unity(order: u32, exponent: u32) -> Self {
        let f = field(order);
        let k = f.order.max(1);
        let mut poly = vec![Rational::zero(); (exponent % k) as usize + 1];
        poly[(exponent % k) as usize] = Rational::one();
        Self::from_poly(order, poly)
    }

    /// Reduces an arbitrary polynomial in ζ modulo Φ_k.
    pub fn from_poly(order: u32, poly: RatPoly) -> Self {
        let f = field(order);
        let deg = f.degree();
        let mut coeffs = vec![Rational::zero(); deg];
        // ζ^j for j ≥ deg cycles through ζ^k = 1 before table reduction
        let k = f.order as usize;
        let mut folded = vec![Rational::zero(); k.max(deg)];
        for (j, c) in poly.into_iter().enumerate() {
            folded[j % k.max(1)] += c;
        }
        for (j, c) in folded.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < deg {
                coeffs[j] += c;
            } else {
                for (t, r) in f.reduce[j - deg].iter().enumerate() {
                    if !r.is_zero() {
                        coeffs[t] += &c * Rational::from_integer(r.clone());
                    }
                }
            }
        }
        Cyclotomic { field: f, coeffs }
    }

    /// Coefficients exactly as stored; length `φ(k)`.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let f = field(order);
        if coeffs.len() > f.degree() {
            // accept longer input and reduce
            return Ok(Self::from_poly(order, coeffs));
        }
        let mut c = coeffs;
        c.resize(f.degree(), Rational::zero());
        Ok(Cyclotomic { field: f, coeffs: c })
    }

    /// Parses the comma-separated coefficient form `c0, c1, …`.
    pub fn parse(order: u32, text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(order, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, when it lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    /// Brings `self` into the field of order `order` (only ℚ embeds elsewhere).
    pub fn embed(&self, order: u32) -> Result<Self> {
        let order = canonical_order(order);
        if self.field.order == order {
            return Ok(self.clone());
        }
        match (self.field.order, self.as_rational()) {
            (1, Some(r)) => Ok(Self::from_rational(order, r.clone())),
            _ => Err(Error::MixedFields(self.field.order, order)),
        }
    }

    fn common_field(&self, other: &Self) -> &'static CyclotomicField {
        if std::ptr::eq(self.field, other.field) {
            self.field
        } else if self.field.order == 1 {
            other.field
        } else if other.field.order == 1 {
            self.field
        } else {
            panic!(
                "mixed cyclotomic orders {} and {}",
                self.field.order, other.field.order
            )
        }
    }

    fn lifted(&self, f: &'static CyclotomicField) -> std::borrow::Cow<'_, Self> {
        if std::ptr::eq(self.field, f) {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(Self::from_rational(f.order, self.coeffs[0].clone()))
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo Φ_k.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.field;
        match f.degree() {
            1 => Ok(Self::from_rational(f.order, self.coeffs[0].recip())),
            2 => {
                // Φ = ζ² + pζ + q; the conjugate root is -p - ζ
                let p = Rational::from_integer(f.modulus[1].clone());
                let q = Rational::from_integer(f.modulus[0].clone());
                let (a, b) = (&self.coeffs[0], &self.coeffs[1]);
                let norm = a * a - a * b * &p + b * b * &q;
                let inv = norm.recip();
                Ok(Cyclotomic {
                    field: f,
                    coeffs: vec![(a - b * &p) * &inv, -(b * &inv)],
                })
            }
            _ => {
                let m: RatPoly = f
                    .modulus
                    .iter()
                    .map(|c| Rational::from_integer(c.clone()))
                    .collect();
                let s = rat_inverse_mod(&self.coeffs, &m).ok_or(Error::DivisionByZero)?;
                Self::from_coeffs(f.order, s)
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inverse()?)
    }

    /// Multiplies by the common denominator so that every coefficient is integral.
    pub fn denominator(&self) -> BigInt {
        super::rational::common_denominator(self.coeffs.iter())
    }

    fn trimmed_len(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map_or(0, |p| p + 1)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self.field, other.field) {
            return self.coeffs == other.coeffs;
        }
        if self.field.order == 1 || other.field.order == 1 {
            let (a, b) = (self.trimmed_len(), other.trimmed_len());
            return a <= 1 && b <= 1 && self.coeffs[0] == other.coeffs[0];
        }
        false
    }
}

impl Eq for Cyclotomic {}

impl Hash for Cyclotomic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs[..self.trimmed_len()].hash(state);
    }
}

impl Ord for Cyclotomic {
    /// Lexicographic on coefficients. Carries no analytic meaning.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.trimmed_len(), other.trimmed_len());
        let n = a.max(b);
        let zero = Rational::zero();
        for j in 0..n {
            let x = self.coeffs.get(j).unwrap_or(&zero);
            let y = other.coeffs.get(j).unwrap_or(&zero);
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        if a <= 1 && b <= 1 {
            Ordering::Equal
        } else {
            self.field.order.cmp(&other.field.order)
        }
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{}]", self.field.order, self)
    }
}

impl fmt::Display for Cyclotomic {
    /// Same comma-separated form the text formats accept.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.trimmed_len().max(1);
        let parts: Vec<String> = self.coeffs[..n].iter().map(fmt_rational).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let f = self.common_field(rhs);
        let (a, b) = (self.lifted(f), rhs.lifted(f));
        Cyclotomic {
            field: f,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let f = self.common_field(rhs);
        let (a, b) = (self.lifted(f), rhs.lifted(f));
        Cyclotomic {
            field: f,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if std::ptr::eq(self.field, rhs.field) {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if std::ptr::eq(self.field, rhs.field) {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let f = self.common_field(rhs);
        let deg = f.degree();
        if self.field.order == 1 || rhs.field.order == 1 {
            let (s, r) = if self.field.order == 1 {
                (&self.coeffs[0], rhs)
            } else {
                (&rhs.coeffs[0], self)
            };
            let mut out = r.lifted(f).into_owned();
            for c in out.coeffs.iter_mut() {
                if !c.is_zero() {
                    *c *= s;
                }
            }
            return out;
        }
        let mut prod = vec![Rational::zero(); 2 * deg - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut high = prod.split_off(deg);
        for (j, c) in high.iter_mut().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, r) in f.reduce[j].iter().enumerate() {
                if !r.is_zero() {
                    prod[t] += &*c * Rational::from_integer(r.clone());
                }
            }
        }
        Cyclotomic {
            field: f,
            coeffs: prod,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}
