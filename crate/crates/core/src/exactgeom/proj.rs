//! Points and lines of ℙ² over a cyclotomic field, kept in canonical form.

use std::fmt;

use super::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

pub type Triple = [Cyclotomic; 3];

fn canonicalize(mut v: Triple) -> Result<Triple> {
    let lead = v
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::Degenerate("zero vector has no projective class".into()))?;
    if !v[lead].is_one() {
        let inv = v[lead].inverse()?;
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
    }
    Ok(v)
}

pub fn dot(a: &Triple, b: &Triple) -> Cyclotomic {
    let mut s = &a[0] * &b[0];
    s += &(&a[1] * &b[1]);
    s += &(&a[2] * &b[2]);
    s
}

pub fn cross(a: &Triple, b: &Triple) -> Triple {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn det3(a: &Triple, b: &Triple, c: &Triple) -> Cyclotomic {
    dot(a, &cross(b, c))
}

fn check_order(a: &Triple, b: &Triple) -> Result<()> {
    let oa = a.iter().map(Cyclotomic::order).max().unwrap_or(1);
    let ob = b.iter().map(Cyclotomic::order).max().unwrap_or(1);
    if oa != ob && oa != 1 && ob != 1 {
        return Err(Error::MixedFields(oa, ob));
    }
    Ok(())
}

macro_rules! proj_type {
    ($name:ident, $prefix:literal) => {
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name {
            coords: Triple,
        }

        impl $name {
            pub fn new(coords: Triple) -> Result<Self> {
                Ok($name {
                    coords: canonicalize(coords)?,
                })
            }

            pub fn from_ints(order: u32, c: [i64; 3]) -> Self {
                Self::new(c.map(|x| Cyclotomic::from_int(order, x))).expect("nonzero integer triple")
            }

            pub fn coords(&self) -> &Triple {
                &self.coords
            }

            pub fn order(&self) -> u32 {
                self.coords.iter().map(Cyclotomic::order).max().unwrap_or(1)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}({})", $prefix, self)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let [a, b, c] = &self.coords;
                write!(f, "[{a}] : [{b}] : [{c}]")
            }
        }
    };
}

proj_type!(ProjPoint, "P");
proj_type!(ProjLine, "L");

impl ProjLine {
    pub fn contains(&self, p: &ProjPoint) -> bool {
        dot(&self.coords, &p.coords).is_zero()
    }

    pub fn eval(&self, p: &ProjPoint) -> Cyclotomic {
        dot(&self.coords, &p.coords)
    }

    /// Common point of two distinct lines.
    pub fn meet(&self, other: &ProjLine) -> Result<ProjPoint> {
        check_order(&self.coords, &other.coords)?;
        if self == other {
            return Err(Error::Degenerate("meet of a line with itself".into()));
        }
        ProjPoint::new(cross(&self.coords, &other.coords))
    }
}

impl ProjPoint {
    /// Line through two distinct points.
    pub fn join(&self, other: &ProjPoint) -> Result<ProjLine> {
        check_order(&self.coords, &other.coords)?;
        if self == other {
            return Err(Error::Degenerate("join of a point with itself".into()));
        }
        ProjLine::new(cross(&self.coords, &other.coords))
    }
}

pub fn join(a: &ProjPoint, b: &ProjPoint) -> Result<ProjLine> {
    a.join(b)
}

pub fn meet(a: &ProjLine, b: &ProjLine) -> Result<ProjPoint> {
    a.meet(b)
}

pub fn collinear(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Result<bool> {
    if p == q || p == r || q == r {
        return Err(Error::Degenerate("collinearity of repeated points".into()));
    }
    Ok(det3(&p.coords, &q.coords, &r.coords).is_zero())
}
