//! The reflection arrangement of the complex reflection group G₃₁ in ℙ³ and
//! its plane sections.
//!
//! The defining polynomial is
//! `xyzt (x⁴-y⁴)(x⁴-z⁴)(x⁴-t⁴)(y⁴-z⁴)(y⁴-t⁴)(z⁴-t⁴)` times sixteen quadrics
//! `(u ± v)² ∓ (w ± s)²`; over ℚ(i) it splits into the 60 forms of [`g31_forms`].

use super::lattice::{intersection_lattice, IntersectionLattice};
use super::section::{default_elimination, restrict_to_plane, restrict_unchecked, Form4};
use super::Arrangement;
use crate::error::{Error, Result};
use crate::exactgeom::rational::int;
use crate::exactgeom::{Cyclotomic, ProjPoint};

/// ℚ(i) = ℚ(ζ₄).
pub const ORDER: u32 = 4;

/// The section plane used in the literature, `2x + 5y - 9z - t = 0`.
/// It passes through three points where four hyperplanes meet, so it is not generic.
pub const PUBLISHED_PLANE: [i64; 4] = [2, 5, -9, -1];

/// Generic plane used by default, `2x + 7y - 17z - t = 0`.
pub const DEFAULT_PLANE: [i64; 4] = [2, 7, -17, -1];

/// Gaussian integer `a + bi`.
type G = (i64, i64);

/// The 30 sextuple points of the section by [`PUBLISHED_PLANE`], exactly as
/// published, in the coordinates `(x : y : z)` of that plane.
pub const PUBLISHED_POINTS: [[G; 3]; 30] = [
    [(0, 0), (0, 0), (1, 0)],
    [(0, 0), (1, 0), (0, 0)],
    [(0, 0), (9, 0), (5, 0)],
    [(1, 0), (0, 0), (0, 0)],
    [(9, 0), (0, 0), (2, 0)],
    [(5, 0), (-2, 0), (0, 0)],
    [(10, 0), (10, 0), (7, 0)],
    [(8, 0), (8, 0), (7, 0)],
    [(-10, 0), (10, 0), (3, 0)],
    [(-8, 0), (8, 0), (3, 0)],
    [(4, 0), (7, 0), (4, 0)],
    [(6, 0), (7, 0), (6, 0)],
    [(-4, 0), (11, 0), (4, 0)],
    [(-6, 0), (11, 0), (6, 0)],
    [(4, 0), (1, 0), (1, 0)],
    [(14, 0), (-1, 0), (1, 0)],
    [(4, 0), (3, 0), (3, 0)],
    [(14, 0), (-3, 0), (3, 0)],
    [(9, -1), (1, 9), (2, 5)],
    [(9, 1), (-1, 9), (2, 5)],
    [(9, -1), (-1, -9), (2, -5)],
    [(9, 1), (1, -9), (2, -5)],
    [(5, 1), (-2, 9), (-1, 5)],
    [(5, -1), (-2, 9), (-1, 5)],
    [(5, 1), (-2, -9), (1, -5)],
    [(5, -1), (-2, -9), (-1, -5)],
    [(-5, 9), (2, -1), (1, 2)],
    [(5, -9), (-2, -1), (1, -2)],
    [(5, 9), (-2, 1), (1, 2)],
    [(-5, -9), (2, 1), (1, -2)],
];

/// The published 24th point is not on the section; the actual sextuple point
/// differs in the sign of the real part of its last coordinate.
pub const ERRATUM: (usize, [G; 3]) = (23, [(5, -1), (-2, 9), (1, 5)]);

fn gauss(g: G) -> Cyclotomic {
    Cyclotomic::from_coeffs(ORDER, vec![int(g.0), int(g.1)]).expect("two coefficients")
}

fn point(c: &[G; 3]) -> ProjPoint {
    ProjPoint::new(c.map(gauss)).expect("published points are nonzero")
}

pub fn published_points() -> Vec<ProjPoint> {
    PUBLISHED_POINTS.iter().map(point).collect()
}

/// Published points with [`ERRATUM`] applied.
pub fn corrected_points() -> Vec<ProjPoint> {
    let mut pts = published_points();
    pts[ERRATUM.0] = point(&ERRATUM.1);
    pts
}

pub fn plane(c: [i64; 4]) -> Form4 {
    c.map(|x| Cyclotomic::from_int(ORDER, x))
}

/// The 60 linear factors over ℚ(i), in a fixed order:
/// coordinates; `x_a - s x_b` for `s ∈ {1, -1, i, -i}`; `x ± y ± z ± t`;
/// then `(x_a ± x_b) ± i (x_c ± x_d)` for the three splittings of the variables.
pub fn g31_forms() -> Vec<Form4> {
    let one = Cyclotomic::one(ORDER);
    let i = Cyclotomic::root_of_unity(ORDER, 1);
    let zero = Cyclotomic::zero(ORDER);
    let mut forms: Vec<Form4> = Vec::with_capacity(60);
    for v in 0..4 {
        let mut f: Form4 = std::array::from_fn(|_| zero.clone());
        f[v] = one.clone();
        forms.push(f);
    }
    let units = [one.clone(), -&one, i.clone(), -&i];
    for a in 0..4 {
        for b in a + 1..4 {
            for s in &units {
                let mut f: Form4 = std::array::from_fn(|_| zero.clone());
                f[a] = one.clone();
                f[b] = -s;
                forms.push(f);
            }
        }
    }
    // (x_a + s1 x_b) + w (x_c + s2 x_d)
    let mut quad = |(a, b, c, d): (usize, usize, usize, usize), ws: &[Cyclotomic]| {
        for s1 in [-1, 1] {
            for s2 in [1, -1] {
                for w in ws {
                    let mut f: Form4 = std::array::from_fn(|_| zero.clone());
                    f[a] = one.clone();
                    f[b] = Cyclotomic::from_int(ORDER, s1);
                    f[c] = w.clone();
                    f[d] = w * &Cyclotomic::from_int(ORDER, s2);
                    forms.push(f);
                }
            }
        }
    };
    quad((0, 1, 2, 3), &[one.clone(), -&one]);
    for split in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
        quad(split, &[i.clone(), -&i]);
    }
    forms
}

fn lift(p: &ProjPoint, plane: &Form4, var: usize) -> Result<Form4> {
    // the plane coordinates are the remaining variables in order
    let mut v: Vec<Cyclotomic> = p.coords().to_vec();
    let mut rest = Cyclotomic::zero(ORDER);
    let mut k = 0;
    for (j, c) in plane.iter().enumerate() {
        if j == var {
            continue;
        }
        rest += &(c * &v[k]);
        k += 1;
    }
    let t = -&rest.div(&plane[var])?;
    v.insert(var, t);
    Ok(v.try_into().expect("four coordinates"))
}

/// Indices of the forms vanishing at each corrected published point, i.e. the
/// codimension-2 flat that the point represents.
pub fn reference_flats() -> Vec<Vec<usize>> {
    let forms = g31_forms();
    let pl = plane(PUBLISHED_PLANE);
    let var = default_elimination(&pl).expect("nonzero plane");
    corrected_points()
        .iter()
        .map(|p| {
            let v = lift(p, &pl, var).expect("plane solves for its last variable");
            (0..forms.len())
                .filter(|&i| {
                    let s = forms[i]
                        .iter()
                        .zip(&v)
                        .fold(Cyclotomic::zero(ORDER), |acc, (a, b)| &acc + &(a * b));
                    s.is_zero()
                })
                .collect()
        })
        .collect()
}

/// Sextuple points of a section, listed in reference order p₁, …, p₃₀.
pub fn label_sextuple_points(lattice: &IntersectionLattice) -> Result<Vec<ProjPoint>> {
    reference_flats()
        .into_iter()
        .enumerate()
        .map(|(j, flat)| {
            lattice
                .points()
                .iter()
                .find(|p| p.incident == flat)
                .map(|p| p.point.clone())
                .ok_or_else(|| Error::Genericity(format!("flat of p{} has no section point", j + 1)))
        })
        .collect()
}

pub fn gen_g31_section_on(plane_coeffs: [i64; 4]) -> Result<Arrangement> {
    let forms = g31_forms();
    let a = restrict_to_plane(ORDER, &forms, &plane(plane_coeffs), "g31-section")?;
    let marked = label_sextuple_points(&intersection_lattice(&a))?;
    Ok(a.with_marked_points(marked))
}

/// The G₃₁ arrangement cut by [`DEFAULT_PLANE`]: 60 lines over ℚ(i), with the
/// 30 sextuple points as marked points in reference order.
pub fn gen_g31_section() -> Arrangement {
    gen_g31_section_on(DEFAULT_PLANE).expect("default plane is generic")
}

/// The section by [`PUBLISHED_PLANE`], built without the genericity gate.
pub fn published_plane_section() -> Arrangement {
    let pl = plane(PUBLISHED_PLANE);
    let var = default_elimination(&pl).expect("nonzero plane");
    restrict_unchecked(ORDER, &g31_forms(), &pl, var, "g31-section-published-plane")
        .expect("forms restrict to distinct lines")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::int;

    fn eval(f: &Form4, v: &[Cyclotomic; 4]) -> Cyclotomic {
        f.iter()
            .zip(v)
            .fold(Cyclotomic::zero(ORDER), |acc, (a, b)| &acc + &(a * b))
    }

    /// The defining polynomial, written out factor by factor.
    fn defining_polynomial(v: &[Cyclotomic; 4]) -> Cyclotomic {
        let [x, y, z, t] = v;
        let p4 = |a: &Cyclotomic| {
            let s = a * a;
            &s * &s
        };
        let sq = |a: &Cyclotomic| a * a;
        let mut out = &(&(x * y) * z) * t;
        for (a, b) in [(x, y), (x, z), (x, t), (y, z), (y, t), (z, t)] {
            out = &out * &(&p4(a) - &p4(b));
        }
        for (u, w) in [(&(x - y), &(z + t)), (&(x - y), &(z - t)), (&(x + y), &(z + t)), (&(x + y), &(z - t))] {
            out = &out * &(&sq(u) - &sq(w));
        }
        for (a, b, c, d) in [(x, y, z, t), (x, z, y, t), (x, t, y, z)] {
            for (u, w) in [(&(a - b), &(c + d)), (&(a - b), &(c - d)), (&(a + b), &(c + d)), (&(a + b), &(c - d))] {
                out = &out * &(&sq(u) + &sq(w));
            }
        }
        out
    }

    #[test]
    fn forms_multiply_back_to_the_defining_polynomial() {
        let forms = g31_forms();
        assert_eq!(forms.len(), 60);
        let samples = [[2, 3, 5, 7], [1, -4, 9, 2], [11, 6, -3, 9], [3, 13, 1, -10]];
        let mut ratio: Option<Cyclotomic> = None;
        for s in samples {
            let v = s.map(|x| Cyclotomic::from_int(ORDER, x));
            let prod = forms
                .iter()
                .fold(Cyclotomic::one(ORDER), |acc, f| &acc * &eval(f, &v));
            let f = defining_polynomial(&v);
            assert!(!f.is_zero());
            let r = prod.div(&f).unwrap();
            match &ratio {
                None => ratio = Some(r),
                Some(r0) => assert_eq!(&r, r0),
            }
        }
        // the only scalar comes from the i's in the split quadrics
        assert!(ratio.unwrap().as_rational().is_some_and(|r| crate::exactgeom::rational::abs(r) == int(1)));
    }

    #[test]
    fn reference_flats_are_sextuple() {
        let flats = reference_flats();
        assert!(flats.iter().all(|f| f.len() == 6));
        // p₁ is x = y = 0
        assert_eq!(flats[0], vec![0, 1, 4, 5, 6, 7]);
    }

    #[test]
    fn published_plane_is_not_generic() {
        let forms = g31_forms();
        assert!(matches!(
            restrict_to_plane(ORDER, &forms, &plane(PUBLISHED_PLANE), "g31"),
            Err(Error::Genericity(_))
        ));
        let l = intersection_lattice(&published_plane_section());
        assert_eq!(l.points_of_multiplicity(4).len(), 3);
        assert_eq!(l.points_of_multiplicity(6).len(), 30);
    }

    #[test]
    fn erratum_point_is_a_sextuple_point() {
        let l = intersection_lattice(&published_plane_section());
        let six: Vec<_> = l.points_of_multiplicity(6).into_iter().map(|i| l.point(i).point.clone()).collect();
        let published = published_points();
        assert!(!six.contains(&published[ERRATUM.0]));
        assert!(corrected_points().iter().all(|p| six.contains(p)));
    }
}
