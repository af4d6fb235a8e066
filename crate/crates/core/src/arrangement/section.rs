//! Generic plane sections of hyperplane arrangements in ℙ³.

use super::lattice::{intersection_lattice, IntersectionLattice};
use super::Arrangement;
use crate::error::{Error, Result};
use crate::exactgeom::linalg::Echelon;
use crate::exactgeom::{Cyclotomic, ProjLine};

/// Linear form `f_0 x + f_1 y + f_2 z + f_3 t`.
pub type Form4 = [Cyclotomic; 4];

/// Index of the variable eliminated by default: the last one with a nonzero plane coefficient.
pub fn default_elimination(plane: &Form4) -> Result<usize> {
    plane
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or_else(|| Error::InvalidParameter("zero plane".into()))
}

fn restrict_form(f: &Form4, plane: &Form4, var: usize) -> Result<[Cyclotomic; 3]> {
    let ratio = f[var].div(&plane[var])?;
    let kept: Vec<Cyclotomic> = (0..4)
        .filter(|&j| j != var)
        .map(|j| &f[j] - &(&ratio * &plane[j]))
        .collect();
    Ok(kept.try_into().expect("three coordinates remain"))
}

/// Restricts every form to the plane by eliminating variable `var`; the
/// remaining variables, in order, are the plane coordinates. No genericity check.
pub fn restrict_unchecked(
    order: u32,
    forms: &[Form4],
    plane: &Form4,
    var: usize,
    label: &str,
) -> Result<Arrangement> {
    if plane[var].is_zero() {
        return Err(Error::InvalidParameter(format!(
            "plane does not involve variable {var}"
        )));
    }
    let mut lines = Vec::with_capacity(forms.len());
    for (i, f) in forms.iter().enumerate() {
        let c = restrict_form(f, plane, var)?;
        let line = ProjLine::new(c)
            .map_err(|_| Error::Genericity(format!("plane is proportional to form {i}")))?;
        if let Some(j) = lines.iter().position(|l| *l == line) {
            return Err(Error::Genericity(format!(
                "forms {j} and {i} restrict to the same line"
            )));
        }
        lines.push(line);
    }
    Arrangement::new(order, lines, label)
}

/// Checks that each section point comes from exactly one codimension-2 flat:
/// the forms through it must span a 2-dimensional space.
pub fn check_genericity(order: u32, forms: &[Form4], lattice: &IntersectionLattice) -> Result<()> {
    for p in lattice.points() {
        let mut e = Echelon::new(order, 4);
        for &i in &p.incident {
            e.insert(forms[i].to_vec());
        }
        if e.rank() != 2 {
            return Err(Error::Genericity(format!(
                "forms {:?} meet the plane in one point but span rank {}",
                p.incident,
                e.rank()
            )));
        }
    }
    Ok(())
}

pub fn restrict_to_plane_eliminating(
    order: u32,
    forms: &[Form4],
    plane: &Form4,
    var: usize,
    label: &str,
) -> Result<Arrangement> {
    let a = restrict_unchecked(order, forms, plane, var, label)?;
    check_genericity(order, forms, &intersection_lattice(&a))?;
    Ok(a)
}

pub fn restrict_to_plane(order: u32, forms: &[Form4], plane: &Form4, label: &str) -> Result<Arrangement> {
    restrict_to_plane_eliminating(order, forms, plane, default_elimination(plane)?, label)
}

pub fn form_from_ints(order: u32, c: [i64; 4]) -> Form4 {
    c.map(|x| Cyclotomic::from_int(order, x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coordinate_forms() -> Vec<Form4> {
        (0..4)
            .map(|i| {
                let mut c = [0; 4];
                c[i] = 1;
                form_from_ints(1, c)
            })
            .collect()
    }

    #[test]
    fn coordinate_hyperplanes_give_four_general_lines() {
        let plane = form_from_ints(1, [2, 5, -9, -1]);
        let a = restrict_to_plane(1, &coordinate_forms(), &plane, "xyzt").unwrap();
        let l = intersection_lattice(&a);
        // oracle: four lines with no three concurrent have C(4,2) nodes
        assert_eq!(l.points().len(), 6);
        assert!(l.points().iter().all(|p| p.multiplicity() == 2));
    }

    #[test]
    fn plane_proportional_to_a_form_is_rejected() {
        let plane = form_from_ints(1, [0, 0, 3, 0]);
        assert!(matches!(
            restrict_to_plane(1, &coordinate_forms(), &plane, "bad"),
            Err(Error::Genericity(_))
        ));
    }

    #[test]
    fn plane_through_a_flat_is_not_generic() {
        let mut forms = coordinate_forms();
        forms.push(form_from_ints(1, [1, 1, 0, 0]));
        let plane = form_from_ints(1, [1, -1, 1, 1]);
        assert!(restrict_to_plane(1, &forms, &plane, "ok").is_ok());
        // the plane z = t contains the point (0:0:1:1), where x, y, x+y and z-t all vanish
        forms.push(form_from_ints(1, [0, 0, 1, -1]));
        let plane = form_from_ints(1, [1, 2, 3, -3]);
        assert!(matches!(
            restrict_to_plane(1, &forms, &plane, "bad"),
            Err(Error::Genericity(_))
        ));
    }
}
