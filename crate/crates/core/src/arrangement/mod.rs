//! Line arrangements in ℙ², their construction and intersection lattices.

pub mod format;
pub mod g31;
pub mod generators;
pub mod lattice;
pub mod section;

use crate::error::{Error, Result};
use crate::exactgeom::{ProjLine, ProjPoint};

pub use generators::{gen_ceva, gen_hexagonal, gen_near_pencils, HexagonVariant};
pub use g31::gen_g31_section;
pub use lattice::{intersection_lattice, IntersectionLattice, LatticePoint, LineStats};
pub use section::{restrict_to_plane, Form4};

#[derive(Clone, Debug)]
pub struct Arrangement {
    field_order: u32,
    lines: Vec<ProjLine>,
    label: String,
    /// Distinguished points carried along for reporting, e.g. the labelled
    /// sextuple points of the G₃₁ section or the vertices of a hexagon.
    marked_points: Vec<ProjPoint>,
}

impl Arrangement {
    pub fn new(field_order: u32, lines: Vec<ProjLine>, label: impl Into<String>) -> Result<Self> {
        if lines.len() < 3 {
            return Err(Error::InvalidArrangement(format!(
                "need at least 3 lines, got {}",
                lines.len()
            )));
        }
        for (i, l) in lines.iter().enumerate() {
            let o = l.order();
            if o != 1 && o != field_order {
                return Err(Error::MixedFields(o, field_order));
            }
            if let Some(j) = lines[..i].iter().position(|m| m == l) {
                return Err(Error::InvalidArrangement(format!("lines {j} and {i} coincide")));
            }
        }
        Ok(Arrangement {
            field_order,
            lines,
            label: label.into(),
            marked_points: Vec::new(),
        })
    }

    pub fn with_marked_points(mut self, points: Vec<ProjPoint>) -> Self {
        self.marked_points = points;
        self
    }

    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn marked_points(&self) -> &[ProjPoint] {
        &self.marked_points
    }

    /// True iff all lines pass through one point.
    pub fn is_pencil(&self) -> bool {
        let p = self.lines[0]
            .meet(&self.lines[1])
            .expect("lines are distinct");
        self.lines.iter().all(|l| l.contains(&p))
    }
}
