//! Built-in arrangements.

use super::Arrangement;
use crate::error::{Error, Result};
use crate::exactgeom::{Cyclotomic, ProjLine, ProjPoint};

use super::lattice::intersection_lattice;

/// The monomial arrangement `(x^m - y^m)(y^m - z^m)(x^m - z^m)` over ℚ(ζ_m).
/// Marked points are the three coordinate vertices.
pub fn gen_ceva(m: u32) -> Result<Arrangement> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("Ceva arrangement needs m >= 3, got {m}")));
    }
    let one = Cyclotomic::one(m);
    let zero = Cyclotomic::zero(m);
    let mut lines = Vec::with_capacity(3 * m as usize);
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        for j in 0..m {
            let mut c: [Cyclotomic; 3] = std::array::from_fn(|_| zero.clone());
            c[a] = one.clone();
            c[b] = -&Cyclotomic::root_of_unity(m, j);
            lines.push(ProjLine::new(c)?);
        }
    }
    let vertices = vec![
        ProjPoint::from_ints(m, [1, 0, 0]),
        ProjPoint::from_ints(m, [0, 1, 0]),
        ProjPoint::from_ints(m, [0, 0, 1]),
    ];
    Ok(Arrangement::new(m, lines, format!("ceva:{m}"))?.with_marked_points(vertices))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HexagonVariant {
    OnConic,
    OffConic,
}

/// Parameters of the vertices `(1 : t : t²)` on the conic `y² = xz`, in cyclic order.
pub const HEXAGON_PARAMETERS: [i64; 6] = [0, 2, -1, 1, -3, 3];

/// Replacement for the last vertex in the off-conic variant.
pub const OFF_CONIC_VERTEX: [i64; 3] = [1, 3, 10];

/// Hexagon `p₁ … p₆` with its three main diagonals: nine lines, each through
/// two vertices. Marked points are the six vertices.
pub fn gen_hexagonal(variant: HexagonVariant) -> Result<Arrangement> {
    let mut v: Vec<ProjPoint> = HEXAGON_PARAMETERS
        .iter()
        .map(|&t| ProjPoint::from_ints(1, [1, t, t * t]))
        .collect();
    let label = match variant {
        HexagonVariant::OnConic => "hexagon:on-conic",
        HexagonVariant::OffConic => {
            v[5] = ProjPoint::from_ints(1, OFF_CONIC_VERTEX);
            "hexagon:off-conic"
        }
    };
    let mut lines = Vec::with_capacity(9);
    for i in 0..6 {
        lines.push(v[i].join(&v[(i + 1) % 6])?);
    }
    for i in 0..3 {
        lines.push(v[i].join(&v[i + 3])?);
    }
    let a = Arrangement::new(1, lines, label)?.with_marked_points(v);
    // only the six vertices may be triple points
    let l = intersection_lattice(&a);
    if l.multiple_points().len() != 6 || l.points().iter().any(|p| p.multiplicity() > 3) {
        return Err(Error::InvalidArrangement("hexagon has extra concurrences".into()));
    }
    Ok(a)
}

/// Lines through `ℓ` points on the line `y = 0`: `counts[i]` lines through the
/// i-th center `(i : 0 : 1)`, none of them `y = 0`, all other crossings nodes.
/// Marked points are the centers.
pub fn gen_near_pencils(counts: &[usize]) -> Result<Arrangement> {
    if counts.len() < 2 || counts.iter().any(|&c| c < 2) {
        return Err(Error::InvalidParameter(format!(
            "near-pencils need at least 2 centers with at least 2 lines each, got {counts:?}"
        )));
    }
    let centers: Vec<ProjPoint> = (0..counts.len() as i64)
        .map(|i| ProjPoint::from_ints(1, [i, 0, 1]))
        .collect();
    let label = format!(
        "near-pencil:{}",
        counts.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    );
    // slopes are tried deterministically until every crossing off the centers is a node
    for shift in 0..64i64 {
        let mut lines = Vec::new();
        let mut k = 0i64;
        for (i, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                k += 1;
                let s = k * k + shift * k + 1;
                // y = s (x - i z)
                lines.push(ProjLine::from_ints(1, [-s, 1, s * i as i64]));
            }
        }
        let Ok(a) = Arrangement::new(1, lines, label.clone()) else {
            continue;
        };
        let l = intersection_lattice(&a);
        let ok = l.points().iter().all(|p| p.multiplicity() == 2 || centers.contains(&p.point));
        if ok {
            return Ok(a.with_marked_points(centers));
        }
    }
    Err(Error::InvalidArrangement("no admissible slopes found".into()))
}
