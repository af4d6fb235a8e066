//! Exact Gaussian elimination over a cyclotomic field.
//!
//! Pivots are the first nonzero entry; no numerical pivoting is needed since
//! arithmetic is exact.

use super::cyclotomic::Cyclotomic;

pub type Row = Vec<Cyclotomic>;

/// Reduced row echelon form built one row at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    order: u32,
    /// Pivot rows, each normalized to 1 at its pivot and cleared in every other pivot column.
    rows: Vec<(usize, Row)>,
}

impl Echelon {
    pub fn new(order: u32, ncols: usize) -> Self {
        Echelon {
            ncols,
            order,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `row` against the current basis; returns the remainder.
    pub fn reduce(&self, mut row: Row) -> Row {
        for (piv, r) in &self.rows {
            if row[*piv].is_zero() {
                continue;
            }
            let f = row[*piv].clone();
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    row[j] -= &(&f * x);
                }
            }
        }
        row
    }

    /// Adds a row; returns true when it increased the rank.
    pub fn insert(&mut self, row: Row) -> bool {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        let mut row = self.reduce(row);
        let Some(piv) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = row[piv].inverse().expect("pivot is nonzero");
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for (_, r) in self.rows.iter_mut() {
            if r[piv].is_zero() {
                continue;
            }
            let f = r[piv].clone();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    r[j] -= &(&f * x);
                }
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < piv);
        self.rows.insert(at, (piv, row));
        true
    }

    /// Basis of the right kernel `{v : r·v = 0 for every inserted row r}`.
    pub fn nullspace(&self) -> Vec<Row> {
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Cyclotomic::zero(self.order); self.ncols];
            v[free] = Cyclotomic::one(self.order);
            for (p, r) in &self.rows {
                v[*p] = -&r[free];
            }
            out.push(v);
        }
        out
    }
}

pub fn rank(order: u32, ncols: usize, rows: impl IntoIterator<Item = Row>) -> usize {
    let mut e = Echelon::new(order, ncols);
    for r in rows {
        e.insert(r);
        if e.is_full() {
            break;
        }
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Row {
        v.iter().map(|&x| Cyclotomic::from_int(1, x)).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(1, 3, vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])]), 2);
        assert_eq!(rank(1, 3, vec![row(&[0, 0, 0])]), 0);
    }

    #[test]
    fn nullspace_annihilates_rows() {
        let rows = vec![row(&[1, 2, 3, 4]), row(&[0, 1, -1, 2])];
        let mut e = Echelon::new(1, 4);
        for r in rows.clone() {
            e.insert(r);
        }
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                let s = r.iter().zip(v).fold(Cyclotomic::zero(1), |acc, (a, b)| &acc + &(a * b));
                assert!(s.is_zero());
            }
        }
    }
}
