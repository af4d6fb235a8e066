//! Search for NM divisors with a prescribed support.
//!
//! The pairing matrix `M` of the support is symmetric with nonnegative
//! off-diagonal entries. The search looks for `a > 0` with `M a > 0`, block by
//! block over the connected components of the support. Small blocks go through
//! Fourier–Motzkin elimination. For larger blocks, Perron–Frobenius settles the
//! question: a positive solution exists iff `M` is not negative semidefinite,
//! and then the Perron vector of `M + cI` is one; a witness is produced by
//! integer power iteration and verified exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::fm::{strict_feasibility, FmOutcome};
use super::{divisor_connected, verify_nm, Component, DivisorModel, QDivisor};
use crate::exactgeom::Rational;

/// Blocks up to this size use Fourier–Motzkin elimination.
pub const FM_BLOCK_LIMIT: usize = 12;

const POWER_STEPS: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    /// Multipliers `y ≥ 0` over the rows `[I; M]` of one block with `yᵀ[I; M] = 0`.
    Farkas {
        block: Vec<Component>,
        multipliers: Vec<Rational>,
    },
    /// The pairing matrix of the block is negative semidefinite, so `aᵀ M a ≤ 0`
    /// for every `a`, while `a > 0, M a > 0` would force `aᵀ M a > 0`.
    NegativeSemidefinite { block: Vec<Component> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NmSearch {
    Feasible(QDivisor),
    Infeasible(Infeasibility),
    /// A positive solution exists but power iteration did not reach one.
    Unresolved { block: Vec<Component> },
}

fn blocks(model: &DivisorModel, support: &[Component]) -> Vec<Vec<Component>> {
    let mut seen = vec![false; support.len()];
    let mut out = Vec::new();
    for s in 0..support.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut block = vec![support[s]];
        let mut k = 0;
        while k < block.len() {
            let c = block[k];
            for j in 0..support.len() {
                if !seen[j] && model.pairing(c, support[j]) > 0 {
                    seen[j] = true;
                    block.push(support[j]);
                }
            }
            k += 1;
        }
        block.sort();
        out.push(block);
    }
    out
}

fn pairing_matrix(model: &DivisorModel, block: &[Component]) -> Vec<Vec<i64>> {
    block
        .iter()
        .map(|&a| block.iter().map(|&b| model.pairing(a, b)).collect())
        .collect()
}

/// Exact test of `-M ⪰ 0` by symmetric elimination.
#[allow(clippy::needless_range_loop)]
pub fn is_negative_semidefinite(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    let mut s: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer((-x).into())).collect())
        .collect();
    for k in 0..n {
        let piv = s[k][k].clone();
        if piv.is_negative() {
            return false;
        }
        if piv.is_zero() {
            if s[k][k + 1..].iter().any(|x| !x.is_zero()) {
                return false;
            }
            continue;
        }
        for i in k + 1..n {
            if s[i][k].is_zero() {
                continue;
            }
            let f = &s[i][k] / &piv;
            for j in k + 1..n {
                let d = &f * &s[k][j];
                s[i][j] -= d;
            }
        }
    }
    true
}

fn perron_witness(m: &[Vec<i64>]) -> Option<Vec<BigInt>> {
    let n = m.len();
    let c = 1 + m.iter().enumerate().map(|(i, r)| (-r[i]).max(0)).max().unwrap_or(0);
    let mut v = vec![BigInt::one(); n];
    for _ in 0..POWER_STEPS {
        let mv: Vec<BigInt> = m
            .iter()
            .map(|r| r.iter().zip(&v).map(|(a, b)| b * *a).sum())
            .collect();
        if mv.iter().all(Signed::is_positive) {
            return Some(v);
        }
        // v ← (M + cI) v, rescaled to keep entries near 2^40
        let mut w: Vec<BigInt> = mv.into_iter().zip(&v).map(|(x, y)| x + y * c).collect();
        let bits = w.iter().map(BigInt::bits).max().unwrap_or(0);
        if bits > 48 {
            let shift = bits - 40;
            for x in w.iter_mut() {
                *x = (&*x >> shift).max(BigInt::one());
            }
        }
        v = w;
    }
    None
}

fn fm_block(model: &DivisorModel, block: &[Component]) -> Result<Vec<Rational>, Infeasibility> {
    let k = block.len();
    let m = pairing_matrix(model, block);
    let mut rows: Vec<Vec<Rational>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    rows.extend(
        m.iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()),
    );
    match strict_feasibility(&rows, k) {
        FmOutcome::Feasible(x) => Ok(x),
        FmOutcome::Infeasible(y) => Err(Infeasibility::Farkas {
            block: block.to_vec(),
            multipliers: y,
        }),
    }
}

/// Finds positive coefficients on `support` satisfying the NM inequalities, or proves there are none.
pub fn nm_search(model: &DivisorModel, support: &[Component]) -> NmSearch {
    assert!(!support.is_empty(), "support must be nonempty");
    let unit = QDivisor::unit(support.iter().copied());
    if verify_nm(model, &unit, Some(support)).is_ok() {
        return NmSearch::Feasible(unit);
    }
    let mut out = QDivisor::new();
    for block in blocks(model, support) {
        debug_assert!(divisor_connected(model, &block));
        let coeffs = if block.len() <= FM_BLOCK_LIMIT {
            match fm_block(model, &block) {
                Ok(x) => x,
                Err(e) => return NmSearch::Infeasible(e),
            }
        } else {
            let m = pairing_matrix(model, &block);
            if is_negative_semidefinite(&m) {
                return NmSearch::Infeasible(Infeasibility::NegativeSemidefinite { block });
            }
            match perron_witness(&m) {
                Some(v) => v.into_iter().map(Rational::from_integer).collect(),
                None => return NmSearch::Unresolved { block },
            }
        };
        for (c, a) in block.into_iter().zip(coeffs) {
            out.set(c, a);
        }
    }
    debug_assert!(verify_nm(model, &out, Some(support)).is_ok());
    NmSearch::Feasible(out)
}

/// Re-checks an infeasibility answer from scratch.
pub fn verify_infeasibility(model: &DivisorModel, inf: &Infeasibility) -> bool {
    match inf {
        Infeasibility::Farkas { block, multipliers } => {
            let k = block.len();
            let m = pairing_matrix(model, block);
            let mut rows: Vec<Vec<Rational>> = (0..k)
                .map(|i| (0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect();
            rows.extend(
                m.iter()
                    .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()),
            );
            super::fm::is_farkas_certificate(&rows, k, multipliers)
        }
        Infeasibility::NegativeSemidefinite { block } => {
            let m = pairing_matrix(model, block);
            let metzler = (0..m.len()).all(|i| (0..m.len()).all(|j| i == j || m[i][j] >= 0));
            metzler && is_negative_semidefinite(&m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{gen_ceva, intersection_lattice};

    #[test]
    fn nsd_examples() {
        assert!(is_negative_semidefinite(&[vec![-2, 1], vec![1, -2]]));
        assert!(is_negative_semidefinite(&[vec![-1, 1], vec![1, -1]]));
        assert!(!is_negative_semidefinite(&[vec![-1, 2], vec![2, -1]]));
        assert!(!is_negative_semidefinite(&[vec![0, 1], vec![1, 0]]));
    }

    #[test]
    fn single_line_with_negative_square_is_infeasible() {
        let a = gen_ceva(3).unwrap();
        let l = intersection_lattice(&a);
        let m = DivisorModel::blow_up_multiple_points(&l);
        let r = nm_search(&m, &[Component::Line(0)]);
        let NmSearch::Infeasible(inf) = r else {
            panic!("expected infeasible, got {r:?}");
        };
        assert!(verify_infeasibility(&m, &inf));
    }

    #[test]
    fn perron_witness_on_a_path() {
        // path graph with -1 on the diagonal: largest eigenvalue -1 + 2cos(π/6) > 0
        let n = 5;
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { -1 } else { ((i as i64 - j as i64).abs() == 1) as i64 }).collect())
            .collect();
        assert!(!is_negative_semidefinite(&m));
        let v = perron_witness(&m).unwrap();
        for (i, r) in m.iter().enumerate() {
            let s: BigInt = r.iter().zip(&v).map(|(a, b)| b * *a).sum();
            assert!(s.is_positive(), "row {i}");
        }
    }
}
