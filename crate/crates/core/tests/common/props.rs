//! Property bodies and input strategies, shared by the proptest suite and the
//! headless acceptance run.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use arrcert::arrangement::{intersection_lattice, Arrangement};
use arrcert::badcurve::{conics_with_min_incidence, conics_with_min_incidence_brute};
use arrcert::blowup::fm::{is_farkas_certificate, satisfies, strict_feasibility, FmOutcome};
use arrcert::blowup::search::is_negative_semidefinite;
use arrcert::certify::report::{report_json, reverify_report};
use arrcert::certify::{certify_vanishing, CertifyOptions, Status, SystemInput};
use arrcert::exactgeom::proj::{det3, Triple};
use arrcert::exactgeom::rational::{int, rat};
use arrcert::exactgeom::{collinear, curve_system, Cyclotomic, ProjLine, ProjPoint, Rational};
use arrcert::localsys::LocalSystem;

pub const ORDERS: [u32; 5] = [1, 3, 4, 5, 8];

pub fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

pub fn element(order: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(rational(), 1..=4).prop_map(move |c| Cyclotomic::from_coeffs(order, c).unwrap())
}

pub fn field_triple() -> impl Strategy<Value = (u32, Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(|k| (Just(k), element(k), element(k), element(k)))
}

pub fn check_field_axioms(a: &Cyclotomic, b: &Cyclotomic, c: &Cyclotomic) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(&(a - b) + b, a.clone());
    let one = Cyclotomic::one(a.order());
    prop_assert_eq!(a * &one, a.clone());
    if !a.is_zero() {
        let inv = a.inverse().unwrap();
        prop_assert!((a * &inv).is_one());
        prop_assert_eq!(&(b * a) * &inv, b.clone());
    } else {
        prop_assert!(a.inverse().is_err());
    }
    Ok(())
}

fn small_element(order: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-3i64..=3, 1..=2)
        .prop_map(move |c| Cyclotomic::from_coeffs(order, c.into_iter().map(int).collect()).unwrap())
}

fn point(order: u32) -> impl Strategy<Value = ProjPoint> {
    [small_element(order), small_element(order), small_element(order)]
        .prop_filter_map("zero vector", |c| ProjPoint::new(c).ok())
}

fn matrix(order: u32) -> impl Strategy<Value = [Triple; 3]> {
    [
        [small_element(order), small_element(order), small_element(order)],
        [small_element(order), small_element(order), small_element(order)],
        [small_element(order), small_element(order), small_element(order)],
    ]
    .prop_filter("singular", |m| !det3(&m[0], &m[1], &m[2]).is_zero())
}

pub type InvarianceInput = (u32, Vec<ProjPoint>, [Triple; 3], Cyclotomic);

pub fn invariance_input() -> impl Strategy<Value = InvarianceInput> {
    prop::sample::select(vec![1u32, 3, 4]).prop_flat_map(|k| {
        (
            Just(k),
            prop::collection::vec(point(k), 3..=6),
            matrix(k),
            small_element(k).prop_filter("zero", |c| !c.is_zero()),
        )
    })
}

fn apply(m: &[Triple; 3], p: &ProjPoint) -> ProjPoint {
    let v = p.coords();
    let row = |r: &Triple| {
        let mut s = &r[0] * &v[0];
        s += &(&r[1] * &v[1]);
        s += &(&r[2] * &v[2]);
        s
    };
    ProjPoint::new([row(&m[0]), row(&m[1]), row(&m[2])]).unwrap()
}

fn scale(p: &ProjPoint, c: &Cyclotomic) -> ProjPoint {
    let v = p.coords();
    ProjPoint::new([c * &v[0], c * &v[1], c * &v[2]]).unwrap()
}

/// Collinearity, canonical forms and dimensions of curve systems do not
/// change under an invertible linear map or a rescaling of coordinates.
pub fn check_projective_invariance(input: &InvarianceInput) -> Result<(), TestCaseError> {
    let (k, pts, m, c) = input;
    let moved: Vec<ProjPoint> = pts.iter().map(|p| apply(m, p)).collect();
    for (p, q) in pts.iter().zip(&moved) {
        prop_assert_eq!(scale(p, c), p.clone());
        let _ = q;
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for l in j + 1..pts.len() {
                let before = collinear(&pts[i], &pts[j], &pts[l]);
                let after = collinear(&moved[i], &moved[j], &moved[l]);
                prop_assert_eq!(before.ok(), after.ok());
            }
        }
    }
    let mut distinct = pts.clone();
    distinct.sort();
    distinct.dedup();
    let moved_distinct: Vec<ProjPoint> = distinct.iter().map(|p| apply(m, p)).collect();
    for d in 1..=3 {
        let a: Vec<(ProjPoint, u32)> = distinct.iter().map(|p| (p.clone(), 1)).collect();
        let b: Vec<(ProjPoint, u32)> = moved_distinct.iter().map(|p| (p.clone(), 1)).collect();
        prop_assert_eq!(curve_system(*k, d, &a).dimension, curve_system(*k, d, &b).dimension);
    }
    Ok(())
}

pub fn arrangement() -> impl Strategy<Value = Arrangement> {
    prop::sample::select(vec![1u32, 4]).prop_flat_map(|k| {
        prop::collection::vec([small_element(k), small_element(k), small_element(k)], 3..=9).prop_filter_map(
            "degenerate arrangement",
            move |rows| {
                let mut lines: Vec<ProjLine> = rows.into_iter().filter_map(|r| ProjLine::new(r).ok()).collect();
                lines.sort();
                lines.dedup();
                Arrangement::new(k, lines, "random").ok()
            },
        )
    })
}

/// Σ_p C(n_p, 2) = C(n, 2), and Σ_{p ∈ H} (n_p − 1) = n − 1 on every line.
pub fn check_double_counting(a: &Arrangement) -> Result<(), TestCaseError> {
    let l = intersection_lattice(a);
    let id = l.identities();
    prop_assert!(id.hold(), "{:?}", id);
    let n = l.n();
    let pairs: usize = l.points().iter().map(|p| p.multiplicity() * (p.multiplicity() - 1) / 2).sum();
    prop_assert_eq!(pairs, n * (n - 1) / 2);
    for (i, s) in l.per_line().iter().enumerate() {
        let sum: usize = s.points.iter().map(|&p| l.point(p).multiplicity() - 1).sum();
        prop_assert_eq!(sum, n - 1, "line {}", i);
    }
    Ok(())
}

pub fn builtin_with_exponents() -> impl Strategy<Value = (String, Vec<Rational>)> {
    prop::sample::select(vec![
        "ceva:3".to_string(),
        "ceva:4".to_string(),
        "hexagon:on-conic".to_string(),
        "hexagon:off-conic".to_string(),
        "near-pencil:3:3".to_string(),
        "near-pencil:2:4".to_string(),
    ])
    .prop_flat_map(|name| {
        let n = arrcert::cli::resolve_builtin(&name).unwrap().n();
        (Just(name), prop::collection::vec((1i64..=5, 6i64..=6), n - 1))
    })
    .prop_filter_map("non-strict", |(name, parts)| {
        let mut ex: Vec<Rational> = parts.into_iter().map(|(a, d)| rat(a, d)).collect();
        let s: Rational = ex.iter().sum();
        let last = s.ceil() - &s;
        if last.is_integer() {
            return None;
        }
        ex.push(last);
        Some((name, ex))
    })
}

/// Certified reports re-verify from their JSON form; the single-bad-point
/// construction never fails its own check.
pub fn check_certificate_reverification(name: &str, ex: &[Rational]) -> Result<(), TestCaseError> {
    let a = arrcert::cli::resolve_builtin(name).unwrap();
    let l = intersection_lattice(&a);
    let s = SystemInput::exponents(&l, LocalSystem::new(ex.to_vec()).unwrap()).unwrap();
    let r = certify_vanishing(&a, &l, &s, &CertifyOptions::default());
    prop_assert!(!r.notes.iter().any(|n| n.contains("construction failed")));
    if r.status == Status::Inconclusive {
        prop_assert!(!r.notes.is_empty());
    }
    let j = report_json(&r);
    prop_assert!(reverify_report(&j, &a, &l).unwrap());
    if r.status == Status::VanishingCertified {
        let mut tampered = j.clone();
        if let Some(cert) = tampered["evidence"]["nm_certificate"].as_object_mut() {
            cert.insert("self_intersection".into(), "12345".into());
            prop_assert!(!reverify_report(&tampered, &a, &l).unwrap());
        }
    }
    Ok(())
}

/// Points of `y² = xz` moved by a random linear map, plus random points.
pub fn conic_points() -> impl Strategy<Value = (Vec<ProjPoint>, usize)> {
    (
        prop::collection::btree_set(-6i64..=6, 0..=8),
        prop::collection::vec(point(1), 0..=6),
        matrix(1),
        6usize..=8,
    )
        .prop_map(|(ts, extra, m, threshold)| {
            let mut pts: Vec<ProjPoint> = ts
                .into_iter()
                .map(|t| apply(&m, &ProjPoint::from_ints(1, [t * t, t, 1])))
                .chain(extra)
                .collect();
            pts.sort();
            pts.dedup();
            pts.truncate(12);
            (pts, threshold)
        })
}

pub fn check_conic_oracle(pts: &[ProjPoint], threshold: usize) -> Result<(), TestCaseError> {
    let sets = |s: arrcert::badcurve::ConicScan| {
        let mut v: Vec<Vec<usize>> = s.conics.into_iter().map(|c| c.points).collect();
        v.sort();
        v
    };
    let fast = sets(conics_with_min_incidence(pts, threshold));
    let brute = sets(conics_with_min_incidence_brute(pts, threshold));
    prop_assert_eq!(fast, brute);
    Ok(())
}

pub fn inequality_system() -> impl Strategy<Value = (usize, Vec<Vec<Rational>>)> {
    (1usize..=3).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(int), n), 1..=5),
        )
    })
}

fn grid(n: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-4i64..=4).map(move |x| {
                    let mut w = v.clone();
                    w.push(rat(x, 1));
                    w
                })
            })
            .collect();
    }
    out
}

/// Fourier–Motzkin agrees with exhaustive sampling: feasible answers carry a
/// witness, infeasible ones a Farkas certificate and no grid point works.
pub fn check_fm_vs_grid(n: usize, rows: &[Vec<Rational>]) -> Result<(), TestCaseError> {
    match strict_feasibility(rows, n) {
        FmOutcome::Feasible(x) => prop_assert!(satisfies(rows, &x)),
        FmOutcome::Infeasible(y) => {
            prop_assert!(is_farkas_certificate(rows, n, &y));
            prop_assert!(grid(n).iter().all(|x| !satisfies(rows, x)));
        }
    }
    Ok(())
}

pub fn symmetric_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(-3i64..=2, n * (n + 1) / 2).prop_map(move |v| {
            let mut m = vec![vec![0; n]; n];
            let upper = (0..n).flat_map(|i| (i..n).map(move |j| (i, j)));
            for ((i, j), x) in upper.zip(v) {
                m[i][j] = x;
                m[j][i] = x;
            }
            m
        })
    })
}

/// A negative semidefinite pairing matrix admits no `a > 0` with `M a > 0`.
pub fn check_fm_vs_nsd(m: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let n = m.len();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| int(i64::from(i == j))).collect())
        .collect();
    rows.extend(m.iter().map(|r| r.iter().map(|&x| int(x)).collect()));
    let fm = strict_feasibility(&rows, n);
    if is_negative_semidefinite(m) {
        prop_assert!(matches!(fm, FmOutcome::Infeasible(_)));
    }
    if let FmOutcome::Feasible(x) = fm {
        prop_assert!(satisfies(&rows, &x));
    }
    Ok(())
}

/// Runs one property for `cases` inputs.
pub fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    body: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, body).map_err(|e| e.to_string())
}
