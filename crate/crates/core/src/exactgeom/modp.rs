//! Reduction of ℚ(ζ_k) modulo a prime `p ≡ 1 (mod k)`, with ζ sent to a
//! primitive k-th root of unity in 𝔽_p. Used as a fast filter whose positive
//! answers are always re-checked exactly: a rank computed mod p never exceeds
//! the true rank, and an exact incidence stays an incidence mod p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::cyclotomic::Cyclotomic;
use super::proj::ProjPoint;
use super::rational::Rational;

const LOW: u64 = 1 << 30;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut k: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= k {
        if k.is_multiple_of(d) {
            out.push(d);
            while k.is_multiple_of(d) {
                k /= d;
            }
        }
        d += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

#[derive(Clone, Debug)]
pub struct ModP {
    p: u64,
    /// `ω^j` for `j < k`.
    powers: Vec<u64>,
}

impl ModP {
    /// The `skip`-th prime `p ≡ 1 (mod k)` above 2³⁰, with a primitive k-th root of unity.
    pub fn new(k: u32, skip: usize) -> Self {
        let k64 = k.max(1) as u64;
        let mut p = LOW - LOW % k64 + 1;
        let mut left = skip;
        loop {
            if is_prime(p) {
                if left == 0 {
                    break;
                }
                left -= 1;
            }
            p += k64;
        }
        let mut m = ModP { p, powers: vec![1] };
        let factors = prime_factors(k64);
        let omega = (2..p)
            .map(|g| m.pow(g, (p - 1) / k64))
            .find(|&w| factors.iter().all(|&q| m.pow(w, k64 / q) != 1))
            .expect("p ≡ 1 mod k has primitive k-th roots");
        m.powers = (0..k64)
            .scan(1u64, |acc, _| {
                let cur = *acc;
                *acc = m.mul(*acc, omega);
                Some(cur)
            })
            .collect();
        m
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn reduce_rational(&self, r: &Rational) -> Option<u64> {
        let den = self.reduce_int(r.denom());
        (den != 0).then(|| self.mul(self.reduce_int(r.numer()), self.inv(den)))
    }

    /// `None` when a denominator vanishes mod p.
    pub fn reduce(&self, c: &Cyclotomic) -> Option<u64> {
        let mut acc = 0;
        for (j, a) in c.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let r = self.reduce_rational(a)?;
            acc = self.add(acc, self.mul(r, self.powers[j % self.powers.len()]));
        }
        Some(acc)
    }

    /// `None` when the point does not reduce to a point of ℙ²(𝔽_p).
    pub fn reduce_point(&self, p: &ProjPoint) -> Option<[u64; 3]> {
        let [x, y, z] = p.coords();
        let v = [self.reduce(x)?, self.reduce(y)?, self.reduce(z)?];
        (v != [0, 0, 0]).then_some(v)
    }

    /// Rank of a small matrix mod p and, when the nullity is one, a kernel vector.
    #[allow(clippy::needless_range_loop)]
    pub fn rank_and_kernel(&self, mut rows: Vec<Vec<u64>>, ncols: usize) -> (usize, Option<Vec<u64>>) {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, i);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..ncols {
                        let t = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if ncols - r != 1 {
            return (r, None);
        }
        let free = (0..ncols).find(|c| !pivots.contains(c)).unwrap();
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = self.sub(0, rows[i][free]);
        }
        (r, Some(v))
    }
}
