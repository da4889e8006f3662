#![allow(dead_code)]

use bernstein_cert::rational::{int, rat};
use bernstein_cert::{Polynomial, Rational, Simplex};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational in [-bound, bound] with denominator at most `den`.
pub fn rational(r: &mut ChaCha8Rng, bound: i64, den: i64) -> Rational {
    let d = r.gen_range(1..=den);
    rat(r.gen_range(-bound * d..=bound * d), d)
}

pub fn polynomial(r: &mut ChaCha8Rng, n: usize, max_degree: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let total = r.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..total {
            e[r.gen_range(0..n)] += 1;
        }
        p = &p + &Polynomial::monomial(e, rational(r, 10, 4));
    }
    p
}

pub fn simplex(r: &mut ChaCha8Rng, n: usize) -> Simplex {
    loop {
        let vs = (0..=n)
            .map(|_| (0..n).map(|_| rational(r, 3, 3)).collect())
            .collect();
        if let Ok(s) = Simplex::new(vs) {
            return s;
        }
    }
}

pub fn point(r: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rational(r, 5, 7)).collect()
}

/// Random point of `s` from random nonnegative weights summing to one.
pub fn point_in(r: &mut ChaCha8Rng, s: &Simplex) -> Vec<Rational> {
    let raw: Vec<i64> = (0..s.vertices().len()).map(|_| r.gen_range(0..=12)).collect();
    let total: i64 = raw.iter().sum::<i64>().max(1);
    let mut w: Vec<Rational> = raw.iter().map(|&k| rat(k, total)).collect();
    if raw.iter().all(|&k| k == 0) {
        w[0] = int(1);
    }
    s.point_at(&w).unwrap()
}

/// Grid points `(i/m, j/m)` of the closed standard triangle.
pub fn std2_grid(m: i64) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for i in 0..=m {
        for j in 0..=m - i {
            out.push(vec![rat(i, m), rat(j, m)]);
        }
    }
    out
}

/// Dense grid of a planar simplex: all points with barycentric weights in
/// `k/m`.
pub fn simplex_grid(s: &Simplex, m: i64) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for i in 0..=m {
        for j in 0..=m - i {
            let w = [rat(i, m), rat(j, m), rat(m - i - j, m)];
            out.push(s.point_at(&w).unwrap());
        }
    }
    out
}
