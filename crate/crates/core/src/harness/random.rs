//! Seeded random inputs for the property checks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cochain::{Cochain, LatticeFunction, Monomial, Site};
use crate::operad::{Interval, IntervalOperation};
use crate::scalars::{rational, Scalar};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn nonzero(rng: &mut TestRng, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// One or two terms `c hbar^i alpha^j` with small integer or half-integer `c`.
pub fn scalar(rng: &mut TestRng) -> Scalar {
    let mut s = Scalar::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let c = rational(nonzero(rng, 4), rng.gen_range(1..=2));
        s += &Scalar::term(c, rng.gen_range(0..=1), rng.gen_range(-1..=1));
    }
    if s.is_zero() {
        Scalar::one()
    } else {
        s
    }
}

/// Small nonzero rational constant.
pub fn rational_scalar(rng: &mut TestRng) -> Scalar {
    Scalar::from_ratio(nonzero(rng, 5), rng.gen_range(1..=3))
}

/// Monomial with total degree at most `maxdeg`; antifields only if `odd`.
pub fn monomial(rng: &mut TestRng, sites: (Site, Site), maxdeg: u32, odd: bool) -> Monomial {
    let deg = rng.gen_range(0..=maxdeg);
    let mut m = Monomial::one();
    for _ in 0..deg {
        let s = rng.gen_range(sites.0..=sites.1);
        let g = if odd && rng.gen_bool(0.4) {
            Monomial::antifield(s)
        } else {
            Monomial::field(s)
        };
        if let Some((_, next)) = m.mul(&g) {
            m = next;
        }
    }
    m
}

/// Random cochain of up to `terms` monomials; coefficients from `coef`.
pub fn cochain(
    rng: &mut TestRng,
    sites: (Site, Site),
    maxdeg: u32,
    odd: bool,
    terms: usize,
    coef: fn(&mut TestRng) -> Scalar,
) -> Cochain {
    let mut c = Cochain::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let m = monomial(rng, sites, maxdeg, odd);
        c.add_term(m, coef(rng));
    }
    c
}

/// Nonzero finitely supported function with values in `sites`.
pub fn function(rng: &mut TestRng, sites: (Site, Site), coef: fn(&mut TestRng) -> Scalar) -> LatticeFunction {
    loop {
        let mut f = LatticeFunction::zero();
        for _ in 0..rng.gen_range(1..=4) {
            f.add_at(rng.gen_range(sites.0..=sites.1), &coef(rng));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// Splits `outer` into `n` disjoint colors, returned in shuffled order.
/// Endpoints are quarter-integers; `outer` must have length at least `9n/4`.
pub fn operation(rng: &mut TestRng, outer: &Interval, n: usize) -> IntervalOperation {
    let quarters: i64 = (outer.length() * rational(4, 1)).floor().to_integer().try_into().unwrap();
    let free = quarters - 9 * n as i64;
    assert!(free >= 0, "{outer} is too short for {n} colors");
    // distribute the free quarters over n + 1 gaps and n extensions
    let mut cuts: Vec<i64> = (0..2 * n).map(|_| rng.gen_range(0..=free)).collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(2 * n + 1);
    let mut prev = 0;
    for c in cuts {
        parts.push(c - prev);
        prev = c;
    }
    parts.push(free - prev);
    let mut pos = 0;
    let mut inputs = Vec::with_capacity(n);
    for i in 0..n {
        pos += parts[2 * i];
        let len = 9 + parts[2 * i + 1];
        let lo = outer.start() + rational(pos, 4);
        let hi = outer.start() + rational(pos + len, 4);
        inputs.push(Interval::color(lo, hi).unwrap());
        pos += len;
    }
    inputs.shuffle(rng);
    IntervalOperation::new(inputs, outer.clone()).expect("disjoint nested colors")
}
