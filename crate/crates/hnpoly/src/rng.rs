//! Seeded randomness for the verification suites.
//!
//! Case `k` of a run with seed `s` draws from ChaCha8 keyed by
//! `ChaCha8Rng::seed_from_u64(s)` on stream `k`. Cases are independent of
//! each other and of how they are scheduled across threads.

use hnpoly_core::glroot::{ChamberPoint, ParabolicPair};
use hnpoly_core::Rational;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_DENOMINATOR: i64 = 12;

pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

/// `a / b` with `b` uniform in `1..=MAX_DENOMINATOR` and `|a / b| <= span`.
pub fn rational(rng: &mut impl Rng, span: i64) -> Rational {
    let den = rng.random_range(1..=MAX_DENOMINATOR);
    let num = rng.random_range(-span * den..=span * den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn point(rng: &mut impl Rng, len: usize, span: i64) -> ChamberPoint {
    ChamberPoint((0..len).map(|_| rational(rng, span)).collect())
}

/// A point on which every simple root of `pair` is strictly positive:
/// coordinates strictly decrease inside each block.
pub fn dominant_point(rng: &mut impl Rng, pair: &ParabolicPair, span: i64) -> ChamberPoint {
    let mut out = Vec::with_capacity(pair.fine().len());
    for b in 0..pair.coarse().len() {
        let len = pair.block_range(b).len();
        let mut block: Vec<Rational> = loop {
            let mut v: Vec<Rational> = (0..len).map(|_| rational(rng, span)).collect();
            v.sort();
            v.dedup();
            if v.len() == len {
                break v;
            }
        };
        block.reverse();
        out.extend(block);
    }
    ChamberPoint(out)
}
