//! Deterministic samplers for field elements. Every sampler is driven by a
//! ChaCha stream seeded from a `u64`, so a seed reproduces the same run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebraic::RealAlgebraic;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { seed: 0, count: 200 }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One rational from a mix of small integers, dyadics and small fractions.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    match rng.gen_range(0..4) {
        0 => rational::int(rng.gen_range(-10..=10)),
        1 => rational::int(rng.gen_range(-64..=64)) * rational::dyadic_unit(rng.gen_range(1..=6)),
        2 => rational::ratio(rng.gen_range(-20..=20), rng.gen_range(1..=12)),
        _ => rational::ratio(rng.gen_range(-1000..=1000), rng.gen_range(1..=100)),
    }
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = random_rational(rng);
        if q != Rational::from_integer(0.into()) {
            return q;
        }
    }
}

/// `count` rationals; the first three are always `0, 1, -1`.
pub fn sample_rational(cfg: &SampleConfig) -> Vec<Rational> {
    let mut rng = rng(cfg.seed);
    let fixed = [rational::int(0), rational::int(1), rational::int(-1)];
    (0..cfg.count)
        .map(|i| fixed.get(i).cloned().unwrap_or_else(|| random_rational(&mut rng)))
        .collect()
}

const RADICANDS: [i64; 4] = [2, 3, 5, 7];

/// `count` real algebraic numbers of degree at most 2: rationals, `r√k` and
/// `q + √k`. The first three are `0, 1, -1`.
pub fn sample_algebraic(cfg: &SampleConfig) -> Vec<RealAlgebraic> {
    let mut rng = rng(cfg.seed);
    let fixed = [0, 1, -1].map(RealAlgebraic::from_int);
    (0..cfg.count)
        .map(|i| {
            if let Some(f) = fixed.get(i) {
                return f.clone();
            }
            let k = RADICANDS[rng.gen_range(0..RADICANDS.len())];
            let root = RealAlgebraic::from_int(k).sqrt().expect("positive radicand");
            match i % 3 {
                0 => RealAlgebraic::from_rational(random_rational(&mut rng)),
                1 => root.mul(&RealAlgebraic::from_rational(nonzero_rational(&mut rng))),
                _ => root.add(&RealAlgebraic::from_rational(random_rational(&mut rng))),
            }
        })
        .collect()
}
