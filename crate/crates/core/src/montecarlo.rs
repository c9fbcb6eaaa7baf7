//! Deterministic parallel Monte Carlo means.
//!
//! Samples are split into a fixed number of shards. Shard `i` draws from a
//! ChaCha8 generator seeded with `seed` on stream `i`, so its samples depend
//! only on `(seed, i)` and not on thread scheduling. Shard statistics are
//! merged in shard order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::surface::Vec3;

/// Number of shards, independent of the thread count.
pub const SHARDS: usize = 64;

/// Mean and standard error of one sampled quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl McEstimate {
    /// `(mean − expected) / std_error`; zero when both the deviation and the
    /// standard error vanish.
    pub fn z_score(&self, expected: f64) -> f64 {
        let dev = self.mean - expected;
        if dev == 0.0 {
            0.0
        } else {
            dev / self.std_error
        }
    }
}

/// Running mean and sum of squared deviations (Welford).
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.n;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if other.n == 0.0 {
            return self;
        }
        if self.n == 0.0 {
            return other;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        Moments {
            n,
            mean: self.mean + delta * other.n / n,
            m2: self.m2 + other.m2 + delta * delta * self.n * other.n / n,
        }
    }

    fn estimate(self) -> McEstimate {
        let variance = if self.n > 1.0 { self.m2 / (self.n - 1.0) } else { 0.0 };
        McEstimate { mean: self.mean, std_error: (variance / self.n).sqrt(), samples: self.n as usize }
    }
}

/// Estimates the means of the `N` components returned by `sample` from `n`
/// draws.
pub fn sharded_means<const N: usize, F>(n: usize, seed: u64, sample: F) -> [McEstimate; N]
where
    F: Fn(&mut ChaCha8Rng) -> [f64; N] + Sync,
{
    let per_shard: Vec<[Moments; N]> = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let count = n / SHARDS + usize::from(shard < n % SHARDS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard as u64);
            let mut acc = [Moments::default(); N];
            for _ in 0..count {
                for (m, x) in acc.iter_mut().zip(sample(&mut rng)) {
                    m.push(x);
                }
            }
            acc
        })
        .collect();

    let mut total = [Moments::default(); N];
    for shard in per_shard {
        for (t, s) in total.iter_mut().zip(shard) {
            *t = t.merge(s);
        }
    }
    total.map(Moments::estimate)
}

/// Uniform direction on the unit sphere from three standard normals.
pub fn random_direction(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(StandardNormal.sample(rng), StandardNormal.sample(rng), StandardNormal.sample(rng));
        let norm = v.norm();
        if norm > 0.0 {
            return v * (1.0 / norm);
        }
    }
}
