//! The principal kinematic formula in ℝ³ and the expectations it yields for
//! the intersection of a fixed body `K` with a randomly moved body `M`
//! that hits it.

use std::f64::consts::PI;

use crate::error::{DomainError, Error, Result};
use crate::intrinsic::IntrinsicVolumes;
use crate::montecarlo::{sharded_means, McEstimate};
use crate::steiner::kappa;

use rand::Rng;

/// Smallest sample count accepted by [`mc_ball_ball_expectations`].
pub const MIN_BALL_BALL_SAMPLES: usize = 10_000;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `αₙⱼₖ = k!κₖ (n+j−k)! κ_{n+j−k} / (j!κⱼ n!κₙ)` for `0 ≤ j ≤ k ≤ n`.
pub fn alpha_coeff(n: u32, j: u32, k: u32) -> Result<f64, DomainError> {
    if !(j <= k && k <= n) {
        return Err(DomainError::new("α needs 0 ≤ j ≤ k ≤ n", f64::from(k)));
    }
    let c = n + j - k;
    Ok(factorial(k) * kappa(k) * factorial(c) * kappa(c) / (factorial(j) * kappa(j) * factorial(n) * kappa(n)))
}

/// `Vₖ(B_r) = C(3, k)·κ₃/κ_{3−k}·rᵏ`.
pub fn ball_intrinsic_volume_binomial(k: u32, r: f64) -> f64 {
    let binom = factorial(3) / (factorial(k) * factorial(3 - k));
    binom * kappa(3) / kappa(3 - k) * r.powi(k as i32)
}

/// `(1, 4r, 2πr², 4πr³/3)`.
pub fn ball_intrinsic_volumes(r: f64) -> Result<IntrinsicVolumes, DomainError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(DomainError::new("radius must be positive and finite", r));
    }
    Ok(IntrinsicVolumes([1.0, 4.0 * r, 2.0 * PI * r * r, 4.0 * PI / 3.0 * r.powi(3)]))
}

/// The integrals `Iⱼ(K, M)` of `Vⱼ(K ∩ gM)` over all rigid motions `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicFunctionals {
    pub i0: f64,
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
}

impl KinematicFunctionals {
    pub fn as_array(&self) -> [f64; 4] {
        [self.i0, self.i1, self.i2, self.i3]
    }
}

/// `Iⱼ(K, M) = Σ_{k=j}^{3} α₃ⱼₖ Vₖ(K) V_{3+j−k}(M)`.
pub fn kinematic_functionals(k: &IntrinsicVolumes, m: &IntrinsicVolumes) -> KinematicFunctionals {
    let i = |j: u32| -> f64 {
        (j..=3)
            .map(|l| {
                let alpha = alpha_coeff(3, j, l).expect("indices within range");
                alpha * k.v(l as usize) * m.v((3 + j - l) as usize)
            })
            .sum()
    };
    KinematicFunctionals { i0: i(0), i1: i(1), i2: i(2), i3: i(3) }
}

/// Expected mean width, surface area and volume of `K ∩ gM` given that it
/// is nonempty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Expectations {
    pub mean_width: f64,
    pub surface: f64,
    pub volume: f64,
}

pub fn intersection_expectations(k: &IntrinsicVolumes, m: &IntrinsicVolumes) -> Result<Expectations> {
    let f = kinematic_functionals(k, m);
    if f.i0 == 0.0 || !f.i0.is_finite() {
        return Err(Error::DegenerateBody(f.i0));
    }
    Ok(Expectations { mean_width: f.i1 / (2.0 * f.i0), surface: 2.0 * f.i2 / f.i0, volume: f.i3 / f.i0 })
}

/// Volume of the intersection of two unit balls with centers `d` apart.
pub fn lens_volume(d: f64) -> f64 {
    if d >= 2.0 {
        return 0.0;
    }
    PI / 12.0 * (4.0 + d) * (2.0 - d) * (2.0 - d)
}

/// Surface area of the intersection of two unit balls with centers `d`
/// apart: two spherical caps of height `1 − d/2`.
pub fn lens_surface(d: f64) -> f64 {
    if d >= 2.0 {
        return 0.0;
    }
    4.0 * PI - 2.0 * PI * d
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallBallMc {
    pub volume: McEstimate,
    pub surface: McEstimate,
}

/// Monte Carlo over hitting positions of two unit balls: the center offset
/// is uniform in the ball of radius 2, and each sample contributes the lens
/// volume and surface at that distance.
pub fn mc_ball_ball_expectations(n: usize, seed: u64) -> Result<BallBallMc, DomainError> {
    if n < MIN_BALL_BALL_SAMPLES {
        return Err(DomainError::new("ball–ball Monte Carlo needs at least 10⁴ samples", n as f64));
    }
    let [volume, surface] = sharded_means(n, seed, |rng| {
        let d = 2.0 * rng.random::<f64>().cbrt();
        [lens_volume(d), lens_surface(d)]
    });
    Ok(BallBallMc { volume, surface })
}
