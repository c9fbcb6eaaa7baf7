//! Support function and mean width of the unit oloid.
//!
//! The oloid is the convex hull of `k_A` (center `(0, −1/2, 0)`, plane
//! `z = 0`) and `k_B` (center `(0, 1/2, 0)`, plane `x = 0`), so its support
//! function is the larger of the two circles' support functions:
//!
//! ```text
//! h(u) = max(−u_y/2 + √(u_x² + u_y²),  u_y/2 + √(u_y² + u_z²))
//! ```
//!
//! In spherical coordinates `u = (cos φ sin ϑ, sin φ sin ϑ, cos ϑ)` the two
//! terms are [`branch1`] and [`branch2`]. On the octant `φ, ϑ ∈ [0, π/2]`
//! the switch between them happens on the curve `ϑ = ξ(φ)` for
//! `φ ≤ π/6`; above `π/6` the second branch dominates everywhere.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

use crate::error::{DomainError, Result};
use crate::montecarlo::{random_direction, sharded_means, McEstimate};
use crate::quadrature::{integrate2d, QuadResult};
use crate::surface::Vec3;

/// Smallest sample count accepted by the Monte Carlo estimators.
pub const MIN_MC_SAMPLES: usize = 1000;

/// Support of `k_A`: `(1 − sin φ / 2)·sin ϑ`, with `|sin ϑ|` off `[0, π]`.
pub fn branch1(phi: f64, theta: f64) -> f64 {
    let st = theta.sin();
    st.abs() - 0.5 * phi.sin() * st
}

/// Support of `k_B`: `sin φ sin ϑ / 2 + √(sin²φ sin²ϑ + cos²ϑ)`.
pub fn branch2(phi: f64, theta: f64) -> f64 {
    let y = phi.sin() * theta.sin();
    let z = theta.cos();
    0.5 * y + y.hypot(z)
}

/// Support function in spherical coordinates; valid for all `φ, ϑ`.
pub fn support_spherical(phi: f64, theta: f64) -> f64 {
    branch1(phi, theta).max(branch2(phi, theta))
}

pub(crate) fn support_unchecked(u: Vec3) -> f64 {
    let a = -0.5 * u.y + u.x.hypot(u.y);
    let b = 0.5 * u.y + u.y.hypot(u.z);
    a.max(b)
}

/// Support function in the unit direction `u`.
pub fn support_dir(u: Vec3) -> Result<f64, DomainError> {
    let norm = u.norm();
    if (norm - 1.0).abs() > 1e-12 || !norm.is_finite() {
        return Err(DomainError::new("direction must be a unit vector", norm));
    }
    Ok(support_unchecked(u))
}

/// Width in direction `(φ, ϑ)`: `h(u) + h(−u)`.
pub fn width(phi: f64, theta: f64) -> f64 {
    support_spherical(phi, theta) + support_spherical(PI + phi, PI - theta)
}

/// Polar angle `ξ(φ)` at which [`branch1`] and [`branch2`] are equal,
/// `arccos √((1 − 2 sin φ) / (2 − 2 sin φ))`, for `φ ∈ [0, π/6]`.
pub fn xi(phi: f64) -> Result<f64, DomainError> {
    if !(0.0..=FRAC_PI_6).contains(&phi) {
        return Err(DomainError::new("ξ(φ) needs φ in [0, π/6]", phi));
    }
    let s = phi.sin();
    let radicand = ((1.0 - 2.0 * s) / (2.0 - 2.0 * s)).max(0.0);
    Ok(radicand.sqrt().acos())
}

fn xi_clamped(phi: f64) -> f64 {
    xi(phi.clamp(0.0, FRAC_PI_6)).unwrap_or(FRAC_PI_2)
}

/// Mean width from an octant support function given by its two branches:
///
/// ```text
/// b̄ = (4/π)·[ ∫₀^{π/6} ∫₀^{ξ} b₂ sin ϑ  +  ∫₀^{π/6} ∫_{ξ}^{π/2} b₁ sin ϑ
///           + ∫_{π/6}^{π/2} ∫₀^{π/2} b₂ sin ϑ ]
/// ```
///
/// With both branches equal to the constant 1 this is the unit ball's 2.
pub fn octant_mean_width<B1, B2>(b1: B1, b2: B2, tol: f64) -> Result<QuadResult>
where
    B1: Fn(f64, f64) -> f64,
    B2: Fn(f64, f64) -> f64,
{
    let scale = 4.0 / PI;
    let part_tol = tol / (3.0 * scale);
    let parts = [
        integrate2d(|p, t| b2(p, t) * t.sin(), (0.0, FRAC_PI_6), |_| 0.0, xi_clamped, part_tol)?,
        integrate2d(|p, t| b1(p, t) * t.sin(), (0.0, FRAC_PI_6), xi_clamped, |_| FRAC_PI_2, part_tol)?,
        integrate2d(|p, t| b2(p, t) * t.sin(), (FRAC_PI_6, FRAC_PI_2), |_| 0.0, |_| FRAC_PI_2, part_tol)?,
    ];
    Ok(QuadResult {
        value: scale * parts.iter().map(|q| q.value).sum::<f64>(),
        err_est: scale * parts.iter().map(|q| q.err_est).sum::<f64>(),
        evals: parts.iter().map(|q| q.evals).sum(),
    })
}

/// Mean width of the unit oloid by integrating its support function over
/// the sphere.
pub fn mean_width_direct(tol: f64) -> Result<QuadResult> {
    octant_mean_width(branch1, branch2, tol)
}

/// Monte Carlo mean width of the body with support function `h`: the
/// average of `h(u) + h(−u)` over `n` uniform directions.
pub fn mean_width_montecarlo_with<H>(h: H, n: usize, seed: u64) -> Result<McEstimate, DomainError>
where
    H: Fn(Vec3) -> f64 + Sync,
{
    if n < MIN_MC_SAMPLES {
        return Err(DomainError::new("Monte Carlo needs at least 1000 samples", n as f64));
    }
    let [e] = sharded_means(n, seed, |rng| {
        let u = random_direction(rng);
        [h(u) + h(-u)]
    });
    Ok(e)
}

/// Monte Carlo mean width of the unit oloid.
pub fn mean_width_montecarlo(n: usize, seed: u64) -> Result<McEstimate, DomainError> {
    mean_width_montecarlo_with(support_unchecked, n, seed)
}

#[cfg(test)]
#[allow(clippy::approx_constant, clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::surface::{circle_point_a, circle_point_b};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    const MEAN_WIDTH: f64 = 2.190_676_966_231_588_8;

    fn dir(phi: f64, theta: f64) -> Vec3 {
        Vec3::new(phi.cos() * theta.sin(), phi.sin() * theta.sin(), theta.cos())
    }

    /// Largest `⟨p, u⟩` over `n` equally spaced points on each circle.
    fn brute_force_support(u: Vec3, n: usize) -> f64 {
        (0..n)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / n as f64;
                circle_point_a(t).dot(u).max(circle_point_b(t).dot(u))
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn axis_values() {
        assert_eq!(support_spherical(0.0, FRAC_PI_2), 1.0);
        assert_eq!(support_spherical(FRAC_PI_2, FRAC_PI_2), 1.5);
        assert_eq!(support_spherical(0.0, 0.0), 1.0);
        assert_eq!(support_dir(Vec3::new(0.0, 0.0, 1.0)).unwrap(), 1.0);
        assert_eq!(support_dir(Vec3::new(0.0, -1.0, 0.0)).unwrap(), 1.5);
        assert!(support_dir(Vec3::new(0.0, 0.0, 2.0)).is_err());
        assert!(support_dir(Vec3::new(f64::NAN, 0.0, 1.0)).is_err());
    }

    #[test]
    fn axis_widths() {
        assert!((width(FRAC_PI_2, FRAC_PI_2) - 3.0).abs() < 1e-15);
        assert!((width(0.0, FRAC_PI_2) - 2.0).abs() < 1e-15);
        assert!((width(0.0, 0.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn xi_values() {
        assert!((xi(0.0).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!((xi(FRAC_PI_6).unwrap() - FRAC_PI_2).abs() < 1e-7);
        assert!(xi(-0.1).is_err());
        assert!(xi(0.6).is_err());
    }

    #[test]
    fn branches_meet_on_the_switching_curve() {
        for i in 0..50 {
            let phi = FRAC_PI_6 * i as f64 / 50.0;
            let theta = xi(phi).unwrap();
            assert!((branch1(phi, theta) - branch2(phi, theta)).abs() < 1e-12, "φ={phi}");
        }
    }

    #[test]
    fn matches_brute_force_circle_points() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let u = random_direction(&mut rng);
            let h = support_dir(u).unwrap();
            assert!((h - brute_force_support(u, 500_000)).abs() < 1e-6, "{u:?}");
        }
    }

    #[test]
    fn mean_width_by_direct_integration() {
        let q = mean_width_direct(1e-9).unwrap();
        assert!((q.value - MEAN_WIDTH).abs() < 1e-8, "{}", q.value);
        assert!(format!("{:.11}", q.value) == "2.19067696623");
    }

    #[test]
    fn constant_support_gives_ball_width() {
        let q = octant_mean_width(|_, _| 1.0, |_, _| 1.0, 1e-10).unwrap();
        assert!((q.value - 2.0).abs() < 1e-10);
        let e = mean_width_montecarlo_with(|_| 1.0, 1000, 0).unwrap();
        assert_eq!(e.mean, 2.0);
        assert_eq!(e.std_error, 0.0);
    }

    #[test]
    fn montecarlo_mean_width() {
        let e = mean_width_montecarlo(1_000_000, 2024).unwrap();
        assert!((e.mean - MEAN_WIDTH).abs() < 3.0 * e.std_error, "{e:?}");
        assert_eq!(e, mean_width_montecarlo(1_000_000, 2024).unwrap());
        assert!(mean_width_montecarlo(999, 0).is_err());
    }

    use rand::SeedableRng;

    proptest! {
        #[test]
        fn spherical_and_cartesian_agree(phi in -7.0..7.0f64, theta in -4.0..4.0f64) {
            let u = dir(phi, theta);
            prop_assert!((support_spherical(phi, theta) - support_unchecked(u)).abs() < 1e-14);
        }

        #[test]
        fn mirror_symmetries(phi in 0.0..6.3f64, theta in 0.0..3.15f64) {
            let u = dir(phi, theta);
            let h = support_unchecked(u);
            prop_assert!((support_unchecked(Vec3::new(-u.x, u.y, u.z)) - h).abs() < 1e-15);
            prop_assert!((support_unchecked(Vec3::new(u.x, u.y, -u.z)) - h).abs() < 1e-15);
            let w = width(phi, theta);
            prop_assert!((width(PI + phi, PI - theta) - w).abs() < 1e-14);
        }

        #[test]
        fn piecewise_max_consistency(phi in 0.0..FRAC_PI_2, theta in 0.0..FRAC_PI_2) {
            let (b1, b2) = (branch1(phi, theta), branch2(phi, theta));
            if phi <= FRAC_PI_6 {
                let x = xi(phi).unwrap();
                if (theta - x).abs() > 1e-9 {
                    prop_assert_eq!(b1 >= b2, theta >= x);
                }
            } else {
                prop_assert!(b2 >= b1);
            }
        }
    }
}
