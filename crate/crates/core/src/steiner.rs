//! Unit-ball volumes and the Steiner formula for parallel bodies.

use std::f64::consts::PI;

use crate::error::DomainError;
use crate::intrinsic::{oloid_intrinsic_volumes, IntrinsicVolumes};

/// `Γ(n/2)` for a positive integer `n`, from `Γ(1/2) = √π`, `Γ(1) = 1`
/// and `Γ(x + 1) = xΓ(x)`.
fn gamma_half(n: u32) -> f64 {
    let (mut x, mut g) = if n.is_multiple_of(2) { (1.0, 1.0) } else { (0.5, PI.sqrt()) };
    while 2.0 * x < n as f64 {
        g *= x;
        x += 1.0;
    }
    g
}

/// Volume of the unit ball in ℝᵏ, `π^{k/2} / Γ(1 + k/2)`.
pub fn kappa(k: u32) -> f64 {
    PI.powf(0.5 * k as f64) / gamma_half(k + 2)
}

/// Volume of `K + ρB³`: `Σⱼ ρ^{3−j} κ_{3−j} Vⱼ(K)`.
pub fn steiner_volume(k: &IntrinsicVolumes, rho: f64) -> f64 {
    (0..4).map(|j| rho.powi(3 - j as i32) * kappa(3 - j as u32) * k.v(j)).sum()
}

/// Integral of mean curvature, surface area and volume of a parallel body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParallelBodyQuantities {
    pub rho: f64,
    pub m: f64,
    pub s: f64,
    pub v: f64,
}

/// The parallel body at distance `ρ` of the oloid of radius `r`.
pub fn parallel_body(r: f64, rho: f64) -> Result<ParallelBodyQuantities, DomainError> {
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(DomainError::new("offset ρ must be non-negative and finite", rho));
    }
    let unit = oloid_intrinsic_volumes(1.0)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(DomainError::new("radius must be positive and finite", r));
    }
    let m1 = unit.mean_curvature_integral();
    let four_pi = 4.0 * PI;
    Ok(ParallelBodyQuantities {
        rho,
        m: m1 * r + four_pi * rho,
        s: four_pi * r * r + 2.0 * m1 * r * rho + four_pi * rho * rho,
        v: unit.volume() * r.powi(3) + four_pi * r * r * rho + m1 * r * rho * rho + four_pi / 3.0 * rho.powi(3),
    })
}
