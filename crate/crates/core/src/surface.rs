//! Differential geometry of the unit oloid boundary.
//!
//! The oloid is the convex hull of the unit circles
//!
//! ```text
//! k_A: x² + (y + 1/2)² = 1, z = 0
//! k_B: (y − 1/2)² + z² = 1, x = 0
//! ```
//!
//! Its boundary is swept by segments joining `k_A` to `k_B`. With
//! `m ∈ [0, 1]` along a segment and `t ∈ [−2π/3, 2π/3]` selecting it,
//!
//! ```text
//! ω₁ = (1 − m) sin t
//! ω₂ = (2(m − 1)cos²t + (2m − 3)cos t + 2m − 1) / (2(1 + cos t))
//! ω₃ = ± m √(1 + 2cos t) / (1 + cos t)
//! ```
//!
//! where the sign picks the sheet `z ≥ 0` or `z ≤ 0`. The surface is
//! developable: the normal depends on `t` only and `b₁₁ = b₁₂ = 0`.
//!
//! Everything here is for radius 1; other radii follow by homogeneity.

use std::f64::consts::{FRAC_PI_3, SQRT_2};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::DomainError;

/// Half-range of the segment parameter `t`, `2π/3`.
pub const T_MAX: f64 = 2.0 * FRAC_PI_3;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub type Point3 = Vec3;

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x)
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        self * (1.0 / self.norm())
    }

    pub fn max_abs_diff(self, o: Vec3) -> f64 {
        (self.x - o.x).abs().max((self.y - o.y).abs()).max((self.z - o.z).abs())
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Which half of the boundary: `z ≥ 0` or `z ≤ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sheet {
    Upper,
    Lower,
}

impl Sheet {
    fn sign(self) -> f64 {
        match self {
            Sheet::Upper => 1.0,
            Sheet::Lower => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamPoint {
    pub m: f64,
    pub t: f64,
    pub sheet: Sheet,
}

impl ParamPoint {
    pub fn new(m: f64, t: f64, sheet: Sheet) -> Result<Self, DomainError> {
        if !(0.0..=1.0).contains(&m) {
            return Err(DomainError::new("segment parameter m must lie in [0, 1]", m));
        }
        if !(-T_MAX..=T_MAX).contains(&t) {
            return Err(DomainError::new("parameter t must lie in [-2π/3, 2π/3]", t));
        }
        Ok(ParamPoint { m, t, sheet })
    }
}

/// Point of `k_A` at angle `t`: `(sin t, −cos t − 1/2, 0)`.
pub fn circle_point_a(t: f64) -> Point3 {
    Vec3::new(t.sin(), -t.cos() - 0.5, 0.0)
}

/// Point of `k_B` at angle `t`: `(0, cos t + 1/2, sin t)`.
pub fn circle_point_b(t: f64) -> Point3 {
    Vec3::new(0.0, t.cos() + 0.5, t.sin())
}

/// `1 + 2cos t` written in terms of the distance `s = 2π/3 − |t|` to the
/// nearest end of the parameter range:
/// `4 sin(s/2) sin(2π/3 − s/2)`. Accurate as `s → 0`.
pub fn radicand_from_edge(s: f64) -> f64 {
    4.0 * (0.5 * s).sin() * (T_MAX - 0.5 * s).sin()
}

/// `1 + 2cos t`, exactly zero at `t = ±T_MAX` and never negative on the domain.
pub fn one_plus_two_cos(t: f64) -> f64 {
    let half = 0.5 * t.abs();
    4.0 * (FRAC_PI_3 - half).sin() * (FRAC_PI_3 + half).sin()
}

/// Upper-sheet parametrization `ω(m, t)`.
///
/// Evaluated with `|t|` where the formula is even in `t`, so mirrored
/// parameters give bitwise mirrored points.
pub fn omega(m: f64, t: f64) -> Point3 {
    let c = t.abs().cos();
    let s = t.abs().sin().copysign(t);
    let numerator = 2.0 * (m - 1.0) * c * c + (2.0 * m - 3.0) * c + 2.0 * m - 1.0;
    Vec3::new((1.0 - m) * s, numerator / (2.0 * (1.0 + c)), m * one_plus_two_cos(t).sqrt() / (1.0 + c))
}

pub fn surface_point(p: ParamPoint) -> Point3 {
    let w = omega(p.m, p.t);
    Vec3::new(w.x, w.y, p.sheet.sign() * w.z)
}

/// Analytic partial derivatives `(ω_m, ω_t)` of the upper sheet.
pub fn tangents(m: f64, t: f64) -> (Vec3, Vec3) {
    let (s, c) = t.sin_cos();
    let r = one_plus_two_cos(t);
    let root = r.sqrt();
    let one_c = 1.0 + c;

    let numerator = 2.0 * (m - 1.0) * c * c + (2.0 * m - 3.0) * c + 2.0 * m - 1.0;
    let d_numerator = -s * (4.0 * (m - 1.0) * c + 2.0 * m - 3.0);

    let d_m = Vec3::new(-s, (c * c + c + 1.0) / one_c, root / one_c);
    let d_t = Vec3::new(
        (1.0 - m) * c,
        (d_numerator * one_c + numerator * s) / (2.0 * one_c * one_c),
        m * s * c / (root * one_c * one_c),
    );
    (d_m, d_t)
}

/// First fundamental form coefficients at a parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricCoeffs {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    /// Determinant `g11·g22 − g12²`.
    pub g: f64,
}

pub fn metric(m: f64, t: f64) -> MetricCoeffs {
    let c = t.cos();
    let r = one_plus_two_cos(t);
    let denom = (1.0 + c) * r;
    let k = (3.0 * m - 2.0) * c - 1.0;
    MetricCoeffs {
        g11: 3.0,
        g12: (0.5 * t).tan(),
        g22: (2.0 * (3.0 * m * m - 4.0 * m + 1.0) * c * c - (4.0 * m - 3.0) * c + 1.0) / denom,
        g: 2.0 * k * k / denom,
    }
}

/// Area density `√g`, i.e. `√2 |(3m − 2)cos t − 1| / √((1 + cos t)(1 + 2cos t))`.
pub fn area_element(m: f64, t: f64) -> f64 {
    let c = t.cos();
    SQRT_2 * ((3.0 * m - 2.0) * c - 1.0).abs() / ((1.0 + c) * one_plus_two_cos(t)).sqrt()
}

/// Outward unit normal of the upper sheet; independent of `m`.
///
/// Equal to `ω_t × ω_m / |ω_t × ω_m|`.
pub fn unit_normal(t: f64) -> Vec3 {
    let half_cos = (0.5 * t).cos();
    Vec3::new((0.5 * t).sin(), -t.cos() / (2.0 * half_cos), one_plus_two_cos(t).sqrt() / (2.0 * half_cos))
}

/// `b₁₁ = ⟨ω_mm, n⟩`; the segments are straight.
pub const B11: f64 = 0.0;
/// `b₁₂ = ⟨ω_mt, n⟩`; the normal is constant along each segment.
pub const B12: f64 = 0.0;

/// `b₂₂ = ⟨ω_tt, n⟩ = ((3m − 2)cos t − 1) / (√2 (1 + 2cos t) √(1 + cos t))`.
///
/// Non-positive: with the outward normal the convex surface bends away.
pub fn second_form_b22(m: f64, t: f64) -> f64 {
    let c = t.cos();
    ((3.0 * m - 2.0) * c - 1.0) / (SQRT_2 * one_plus_two_cos(t) * (1.0 + c).sqrt())
}

/// Density of `H dS` per unit `dm dt`: `3 / (4√(1 + 2cos t))`.
///
/// Diverges at `|t| = 2π/3`, an integrable singularity.
pub fn mean_curvature_density(t: f64) -> f64 {
    0.75 / one_plus_two_cos(t).sqrt()
}

/// Dihedral angle between the two sheets along the `k_A` edge,
/// `arccos(−cos t / (1 + cos t))`.
///
/// Evaluated as `2 asin(√((1 + 2cos t) / (2(1 + cos t))))`, which stays
/// accurate where the arccos argument approaches 1.
pub fn edge_angle(t: f64) -> f64 {
    edge_angle_from_parts(one_plus_two_cos(t), 1.0 + t.cos())
}

pub(crate) fn edge_angle_from_parts(one_plus_two_cos: f64, one_plus_cos: f64) -> f64 {
    2.0 * (0.5 * one_plus_two_cos / one_plus_cos).sqrt().min(1.0).asin()
}

/// `∂(ω₁, ω₂)/∂(m, t) = −(1 + (2 − 3m)cos t) / (1 + cos t)`.
pub fn jacobian_xy(m: f64, t: f64) -> f64 {
    let c = t.cos();
    -(1.0 + (2.0 - 3.0 * m) * c) / (1.0 + c)
}
