//! Intrinsic volumes of the oloid and the integrals behind them.
//!
//! Every quantity is available in closed form (through `K(√3/2)`,
//! `E(√3/2)` and the constant `I`) and by direct quadrature of its defining
//! integrand. The integrands over `t ∈ (0, 2π/3)` all have a square-root
//! singularity or branch point at `t = 2π/3`, which is not representable in
//! binary. They are therefore integrated in the distance `s = 2π/3 − t` to
//! that end, where `1 + 2cos t` is available to full relative precision.
//!
//! Quantities are for the unit oloid unless a radius is passed; scaling is
//! by homogeneity.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use crate::error::{DomainError, Result};
use crate::quadrature::{integrate, integrate_singular, QuadResult};
use crate::specfun::{ellipe, ellipk, Modulus};
use crate::surface::{edge_angle_from_parts, radicand_from_edge, T_MAX};

/// Default tolerance for smooth integrands.
pub const TOL_SMOOTH: f64 = 1e-12;
/// Default tolerance for integrands with an endpoint singularity.
pub const TOL_SINGULAR: f64 = 1e-10;
/// Tolerance at which `I` is computed and cached.
pub const TOL_COXETER: f64 = 1e-13;

/// How a quantity is computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Route {
    Closed,
    Quadrature { tol: f64 },
}

/// How the edge term is computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeRoute {
    /// Quadrature of the dihedral angle along the edge.
    Direct { tol: f64 },
    /// `3π²/2 − 4I`.
    Reduced,
}

/// A value with an optional absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub err_est: Option<f64>,
}

impl Estimate {
    fn exact(value: f64) -> Self {
        Estimate { value, err_est: None }
    }

    fn scaled(q: QuadResult, factor: f64) -> Self {
        Estimate { value: factor * q.value, err_est: Some(factor.abs() * q.err_est) }
    }
}

/// Intrinsic volumes `V₀ … V₃` of a convex body in ℝ³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntrinsicVolumes(pub [f64; 4]);

impl IntrinsicVolumes {
    pub fn v(&self, j: usize) -> f64 {
        self.0[j]
    }

    pub fn mean_width(&self) -> f64 {
        0.5 * self.0[1]
    }

    pub fn surface(&self) -> f64 {
        2.0 * self.0[2]
    }

    /// Integral of mean curvature, `M = πV₁`.
    pub fn mean_curvature_integral(&self) -> f64 {
        PI * self.0[1]
    }

    pub fn volume(&self) -> f64 {
        self.0[3]
    }

    /// Intrinsic volumes of `λK`: `Vⱼ` scales with `λʲ`.
    pub fn scaled(&self, lambda: f64) -> IntrinsicVolumes {
        let [v0, v1, v2, v3] = self.0;
        IntrinsicVolumes([v0, lambda * v1, lambda * lambda * v2, lambda.powi(3) * v3])
    }
}

/// `K(√3/2)`.
pub fn k_sqrt3_2() -> f64 {
    static K: OnceLock<f64> = OnceLock::new();
    *K.get_or_init(|| ellipk(Modulus::SQRT3_OVER_2).expect("modulus below 1"))
}

/// `E(√3/2)`.
pub fn e_sqrt3_2() -> f64 {
    static E: OnceLock<f64> = OnceLock::new();
    *E.get_or_init(|| ellipe(Modulus::SQRT3_OVER_2))
}

fn positive_radius(r: f64) -> Result<f64, DomainError> {
    if r > 0.0 && r.is_finite() {
        Ok(r)
    } else {
        Err(DomainError::new("radius must be positive and finite", r))
    }
}

/// `(1 + 2cos t, 1 + cos t)` at `t = 2π/3 − s`.
fn parts_from_edge(s: f64) -> (f64, f64) {
    (radicand_from_edge(s), 1.0 + (T_MAX - s).cos())
}

/// Surface area of the unit oloid. The closed form is `4π`.
pub fn surface_area(route: Route) -> Result<Estimate> {
    match route {
        Route::Closed => Ok(Estimate::exact(4.0 * PI)),
        Route::Quadrature { tol } => {
            let f = |s: f64| {
                let (r, one_c) = parts_from_edge(s);
                (1.0 + one_c) / (one_c * r).sqrt()
            };
            let scale = 2.0 * std::f64::consts::SQRT_2;
            let q = integrate_singular(f, 0.0, T_MAX, tol / scale)?;
            Ok(Estimate::scaled(q, scale))
        }
    }
}

/// Volume of the unit oloid, `(2/3)[K(√3/2) + 2E(√3/2)]`.
pub fn volume(route: Route) -> Result<Estimate> {
    match route {
        Route::Closed => Ok(Estimate::exact(2.0 / 3.0 * (k_sqrt3_2() + 2.0 * e_sqrt3_2()))),
        Route::Quadrature { tol } => {
            let f = |s: f64| {
                let (r, one_c) = parts_from_edge(s);
                r.sqrt() / (one_c * one_c)
            };
            let q = integrate_singular(f, 0.0, T_MAX, 0.5 * tol)?;
            Ok(Estimate::scaled(q, 2.0))
        }
    }
}

/// Surface integral of the mean curvature over the smooth part,
/// `3K(√3/2)`.
pub fn curvature_integral(route: Route) -> Result<Estimate> {
    match route {
        Route::Closed => Ok(Estimate::exact(3.0 * k_sqrt3_2())),
        Route::Quadrature { tol } => {
            let q = integrate_singular(|s| 1.0 / radicand_from_edge(s).sqrt(), 0.0, T_MAX, tol / 3.0)?;
            Ok(Estimate::scaled(q, 3.0))
        }
    }
}

/// `I = ∫₀^{π/2} arccos(cos t / (1 + cos t)) dt` with its error estimate,
/// computed once at [`TOL_COXETER`].
pub fn coxeter_like_i_estimate() -> QuadResult {
    static I: OnceLock<QuadResult> = OnceLock::new();
    *I.get_or_init(|| {
        integrate(coxeter_integrand, 0.0, FRAC_PI_2, TOL_COXETER).expect("smooth integrand on a fixed interval")
    })
}

/// The constant `I ≈ 1.8773810542824745`.
pub fn coxeter_like_i() -> f64 {
    coxeter_like_i_estimate().value
}

pub fn coxeter_integrand(t: f64) -> f64 {
    let c = t.cos();
    (c / (1.0 + c)).acos()
}

/// Edge contribution to the integral of mean curvature: half the integral
/// of the dihedral angle over both edges, which by symmetry is
/// `2∫₀^{2π/3} α(t) dt` along one of them. The edge circles have unit
/// speed, so the arc-length element is `dt`.
pub fn edge_integral(route: EdgeRoute) -> Result<Estimate> {
    match route {
        EdgeRoute::Reduced => {
            let i = coxeter_like_i_estimate();
            Ok(Estimate { value: 1.5 * PI * PI - 4.0 * i.value, err_est: Some(4.0 * i.err_est) })
        }
        EdgeRoute::Direct { tol } => {
            let f = |s: f64| {
                let (r, one_c) = parts_from_edge(s);
                edge_angle_from_parts(r, one_c)
            };
            let q = integrate_singular(f, 0.0, T_MAX, 0.5 * tol)?;
            Ok(Estimate::scaled(q, 2.0))
        }
    }
}

/// Integral of mean curvature of the oloid of radius `r`,
/// `[3K(√3/2) + 3π²/2 − 4I]·r`.
pub fn mean_curvature_total(r: f64) -> Result<f64, DomainError> {
    let r = positive_radius(r)?;
    Ok((3.0 * k_sqrt3_2() + 1.5 * PI * PI - 4.0 * coxeter_like_i()) * r)
}

/// Mean width of the oloid of radius `r`, `M/(2π)`.
pub fn mean_width(r: f64) -> Result<f64, DomainError> {
    let r = positive_radius(r)?;
    Ok((1.5 / PI * k_sqrt3_2() + 0.75 * PI - 2.0 / PI * coxeter_like_i()) * r)
}

pub fn oloid_intrinsic_volumes(r: f64) -> Result<IntrinsicVolumes, DomainError> {
    let r = positive_radius(r)?;
    let k = k_sqrt3_2();
    let v1 = 3.0 / PI * k + 1.5 * PI - 4.0 / PI * coxeter_like_i();
    let v3 = 2.0 / 3.0 * (2.0 * e_sqrt3_2() + k);
    Ok(IntrinsicVolumes([1.0, v1, 2.0 * PI, v3]).scaled(r))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    /// `∫₀^{2π/3} dt / √(1 + 2cos t)` by quadrature.
    pub j: f64,
    /// `K(√3/2)` by the AGM.
    pub k: f64,
    pub delta: f64,
}

impl IdentityCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.delta <= tol
    }
}

/// Evaluates both sides of `∫₀^{2π/3} dt / √(1 + 2cos t) = K(√3/2)`.
pub fn elliptic_identity_check(tol: f64) -> Result<IdentityCheck> {
    let j = integrate_singular(|s| 1.0 / radicand_from_edge(s).sqrt(), 0.0, T_MAX, tol)?.value;
    let k = k_sqrt3_2();
    Ok(IdentityCheck { j, k, delta: (j - k).abs() })
}

/// The same integral after the substitution that turns it into Legendre
/// form: `1 / √(1 − (3/4) sin²φ)` on `[0, π/2]`.
pub fn legendre_form_integrand(phi: f64) -> f64 {
    let s = phi.sin();
    1.0 / (1.0 - 0.75 * s * s).sqrt()
}
