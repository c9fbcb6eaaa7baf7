//! Integral geometry of the oloid, the convex hull of two unit circles in
//! perpendicular planes, each passing through the other's center.
//!
//! The crate computes the oloid's intrinsic volumes by independent routes
//! (closed forms through complete elliptic integrals, adaptive quadrature of
//! the surface integrals, support-function integration over the sphere,
//! Monte Carlo, and a triangle-mesh oracle), and derives parallel-body and
//! principal-kinematic-formula quantities from them.

pub mod cli;
pub mod error;
pub mod intrinsic;
pub mod kinematic;
pub mod mesh;
pub mod montecarlo;
pub mod quadrature;
pub mod specfun;
pub mod steiner;
pub mod support;
pub mod surface;

pub use error::{DomainError, Error, Result};
