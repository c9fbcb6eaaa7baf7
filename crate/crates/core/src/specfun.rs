//! Complete elliptic integrals of the first and second kind.
//!
//! Both functions take the **modulus** `k`, not the parameter `m = k²`:
//!
//! ```text
//! K(k) = ∫₀^(π/2) dx / √(1 − k² sin²x)
//! E(k) = ∫₀^(π/2) √(1 − k² sin²x) dx
//! ```
//!
//! References disagree on this convention (Abramowitz & Stegun and most
//! numerical libraries use `m`), so callers porting formulas should check
//! which one their source uses.
//!
//! Evaluation uses the arithmetic–geometric mean. With `a₀ = 1`,
//! `b₀ = k' = √(1 − k²)` and `c₀ = k`,
//!
//! ```text
//! K(k) = π / (2 · AGM(1, k'))
//! E(k) = K(k) · (1 − Σₙ 2ⁿ⁻¹ cₙ²),   cₙ₊₁ = (aₙ − bₙ) / 2
//! ```

use std::f64::consts::FRAC_PI_2;

use crate::error::DomainError;

/// Iteration cap for the AGM; quadratic convergence needs fewer than ten.
const MAX_AGM_ITER: usize = 64;

/// Elliptic modulus `k ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Modulus(f64);

impl Modulus {
    /// The modulus `√3/2` that appears throughout the oloid formulas.
    pub const SQRT3_OVER_2: Modulus = Modulus(0.866_025_403_784_438_6);

    pub fn new(k: f64) -> Result<Self, DomainError> {
        if (0.0..=1.0).contains(&k) {
            Ok(Modulus(k))
        } else {
            Err(DomainError::new("elliptic modulus must lie in [0, 1]", k))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `k' = √(1 − k²)`, computed as `√((1 − k)(1 + k))` to keep precision
    /// near `k = 1`.
    pub fn complementary(self) -> Modulus {
        let k = self.0;
        Modulus(((1.0 - k) * (1.0 + k)).sqrt())
    }
}

impl TryFrom<f64> for Modulus {
    type Error = DomainError;

    fn try_from(k: f64) -> Result<Self, Self::Error> {
        Modulus::new(k)
    }
}

/// Output of one AGM run: the mean and the weighted sum `Σ 2ⁿ⁻¹ cₙ²`.
struct Agm {
    mean: f64,
    weighted_c2: f64,
}

fn agm(k: Modulus) -> Agm {
    let mut a = 1.0_f64;
    let mut b = k.complementary().0;
    let mut c = k.0;
    let mut weight = 0.5;
    let mut weighted_c2 = weight * c * c;

    for _ in 0..MAX_AGM_ITER {
        if (a - b).abs() <= 4.0 * ulp(a) {
            break;
        }
        let next_a = 0.5 * (a + b);
        let next_b = (a * b).sqrt();
        c = 0.5 * (a - b);
        weight *= 2.0;
        weighted_c2 += weight * c * c;
        a = next_a;
        b = next_b;
    }

    Agm { mean: 0.5 * (a + b), weighted_c2 }
}

fn ulp(x: f64) -> f64 {
    let x = x.abs();
    f64::from_bits(x.to_bits() + 1) - x
}

/// Complete elliptic integral of the first kind, `K(k)`.
///
/// `k = 1` is rejected: the integral diverges there.
pub fn ellipk(k: Modulus) -> Result<f64, DomainError> {
    if k.0 >= 1.0 {
        return Err(DomainError::new("K(k) diverges at k = 1", k.0));
    }
    Ok(FRAC_PI_2 / agm(k).mean)
}

/// Complete elliptic integral of the second kind, `E(k)`, defined on all of
/// `[0, 1]` with `E(1) = 1`.
pub fn ellipe(k: Modulus) -> f64 {
    if k.0 == 1.0 {
        return 1.0;
    }
    let run = agm(k);
    FRAC_PI_2 / run.mean * (1.0 - run.weighted_c2)
}
