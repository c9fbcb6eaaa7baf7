//! One-dimensional adaptive quadrature and iterated 2-D integration.
//!
//! * [`integrate`]: globally adaptive Gauss–Kronrod (7/15) bisection.
//! * [`integrate_singular`]: tanh–sinh (double-exponential) rule, for
//!   integrands with integrable power-type singularities at the endpoints.
//!   The endpoints themselves are never evaluated.
//! * [`integrate2d`]: inner integral over `y` between two curves, outer over `x`.
//!
//! Convergence means `err_est ≤ max(tol, tol·|value|)`. Running out of the
//! subdivision budget returns [`QuadError::NotConverged`] carrying the best
//! estimate, never a silent result.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use thiserror::Error;

/// Maximum number of panels kept by the adaptive Gauss–Kronrod driver.
pub const MAX_PANELS: usize = 1 << 15;
/// Maximum number of integrand evaluations for a single 1-D integral.
pub const MAX_EVALS: usize = 10_000_000;

/// Deepest tanh–sinh level; step `2⁻ᴸ`.
const MAX_TANH_SINH_LEVEL: u32 = 12;
/// Truncation of the tanh–sinh abscissa range; beyond this the nodes are
/// closer to the endpoints than any `f64` distance.
const TANH_SINH_T_MAX: f64 = 6.6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Absolute error estimate, always `≥ 0`.
    pub err_est: f64,
    pub evals: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("tolerance must be positive and finite (got {0})")]
    InvalidTolerance(f64),
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error(
        "no convergence within budget: best value {} ± {} after {} evaluations",
        best.value, best.err_est, best.evals
    )]
    NotConverged { best: QuadResult },
}

fn target(tol: f64, value: f64) -> f64 {
    tol.max(tol * value.abs())
}

fn check_args(a: f64, b: f64, tol: f64) -> Result<(), QuadError> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(QuadError::InvalidInterval { a, b });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(QuadError::InvalidTolerance(tol));
    }
    Ok(())
}

// Gauss–Kronrod 15-point abscissae (positive half, descending) and weights.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// 7-point Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel, QuadError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadError::NonFinite { x })
        }
    };

    let fc = eval(center)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = eval(center - dx)? + eval(center + dx)?;
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Ok(Panel { a, b, value: kronrod * half, err: ((kronrod - gauss) * half).abs() })
}

/// Adaptive Gauss–Kronrod integration of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult, QuadError> {
    check_args(a, b, tol)?;

    let mut heap = BinaryHeap::new();
    let first = gauss_kronrod(&f, a, b)?;
    let mut evals = 15;
    let mut total_value = first.value;
    let mut total_err = first.err;
    heap.push(first);

    let summarize = |heap: &BinaryHeap<Panel>, evals: usize| {
        let mut panels: Vec<&Panel> = heap.iter().collect();
        panels.sort_by(|p, q| p.a.total_cmp(&q.a));
        QuadResult { value: panels.iter().map(|p| p.value).sum(), err_est: panels.iter().map(|p| p.err).sum(), evals }
    };

    loop {
        if total_err <= target(tol, total_value) {
            // Re-sum in a fixed order to shed the drift of the running totals.
            let result = summarize(&heap, evals);
            if result.err_est <= target(tol, result.value) {
                return Ok(result);
            }
            total_value = result.value;
            total_err = result.err_est;
        }

        if heap.len() >= MAX_PANELS || evals + 30 > MAX_EVALS {
            return Err(QuadError::NotConverged { best: summarize(&heap, evals) });
        }

        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // The panel can no longer be split in floating point.
            heap.push(worst);
            return Err(QuadError::NotConverged { best: summarize(&heap, evals) });
        }
        let left = gauss_kronrod(&f, worst.a, mid)?;
        let right = gauss_kronrod(&f, mid, worst.b)?;
        evals += 30;
        total_value += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
}

/// Tanh–sinh integration of `f` over the open interval `(a, b)`.
///
/// The rule is refined by halving the step until two successive levels agree
/// to the tolerance; the reported error is that difference. Nodes are placed
/// as `a + δ` and `b − δ` with `δ` computed directly, so abscissae near an
/// endpoint at zero keep full relative precision. Integrands with a
/// singularity at an endpoint that is not exactly representable should be
/// rewritten in terms of the distance to that endpoint.
pub fn integrate_singular<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult, QuadError> {
    check_args(a, b, tol)?;

    let half = 0.5 * (b - a);
    let mid = a + half;
    let mut evals = 0usize;

    let center = FRAC_PI_2 * half * eval_finite(&f, mid, &mut evals)?;
    let mut sum = center + tanh_sinh_nodes(&f, a, b, 1.0, 1.0, &mut evals)?;
    let mut step = 1.0;
    let mut estimate = sum * step;

    for level in 1..=MAX_TANH_SINH_LEVEL {
        step *= 0.5;
        sum += tanh_sinh_nodes(&f, a, b, step, 2.0 * step, &mut evals)?;
        let refined = sum * step;
        let diff = (refined - estimate).abs();
        estimate = refined;
        let result = QuadResult { value: estimate, err_est: diff, evals };
        if level >= 3 && diff <= target(tol, estimate) {
            return Ok(result);
        }
        if evals > MAX_EVALS || level == MAX_TANH_SINH_LEVEL {
            return Err(QuadError::NotConverged { best: result });
        }
    }
    unreachable!("loop returns on its last level")
}

fn eval_finite<F: Fn(f64) -> f64>(f: &F, x: f64, evals: &mut usize) -> Result<f64, QuadError> {
    *evals += 1;
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(QuadError::NonFinite { x })
    }
}

/// Sum of `w(t)·[f(a + δ(t)) + f(b − δ(t))]` over `t = first, first + step, …`.
fn tanh_sinh_nodes<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    first: f64,
    step: f64,
    evals: &mut usize,
) -> Result<f64, QuadError> {
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    let mut t = first;
    while t <= TANH_SINH_T_MAX {
        let u = FRAC_PI_2 * t.sinh();
        let cosh_u = u.cosh();
        // 1 − tanh(u), evaluated without cancellation.
        let delta = 2.0 / (1.0 + (2.0 * u).exp()) * half;
        let weight = FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u) * half;
        if weight == 0.0 || delta == 0.0 {
            break;
        }
        // Each side stops contributing once its node rounds onto the endpoint.
        let left = a + delta;
        let right = b - delta;
        let left_ok = left > a;
        let right_ok = right < b;
        if !(left_ok || right_ok) {
            break;
        }
        if left_ok {
            sum += weight * eval_finite(f, left, evals)?;
        }
        if right_ok {
            sum += weight * eval_finite(f, right, evals)?;
        }
        t += step;
    }
    Ok(sum)
}

/// Iterated integral `∫_{x₀}^{x₁} ∫_{lower(x)}^{upper(x)} f(x, y) dy dx`.
///
/// Each level gets half of the tolerance budget. The reported error adds the
/// outer estimate and the largest inner estimate times the outer length.
pub fn integrate2d<F, L, U>(f: F, x_range: (f64, f64), lower: L, upper: U, tol: f64) -> Result<QuadResult, QuadError>
where
    F: Fn(f64, f64) -> f64,
    L: Fn(f64) -> f64,
    U: Fn(f64) -> f64,
{
    let (x0, x1) = x_range;
    check_args(x0, x1, tol)?;
    let inner_tol = 0.5 * tol;

    let failure: RefCell<Option<QuadError>> = RefCell::new(None);
    let inner_evals = RefCell::new(0usize);
    let inner_err = RefCell::new(0.0_f64);

    let outer = integrate(
        |x| {
            if failure.borrow().is_some() {
                return 0.0;
            }
            let (lo, hi) = (lower(x), upper(x));
            if hi <= lo {
                return 0.0;
            }
            match integrate(|y| f(x, y), lo, hi, inner_tol) {
                Ok(r) => {
                    *inner_evals.borrow_mut() += r.evals;
                    let mut worst = inner_err.borrow_mut();
                    *worst = worst.max(r.err_est);
                    r.value
                }
                Err(e) => {
                    *failure.borrow_mut() = Some(e);
                    0.0
                }
            }
        },
        x0,
        x1,
        0.5 * tol,
    );

    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let outer = outer?;
    Ok(QuadResult {
        value: outer.value,
        err_est: outer.err_est + (x1 - x0) * inner_err.into_inner(),
        evals: outer.evals + inner_evals.into_inner(),
    })
}
