//! Numerical Caputo left- and right-sided fractional derivatives.
//!
//! Both sides integrate the integer-order derivative f⁽ⁿ⁾ against the
//! power-law kernel (distance)^{n−α−1}. The kernel exponent is known in
//! closed form, so the weakly singular case (n−α−1 ≤ 0) goes through the
//! exact variable change in [`quad::integrate_singular_transformed`]; when
//! the exponent is positive the integrand is bounded and the plain adaptive
//! route is used.

use crate::exprlang::{EvalError, RealFunction};
use crate::quad::{self, Endpoint, QuadError, QuadratureSpec};
use crate::specfun::{self, SpecFunError};
use std::cell::RefCell;
use thiserror::Error;

/// The pair (n, α) with n a positive integer derivative order and
/// 0 ≤ α < 1. The derived exponent p = n − α is always recomputed, never
/// stored.
///
/// Claims that need p ∈ (−1, 1] take p as a free parameter instead of
/// deriving it from (n, α); this type only guarantees p > n − 1 ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    n: u32,
    alpha: f64,
}

impl FracOrder {
    pub fn new(n: u32, alpha: f64) -> Result<Self, CaputoError> {
        if n < 1 {
            return Err(CaputoError::Domain(
                "derivative order n must be a positive integer".into(),
            ));
        }
        if !(0.0..1.0).contains(&alpha) {
            return Err(CaputoError::Domain(format!(
                "alpha must lie in [0, 1), got {alpha}"
            )));
        }
        Ok(FracOrder { n, alpha })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// p = n − α
    pub fn p(&self) -> f64 {
        f64::from(self.n) - self.alpha
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CaputoError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error("integrand evaluation failed: {0}")]
    Eval(#[from] EvalError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Integrates kernel · f⁽ⁿ⁾ over [lo, hi], where the kernel is
/// (distance to `endpoint`)^{p−1}, and divides by Γ(p).
fn caputo_integral(
    f: &RealFunction,
    lo: f64,
    hi: f64,
    order: FracOrder,
    endpoint: Endpoint,
    spec: &QuadratureSpec,
) -> Result<f64, CaputoError> {
    let n = order.n();
    let sigma = order.p() - 1.0;
    let eval_failure: RefCell<Option<EvalError>> = RefCell::new(None);
    let derivative = |xi: f64| match f.nth_derivative_value(n, xi) {
        Ok(v) => v,
        Err(e) => {
            eval_failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };

    let quad_result = if sigma <= 0.0 {
        quad::integrate_singular_transformed(derivative, lo, hi, sigma, endpoint, spec)
    } else {
        // n ≥ 2 makes the kernel bounded; no transform needed
        let kernel = |xi: f64| match endpoint {
            Endpoint::Left => (xi - lo).powf(sigma),
            Endpoint::Right => (hi - xi).powf(sigma),
        };
        quad::integrate(|xi| kernel(xi) * derivative(xi), lo, hi, spec)
    };

    if let Some(e) = eval_failure.into_inner() {
        return Err(CaputoError::Eval(e));
    }
    let integral = quad_result?;
    Ok(integral.value / specfun::gamma(order.p())?)
}

/// Caputo left-sided derivative at x with base point a < x:
/// (1/Γ(n−α)) ∫ₐˣ (x−ξ)^{n−α−1} f⁽ⁿ⁾(ξ) dξ.
pub fn caputo_left(
    f: &RealFunction,
    a: f64,
    x: f64,
    order: FracOrder,
    spec: &QuadratureSpec,
) -> Result<f64, CaputoError> {
    if !(a < x) {
        return Err(CaputoError::Domain(format!(
            "caputo_left requires a < x, got a = {a}, x = {x}"
        )));
    }
    caputo_integral(f, a, x, order, Endpoint::Right, spec)
}

/// Caputo right-sided derivative at x with upper point b > x:
/// ((−1)ⁿ/Γ(n−α)) ∫ₓᵇ (ξ−x)^{n−α−1} f⁽ⁿ⁾(ξ) dξ.
///
/// n is an integer, so the (−1)ⁿ factor is exact.
pub fn caputo_right(
    f: &RealFunction,
    x: f64,
    b: f64,
    order: FracOrder,
    spec: &QuadratureSpec,
) -> Result<f64, CaputoError> {
    if !(x < b) {
        return Err(CaputoError::Domain(format!(
            "caputo_right requires x < b, got x = {x}, b = {b}"
        )));
    }
    let sign = if order.n().is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * caputo_integral(f, x, b, order, Endpoint::Left, spec)?)
}

/// Diagnostic pairing of the α → 1⁻ and α → 0⁺ limits of the left-sided
/// derivative (n = 1) with the classical derivative and the increment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaputoLimitCheck {
    pub at_alpha_near_1: f64,
    pub classical_derivative: f64,
    pub at_alpha_near_0: f64,
    pub increment: f64,
}

pub fn caputo_limit_check(
    f: &RealFunction,
    a: f64,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<CaputoLimitCheck, CaputoError> {
    let near_1 = FracOrder::new(1, 1.0 - 1e-3)?;
    let near_0 = FracOrder::new(1, 1e-3)?;
    Ok(CaputoLimitCheck {
        at_alpha_near_1: caputo_left(f, a, x, near_1, spec)?,
        classical_derivative: f.nth_derivative_value(1, x)?,
        at_alpha_near_0: caputo_left(f, a, x, near_0, spec)?,
        increment: f.eval(x)? - f.eval(a)?,
    })
}
