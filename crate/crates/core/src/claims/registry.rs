//! The seventeen registered displays with their parameter domains, side
//! evaluators, and validity predicates.
//!
//! Several of the printed displays fail numerically (the weighted definition
//! below t = 1/2, the Jensen-type display, the bound of the complex-bracket
//! midpoint theorem at integer exponent); the registry encodes them exactly
//! as printed and reports margins honestly. Corrected or variant readings
//! are registered as extra sides, never as silent fixes.

use super::{
    lemma_lhs, lemma_rhs, require_positive_nth_derivative, Claim, ClaimError, ClaimKind,
    ComplexPolicy, EvalContext, LemmaId, ParamSpec, Side, SideValue,
};
use crate::fraccalc::FracOrder;
use crate::specfun;
use std::collections::BTreeMap;

const fn real_param(name: &'static str, lo: f64, hi: f64, default: f64) -> ParamSpec {
    ParamSpec {
        name,
        lo,
        hi,
        lo_open: false,
        hi_open: false,
        integer: false,
        default,
    }
}

const fn int_param(name: &'static str, lo: f64, hi: f64, default: f64) -> ParamSpec {
    ParamSpec {
        name,
        lo,
        hi,
        lo_open: false,
        hi_open: false,
        integer: true,
        default,
    }
}

/// p ∈ (−1, 1], the blanket exponent domain.
const fn p_param(default: f64) -> ParamSpec {
    ParamSpec {
        name: "p",
        lo: -1.0,
        hi: 1.0,
        lo_open: true,
        hi_open: false,
        integer: false,
        default,
    }
}

/// p ∈ (0, 1], the domain several derivations actually require.
const fn p_positive_param(default: f64) -> ParamSpec {
    ParamSpec {
        name: "p",
        lo: 0.0,
        hi: 1.0,
        lo_open: true,
        hi_open: false,
        integer: false,
        default,
    }
}

const fn alpha_param() -> ParamSpec {
    ParamSpec {
        name: "alpha",
        lo: 0.0,
        hi: 1.0,
        lo_open: false,
        hi_open: true,
        integer: false,
        default: 0.5,
    }
}

fn ok(params: &BTreeMap<String, f64>) -> Result<(), String> {
    let _ = params;
    Ok(())
}

fn y_less_than_x(params: &BTreeMap<String, f64>) -> Result<(), String> {
    if params["y"] < params["x"] {
        Ok(())
    } else {
        Err(format!(
            "requires y < x, got y = {}, x = {}",
            params["y"], params["x"]
        ))
    }
}

fn a_less_than_b(params: &BTreeMap<String, f64>) -> Result<(), String> {
    if params["a"] < params["b"] {
        Ok(())
    } else {
        Err(format!(
            "requires a < b, got a = {}, b = {}",
            params["a"], params["b"]
        ))
    }
}

fn order_from(ctx: &EvalContext) -> Result<FracOrder, ClaimError> {
    let n = ctx.param("n")? as u32;
    FracOrder::new(n, ctx.param("alpha")?).map_err(Into::into)
}

/// Weight |t^p − (1−t)^p|; diverges only at t = 1 with p ≤ 0.
fn abs_weight(t: f64, p: f64) -> Result<f64, ClaimError> {
    let w = (t.powf(p) - (1.0 - t).powf(p)).abs();
    if w.is_finite() {
        Ok(w)
    } else {
        Err(ClaimError::Precondition(format!(
            "|t^p - (1-t)^p| diverges at t = {t} for p = {p}"
        )))
    }
}

fn midpoint_scaled_ab(ctx: &EvalContext) -> Result<SideValue, ClaimError> {
    let (a, b, p) = (ctx.param("a")?, ctx.param("b")?, ctx.param("p")?);
    Ok(SideValue::real(
        2f64.powf(p - 1.0) * ctx.fval(0.5 * (a + b))?,
    ))
}

fn interval_mean_ab(ctx: &EvalContext) -> Result<SideValue, ClaimError> {
    let (a, b) = (ctx.param("a")?, ctx.param("b")?);
    let (integral, err) = ctx.integral_of_f(a, b)?;
    Ok(SideValue::with_error(
        integral / (b - a),
        err / (b - a),
    ))
}

/// The (1 − (−1)^{p+1}) bracket via the principal branch; real and
/// imaginary contributions of the f(b) term.
fn complex_bracket_bound(fa: f64, fb: f64, p: f64) -> Result<SideValue, ClaimError> {
    let power = specfun::principal_power(-1.0, p + 1.0)?;
    let scale = fb / (2.0 * (p + 1.0));
    Ok(SideValue {
        re: fa / (p + 2.0) + scale * (1.0 - power.re),
        im: scale * (-power.im),
        quad_error: 0.0,
    })
}

fn def2_rhs(ctx: &EvalContext) -> Result<SideValue, ClaimError> {
    let (k, x, y, p) = (
        ctx.param("k")? as u32,
        ctx.param("x")?,
        ctx.param("y")?,
        ctx.param("p")?,
    );
    let two_k = 2f64.powi(k as i32);
    let ratio = crate::convexity::dyadic_ratio(k);
    let second = (two_k * two_k - 1.0) / two_k;
    Ok(SideValue::real(
        ratio.powf(p) * ctx.fval(x)? + second.powf(p) * ctx.fval(y)?,
    ))
}

/// The printed chain argument (((2^k−1)/2^k)·x + y/2^k) / 2^k.
fn dyadic_literal_argument(k: u32, x: f64, y: f64) -> f64 {
    let two_k = 2f64.powi(k as i32);
    (crate::convexity::dyadic_ratio(k) * x + y / two_k) / two_k
}

fn lemma_lhs_side(ctx: &EvalContext, lemma: LemmaId) -> Result<SideValue, ClaimError> {
    let (x, y) = (ctx.param("x")?, ctx.param("y")?);
    let (value, err) = lemma_lhs(
        lemma,
        ctx.function()?,
        y,
        x,
        order_from(ctx)?,
        ctx.interp,
        ctx.quad,
    )?;
    Ok(SideValue::with_error(value, err))
}

fn lemma_rhs_side(ctx: &EvalContext, lemma: LemmaId) -> Result<SideValue, ClaimError> {
    let (x, y) = (ctx.param("x")?, ctx.param("y")?);
    let order = order_from(ctx)?;
    let (value, err) = lemma_rhs(
        lemma,
        ctx.function()?,
        y,
        x,
        order.p(),
        order.n(),
        ctx.quad,
    )?;
    Ok(SideValue::with_error(value, err))
}

/// Lemma-1 bracket × Caputo factor for the bound theorems, which are
/// parameterized by p directly (n = 1, α = 1 − p).
fn bound_theorem_lhs(ctx: &EvalContext) -> Result<SideValue, ClaimError> {
    let (x, y, p) = (ctx.param("x")?, ctx.param("y")?, ctx.param("p")?);
    let order = FracOrder::new(1, 1.0 - p)?;
    let (value, err) = lemma_lhs(
        LemmaId::Lem1,
        ctx.function()?,
        y,
        x,
        order,
        ctx.interp,
        ctx.quad,
    )?;
    Ok(SideValue::with_error(value, err))
}

static CLAIMS: &[Claim] = &[
    Claim {
        id: "DEF1",
        description: "pointwise membership inequality of the weighted convexity class: \
                      f(tx+(1-t)y) <= t^p f(x) + |t^p - (1-t)^p| f(y)",
        paper_anchor: "Eq. (a1), Definition 1",
        params: &[
            ParamSpec {
                name: "t",
                lo: 0.0,
                hi: 1.0,
                lo_open: true,
                hi_open: false,
                integer: false,
                default: 0.25,
            },
            real_param("x", 1.0, 1e6, 2.0),
            real_param("y", 1.0, 1e6, 1.0),
            p_param(1.0),
        ],
        sides: &[
            Side {
                name: "combination",
                eval: |ctx: &EvalContext| {
                    let (t, x, y) = (ctx.param("t")?, ctx.param("x")?, ctx.param("y")?);
                    Ok(SideValue::real(ctx.fval(t * x + (1.0 - t) * y)?))
                },
            },
            Side {
                name: "weighted_bound",
                eval: |ctx: &EvalContext| {
                    let (t, x, y, p) = (
                        ctx.param("t")?,
                        ctx.param("x")?,
                        ctx.param("y")?,
                        ctx.param("p")?,
                    );
                    let w2 = abs_weight(t, p)?;
                    Ok(SideValue::real(
                        t.powf(p) * ctx.fval(x)? + w2 * ctx.fval(y)?,
                    ))
                },
            },
        ],
        comparisons: &[(0, 1)],
        validity: y_less_than_x,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: false,
    },
    Claim {
        id: "EQ-A12",
        description: "weakened membership bound on the upper half of t: \
                      f(tx+(1-t)y) <= t^p (f(x) + f(y))",
        paper_anchor: "Eq. (a12)",
        params: &[
            real_param("t", 0.5, 1.0, 0.75),
            real_param("x", 1.0, 1e6, 2.0),
            real_param("y", 1.0, 1e6, 1.0),
            p_param(1.0),
        ],
        sides: &[
            Side {
                name: "combination",
                eval: |ctx: &EvalContext| {
                    let (t, x, y) = (ctx.param("t")?, ctx.param("x")?, ctx.param("y")?);
                    Ok(SideValue::real(ctx.fval(t * x + (1.0 - t) * y)?))
                },
            },
            Side {
                name: "doubled_bound",
                eval: |ctx: &EvalContext| {
                    let (t, x, y, p) = (
                        ctx.param("t")?,
                        ctx.param("x")?,
                        ctx.param("y")?,
                        ctx.param("p")?,
                    );
                    Ok(SideValue::real(
                        t.powf(p) * (ctx.fval(x)? + ctx.fval(y)?),
                    ))
                },
            },
        ],
        comparisons: &[(0, 1)],
        validity: y_less_than_x,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: false,
    },
    Claim {
        id: "MIDPOINT-D",
        description: "midpoint instance of the weakened bound: \
                      f((x+y)/2) <= (1/2)^p (f(x) + f(y))",
        paper_anchor: "interpretation (d)",
        params: &[
            real_param("x", 1.0, 1e6, 2.0),
            real_param("y", 1.0, 1e6, 1.0),
            p_param(0.5),
        ],
        sides: &[
            Side {
                name: "midpoint",
                eval: |ctx: &EvalContext| {
                    let (x, y) = (ctx.param("x")?, ctx.param("y")?);
                    Ok(SideValue::real(ctx.fval(0.5 * (x + y))?))
                },
            },
            Side {
                name: "halved_sum",
                eval: |ctx: &EvalContext| {
                    let (x, y, p) = (ctx.param("x")?, ctx.param("y")?, ctx.param("p")?);
                    Ok(SideValue::real(
                        0.5f64.powf(p) * (ctx.fval(x)? + ctx.fval(y)?),
                    ))
                },
            },
        ],
        comparisons: &[(0, 1)],
        validity: y_less_than_x,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: false,
    },
    Claim {
        id: "DYADIC",
        description: "dyadic chain instance: f of the printed argument against \
                      both the symmetric and the loosened dyadic bound",
        paper_anchor: "Eq. (a17) and Eq. (a18)",
        params: &[
            int_param("k", 1.0, 30.0, 1.0),
            real_param("x", 1.0, 1e6, 4.0),
            real_param("y", 1.0, 1e6, 2.0),
            p_param(1.0),
        ],
        sides: &[
            Side {
                name: "chain_argument",
                eval: |ctx: &EvalContext| {
                    let (k, x, y) = (ctx.param("k")? as u32, ctx.param("x")?, ctx.param("y")?);
                    Ok(SideValue::real(ctx.fval(dyadic_literal_argument(k, x, y))?))
                },
            },
            Side {
                name: "symmetric_bound",
                eval: |ctx: &EvalContext| {
                    let (k, x, y, p) = (
                        ctx.param("k")? as u32,
                        ctx.param("x")?,
                        ctx.param("y")?,
                        ctx.param("p")?,
                    );
                    let coefficient = crate::convexity::dyadic_ratio(k).powf(p);
                    Ok(SideValue::real(
                        coefficient * (ctx.fval(x)? + ctx.fval(y)?),
                    ))
                },
            },
            Side {
                name: "loosened_bound",
                eval: def2_rhs,
            },
        ],
        comparisons: &[(0, 1), (0, 2)],
        validity: y_less_than_x,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: false,
    },
    Claim {
        id: "INT-H",
        description: "integrated form of the weakened bound: interval mean of f \
                      against (f(x)+f(y))/(p+1)",
        paper_anchor: "interpretation (h)",
        params: &[
            real_param("x", 1.0, 1e6, 2.0),
            real_param("y", 1.0, 1e6, 1.0),
            p_param(0.5),
        ],
        sides: &[
            Side {
                name: "interval_mean",
                eval: |ctx: &EvalContext| {
                    let (x, y) = (ctx.param("x")?, ctx.param("y")?);
                    let (integral, err) = ctx.integral_of_f(y, x)?;
                    Ok(SideValue::with_error(integral / (x - y), err / (x - y)))
                },
            },
            Side {
                name: "scaled_endpoint_sum",
                eval: |ctx: &EvalContext| {
                    let (x, y, p) = (ctx.param("x")?, ctx.param("y")?, ctx.param("p")?);
                    Ok(SideValue::real(
                        (ctx.fval(x)? + ctx.fval(y)?) / (p + 1.0),
                    ))
                },
            },
        ],
        comparisons: &[(0, 1)],
        validity: y_less_than_x,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: false,
    },
    Claim {
        id: "NONNEG",
        description: "nonnegativity consequence at t = 1: 0 <= f(y)",
        paper_anchor: "interpretation (i), t = 1",
        params: &[real_param("y", 1.0, 1e6, 1.5)],
        sides: &[
            Side {
                name: "zero",
                eval: |_ctx: &EvalContext| Ok(SideValue::real(0.0)),
            },
            Side {
                name: "value_at_y",
                eval: |ctx: &EvalContext| Ok(SideValue::real(ctx.fval(ctx.param("y")?)?)),
            },
        ],
        comparisons: &[(0, 1)],
        validity: ok,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: false,
    },
    Claim {
        id: "DEF2",
        description: "dyadic-weight class membership, literal and corrected \
                      readings of the doubly divided argument side by side",
        paper_anchor: "Definition 2",
        params: &[
            int_param("k", 1.0, 30.0, 1.0),
            real_param("x", 1.0, 1e6, 4.0),
            real_param("y", 1.0, 1e6, 2.0),
            p_param(1.0),
        ],
        sides: &[
            Side {
                name: "literal_argument",
                eval: |ctx: &EvalContext| {
                    let (k, x, y) = (ctx.param("k")? as u32, ctx.param("x")?, ctx.param("y")?);
                    Ok(SideValue::real(ctx.fval(dyadic_literal_argument(k, x, y))?))
                },
            },
            Side {
                name: "corrected_argument",
                eval: |ctx: &EvalContext| {
                    let (k, x, y) = (ctx.param("k")? as u32, ctx.param("x")?, ctx.param("y")?);
                    let two_k = 2f64.powi(k as i32);
                    let argument = crate::convexity::dyadic_ratio(k) * x + y / two_k;
                    Ok(SideValue::real(ctx.fval(argument)?))
                },
            },
            Side {
                name: "weighted_bound",
                eval: def2_rhs,
            },
        ],
        comparisons: &[(0, 2), (1, 2)],
        validity: y_less_than_x,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: false,
    },
    Claim {
        id: "HH-THM1",
        description: "generalized midpoint-mean-endpoint chain: \
                      2^(p-1) f((a+b)/2) <= mean of f on [a,b] <= (f(a)+f(b))/(p+1)",
        paper_anchor: "Eq. (a2), Theorem 1",
        params: &[
            real_param("a", 1.0, 1e6, 1.0),
            real_param("b", 1.0, 1e6, 2.0),
            p_param(1.0),
        ],
        sides: &[
            Side {
                name: "midpoint_scaled",
                eval: midpoint_scaled_ab,
            },
            Side {
                name: "interval_mean",
                eval: interval_mean_ab,
            },
            Side {
                name: "endpoint_scaled",
                eval: |ctx: &EvalContext| {
                    let (a, b, p) = (ctx.param("a")?, ctx.param("b")?, ctx.param("p")?);
                    Ok(SideValue::real(
                        (ctx.fval(a)? + ctx.fval(b)?) / (p + 1.0),
                    ))
                },
            },
        ],
        comparisons: &[(0, 1), (1, 2)],
        validity: a_less_than_b,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: false,
    },
    Claim {
        id: "COR1",
        description: "the chain with p = 1/k + 1/s - 1; k = s = 1 reduces to \
                      the classical midpoint-mean-endpoint inequality",
        paper_anchor: "Eq. (a10), Corollary 1",
        params: &[
            int_param("k", 1.0, 12.0, 1.0),
            int_param("s", 1.0, 12.0, 1.0),
            real_param("a", 1.0, 1e6, 1.0),
            real_param("b", 1.0, 1e6, 2.0),
        ],
        sides: &[
            Side {
                name: "midpoint_scaled",
                eval: |ctx: &EvalContext| {
                    let (k, s) = (ctx.param("k")?, ctx.param("s")?);
                    let (a, b) = (ctx.param("a")?, ctx.param("b")?);
                    let exponent = 1.0 / k + 1.0 / s - 2.0;
                    Ok(SideValue::real(
                        2f64.powf(exponent) * ctx.fval(0.5 * (a + b))?,
                    ))
                },
            },
            Side {
                name: "interval_mean",
                eval: interval_mean_ab,
            },
            Side {
                name: "endpoint_scaled",
                eval: |ctx: &EvalContext| {
                    let (k, s) = (ctx.param("k")?, ctx.param("s")?);
                    let (a, b) = (ctx.param("a")?, ctx.param("b")?);
                    Ok(SideValue::real(
                        (ctx.fval(a)? + ctx.fval(b)?) / (1.0 / k + 1.0 / s),
                    ))
                },
            },
        ],
        comparisons: &[(0, 1), (1, 2)],
        validity: a_less_than_b,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: false,
    },
    Claim {
        id: "JENSEN-TYPE",
        description: "the printed midpoint-vs-averaged-endpoints display; a \
                      nonnegative term was dropped in its derivation and the \
                      display fails for ordinary convex functions",
        paper_anchor: "unlabeled display after Corollary 1",
        params: &[
            real_param("a", 1.0, 1e6, 1.0),
            real_param("b", 1.0, 1e6, 2.0),
            p_param(1.0),
        ],
        sides: &[
            Side {
                name: "midpoint_scaled",
                eval: midpoint_scaled_ab,
            },
            Side {
                name: "averaged_endpoints",
                eval: |ctx: &EvalContext| {
                    let (a, b, p) = (ctx.param("a")?, ctx.param("b")?, ctx.param("p")?);
                    Ok(SideValue::real(
                        (ctx.fval(a)? + ctx.fval(b)?) / (2.0 * (p + 1.0)),
                    ))
                },
            },
        ],
        comparisons: &[(0, 1)],
        validity: a_less_than_b,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: false,
    },
    Claim {
        id: "THM2",
        description: "midpoint bound with the principal-branch bracket \
                      1 - (-1)^(p+1); the statement's i^(2(p+1)) form is a \
                      variant side",
        paper_anchor: "Eq. (a4), Theorem 2",
        params: &[
            real_param("a", 1.0, 1e6, 1.0),
            real_param("b", 1.0, 1e6, 2.0),
            p_param(0.5),
        ],
        sides: &[
            Side {
                name: "midpoint_scaled",
                eval: midpoint_scaled_ab,
            },
            Side {
                name: "bracket_bound",
                eval: |ctx: &EvalContext| {
                    let (a, b, p) = (ctx.param("a")?, ctx.param("b")?, ctx.param("p")?);
                    complex_bracket_bound(ctx.fval(a)?, ctx.fval(b)?, p)
                },
            },
            Side {
                name: "bracket_bound_statement_form",
                eval: |ctx: &EvalContext| {
                    // i^(2(p+1)) computed as the complex exponential
                    // exp(i·pi·(p+1)); agrees with the principal-branch
                    // (-1)^(p+1) route up to rounding
                    let (a, b, p) = (ctx.param("a")?, ctx.param("b")?, ctx.param("p")?);
                    let (fa, fb) = (ctx.fval(a)?, ctx.fval(b)?);
                    let angle = std::f64::consts::PI * (p + 1.0);
                    let scale = fb / (2.0 * (p + 1.0));
                    Ok(SideValue {
                        re: fa / (p + 2.0) + scale * (1.0 - angle.cos()),
                        im: scale * (-angle.sin()),
                        quad_error: 0.0,
                    })
                },
            },
        ],
        comparisons: &[(0, 1)],
        validity: a_less_than_b,
        complex_policy: ComplexPolicy::CompareRealPart,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: false,
    },
    Claim {
        id: "LEM1-ID",
        description: "first integral identity: printed bracket times the \
                      right-sided Caputo factor against the t(1-t^p) moment \
                      integral; residual reported per interpretation",
        paper_anchor: "Lemma 1",
        params: &[
            real_param("x", 1.0, 1e6, 2.0),
            real_param("y", 1.0, 1e6, 1.0),
            alpha_param(),
            int_param("n", 1.0, 3.0, 1.0),
        ],
        sides: &[
            Side {
                name: "lhs",
                eval: |ctx: &EvalContext| lemma_lhs_side(ctx, LemmaId::Lem1),
            },
            Side {
                name: "rhs",
                eval: |ctx: &EvalContext| lemma_rhs_side(ctx, LemmaId::Lem1),
            },
        ],
        comparisons: &[(0, 1)],
        validity: y_less_than_x,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Identity,
        precondition: Some(|ctx: &EvalContext| {
            let n = ctx.param("n")? as u32;
            require_positive_nth_derivative(
                ctx.function()?,
                n,
                ctx.param("y")?,
                ctx.param("x")?,
            )
        }),
        uses_interpretation: true,
    },
    Claim {
        id: "LEM2-ID",
        description: "second integral identity: printed bracket times the \
                      right-sided Caputo factor against the t^p(1-t) moment \
                      integral; residual reported per interpretation",
        paper_anchor: "Lemma 2, Eq. (a7)",
        params: &[
            real_param("x", 1.0, 1e6, 2.0),
            real_param("y", 1.0, 1e6, 1.0),
            alpha_param(),
            int_param("n", 1.0, 3.0, 1.0),
        ],
        sides: &[
            Side {
                name: "lhs",
                eval: |ctx: &EvalContext| lemma_lhs_side(ctx, LemmaId::Lem2),
            },
            Side {
                name: "rhs",
                eval: |ctx: &EvalContext| lemma_rhs_side(ctx, LemmaId::Lem2),
            },
        ],
        comparisons: &[(0, 1)],
        validity: y_less_than_x,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Identity,
        precondition: None,
        uses_interpretation: true,
    },
    Claim {
        id: "COR2-ORDER",
        description: "ordering of the two lemma integrals for positive f': \
                      the t(1-t^p) integral never exceeds the t^p(1-t) one",
        paper_anchor: "Eq. (a16), Corollary 2",
        params: &[
            real_param("x", 1.0, 1e6, 2.0),
            real_param("y", 1.0, 1e6, 1.0),
            p_positive_param(0.5),
        ],
        sides: &[
            Side {
                name: "lem1_integral",
                eval: |ctx: &EvalContext| {
                    let (x, y, p) = (ctx.param("x")?, ctx.param("y")?, ctx.param("p")?);
                    let (value, err) =
                        lemma_rhs(LemmaId::Lem1, ctx.function()?, y, x, p, 1, ctx.quad)?;
                    Ok(SideValue::with_error(value, err))
                },
            },
            Side {
                name: "lem2_integral",
                eval: |ctx: &EvalContext| {
                    let (x, y, p) = (ctx.param("x")?, ctx.param("y")?, ctx.param("p")?);
                    let (value, err) =
                        lemma_rhs(LemmaId::Lem2, ctx.function()?, y, x, p, 1, ctx.quad)?;
                    Ok(SideValue::with_error(value, err))
                },
            },
        ],
        comparisons: &[(0, 1)],
        validity: y_less_than_x,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: Some(|ctx: &EvalContext| {
            require_positive_nth_derivative(
                ctx.function()?,
                1,
                ctx.param("y")?,
                ctx.param("x")?,
            )
        }),
        uses_interpretation: false,
    },
    Claim {
        id: "THM3-BOUND",
        description: "modulus of the bracket-Caputo term against the printed \
                      Beta-function bound (principal branch for the \
                      (-1)^(p+1) coefficient)",
        paper_anchor: "Eq. (a9), Theorem 3",
        params: &[
            real_param("x", 1.0, 1e6, 2.0),
            real_param("y", 1.0, 1e6, 1.0),
            p_positive_param(0.5),
        ],
        sides: &[
            Side {
                name: "caputo_bracket_abs",
                eval: |ctx: &EvalContext| {
                    let inner = bound_theorem_lhs(ctx)?;
                    Ok(SideValue::with_error(inner.re.abs(), inner.quad_error))
                },
            },
            Side {
                name: "convexity_integral",
                eval: |ctx: &EvalContext| {
                    // the derivation's middle term, with f as printed
                    let (x, y, p) = (ctx.param("x")?, ctx.param("y")?, ctx.param("p")?);
                    let (value, err) = ctx.unit_integral(|t| {
                        Ok(t * (1.0 - t.powf(p))
                            * ctx.fval(t * x + (1.0 - t) * y)?.abs())
                    })?;
                    Ok(SideValue::with_error(value, err))
                },
            },
            Side {
                name: "beta_bound",
                eval: |ctx: &EvalContext| {
                    let (x, y, p) = (ctx.param("x")?, ctx.param("y")?, ctx.param("p")?);
                    let fx = ctx.fval(x)?.abs();
                    let fy = ctx.fval(y)?.abs();
                    let beta_a = specfun::beta(p + 1.0, 2.0)?;
                    let beta_b = specfun::beta(p + 1.0, p + 2.0)?;
                    let power = specfun::principal_power(-1.0, p + 1.0)?;
                    let first = fx * (1.0 / (p + 2.0) - 1.0 / (2.0 * (p + 1.0)));
                    let second = fy / 4.0 * (beta_a - beta_b / 2f64.powf(p + 2.0));
                    let third_scale = fy / 4.0 * (1.0 - 2f64.powf(-(p + 1.0))) * beta_b;
                    Ok(SideValue {
                        re: first + second + third_scale * power.re,
                        im: third_scale * power.im,
                        quad_error: 0.0,
                    })
                },
            },
        ],
        comparisons: &[(0, 2)],
        validity: y_less_than_x,
        complex_policy: ComplexPolicy::CompareRealPart,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: true,
    },
    Claim {
        id: "THM4-BOUND",
        description: "bracket-Caputo term against the Beta bound built from \
                      |f'| at the endpoints",
        paper_anchor: "Theorem 4",
        params: &[
            real_param("x", 1.0, 1e6, 2.0),
            real_param("y", 1.0, 1e6, 1.0),
            p_positive_param(0.5),
        ],
        sides: &[
            Side {
                name: "caputo_bracket",
                eval: bound_theorem_lhs,
            },
            Side {
                name: "derivative_beta_bound",
                eval: |ctx: &EvalContext| {
                    let (x, y, p) = (ctx.param("x")?, ctx.param("y")?, ctx.param("p")?);
                    let f = ctx.function()?;
                    let dy = f.nth_derivative_value(1, y)?.abs();
                    let dx = f.nth_derivative_value(1, x)?.abs();
                    let beta_a = specfun::beta(p + 1.0, p + 2.0)?;
                    let beta_b = specfun::beta(2.0, 2.0 * p + 1.0)?;
                    Ok(SideValue::real(dy * (beta_a + beta_b) + dx * beta_b))
                },
            },
        ],
        comparisons: &[(0, 1)],
        validity: y_less_than_x,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: true,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: true,
    },
    Claim {
        id: "THM5-ELEM",
        description: "elementary closed-form inequality 1/2 <= (p+3)/((p+1)(p+2))",
        paper_anchor: "Theorem 5",
        params: &[p_param(1.0)],
        sides: &[
            Side {
                name: "half",
                eval: |_ctx: &EvalContext| Ok(SideValue::real(0.5)),
            },
            Side {
                name: "elementary_form",
                eval: |ctx: &EvalContext| {
                    let p = ctx.param("p")?;
                    Ok(SideValue::real((p + 3.0) / ((p + 1.0) * (p + 2.0))))
                },
            },
        ],
        comparisons: &[(0, 1)],
        validity: ok,
        complex_policy: ComplexPolicy::RejectImaginary,
        requires_function: false,
        kind: ClaimKind::Inequality,
        precondition: None,
        uses_interpretation: false,
    },
];

pub(super) fn all() -> &'static [Claim] {
    CLAIMS
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn registry_has_seventeen_claims() {
        assert_eq!(all().len(), 17);
    }

    #[test]
    fn ids_are_unique_and_anchored() {
        let mut seen = BTreeSet::new();
        for claim in all() {
            assert!(seen.insert(claim.id), "duplicate id {}", claim.id);
            assert!(!claim.paper_anchor.is_empty(), "{} lacks an anchor", claim.id);
            assert!(!claim.description.is_empty());
        }
    }

    #[test]
    fn expected_ids_present() {
        let expected = [
            "DEF1",
            "EQ-A12",
            "MIDPOINT-D",
            "DYADIC",
            "INT-H",
            "NONNEG",
            "DEF2",
            "HH-THM1",
            "COR1",
            "JENSEN-TYPE",
            "THM2",
            "LEM1-ID",
            "LEM2-ID",
            "COR2-ORDER",
            "THM3-BOUND",
            "THM4-BOUND",
            "THM5-ELEM",
        ];
        for id in expected {
            assert!(
                all().iter().any(|c| c.id == id),
                "{id} missing from the registry"
            );
        }
    }

    #[test]
    fn defaults_satisfy_validity() {
        for claim in all() {
            let defaults = claim.default_params();
            claim
                .validate_params(&defaults)
                .unwrap_or_else(|e| panic!("{} defaults invalid: {e}", claim.id));
        }
    }
}
