//! Symbolic first derivative with constant folding.
//!
//! Simplification is deliberately limited to folding constant subtrees and
//! dropping additive/multiplicative identities; anything past that is not
//! needed by the function corpus and would complicate round-trip printing.

use super::{BinaryOp, DiffError, Expr, UnaryOp};

fn literal(v: f64) -> Expr {
    Expr::Literal(v)
}

fn as_literal(e: &Expr) -> Option<f64> {
    match e {
        Expr::Literal(v) => Some(*v),
        _ => None,
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (as_literal(&a), as_literal(&b)) {
        (Some(x), Some(y)) if (x + y).is_finite() => literal(x + y),
        (Some(0.0), _) => b,
        (_, Some(0.0)) => a,
        _ => Expr::Binary(BinaryOp::Add, Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (as_literal(&a), as_literal(&b)) {
        (Some(x), Some(y)) if (x - y).is_finite() => literal(x - y),
        (_, Some(0.0)) => a,
        _ => Expr::Binary(BinaryOp::Sub, Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (as_literal(&a), as_literal(&b)) {
        (Some(x), Some(y)) if (x * y).is_finite() => literal(x * y),
        (Some(0.0), _) | (_, Some(0.0)) => literal(0.0),
        (Some(1.0), _) => b,
        (_, Some(1.0)) => a,
        _ => Expr::Binary(BinaryOp::Mul, Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (as_literal(&a), as_literal(&b)) {
        (Some(x), Some(y)) if y != 0.0 && (x / y).is_finite() => literal(x / y),
        (Some(0.0), _) => literal(0.0),
        (_, Some(1.0)) => a,
        _ => Expr::Binary(BinaryOp::Div, Box::new(a), Box::new(b)),
    }
}

fn pow(base: Expr, exponent: Expr) -> Expr {
    match (as_literal(&base), as_literal(&exponent)) {
        // fold only when the real power is well-defined
        (Some(x), Some(y))
            if (x > 0.0 || (x != 0.0 && y.fract() == 0.0) || (x == 0.0 && y > 0.0))
                && x.powf(y).is_finite() =>
        {
            literal(x.powf(y))
        }
        (_, Some(1.0)) => base,
        (_, Some(0.0)) => literal(1.0),
        _ => Expr::Binary(BinaryOp::Pow, Box::new(base), Box::new(exponent)),
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Literal(v) => literal(-v),
        Expr::Unary(UnaryOp::Neg, inner) => *inner,
        other => Expr::Unary(UnaryOp::Neg, Box::new(other)),
    }
}

fn unary(op: UnaryOp, a: Expr) -> Expr {
    Expr::Unary(op, Box::new(a))
}

pub(super) fn differentiate(e: &Expr) -> Result<Expr, DiffError> {
    Ok(match e {
        Expr::Literal(_) => literal(0.0),
        Expr::Var => literal(1.0),
        Expr::Unary(op, u) => {
            let du = differentiate(u)?;
            match op {
                UnaryOp::Neg => neg(du),
                UnaryOp::Exp => mul(unary(UnaryOp::Exp, (**u).clone()), du),
                UnaryOp::Ln => div(du, (**u).clone()),
                UnaryOp::Sqrt => div(du, mul(literal(2.0), unary(UnaryOp::Sqrt, (**u).clone()))),
                UnaryOp::Abs => return Err(DiffError::NonDifferentiable { node: "abs" }),
            }
        }
        Expr::Binary(op, u, v) => {
            let u = (**u).clone();
            let v = (**v).clone();
            match op {
                BinaryOp::Add => add(differentiate(&u)?, differentiate(&v)?),
                BinaryOp::Sub => sub(differentiate(&u)?, differentiate(&v)?),
                BinaryOp::Mul => {
                    let du = differentiate(&u)?;
                    let dv = differentiate(&v)?;
                    add(mul(du, v.clone()), mul(u, dv))
                }
                BinaryOp::Div => {
                    let du = differentiate(&u)?;
                    let dv = differentiate(&v)?;
                    div(
                        sub(mul(du, v.clone()), mul(u, dv)),
                        pow(v, literal(2.0)),
                    )
                }
                BinaryOp::Pow => {
                    let du = differentiate(&u)?;
                    match (as_literal(&u), as_literal(&v)) {
                        // u^c: power rule
                        (_, Some(c)) => mul(
                            mul(literal(c), pow(u, literal(c - 1.0))),
                            du,
                        ),
                        // c^v: c^v · ln(c) · v'
                        (Some(_), None) => {
                            let dv = differentiate(&v)?;
                            mul(
                                mul(pow(u.clone(), v), unary(UnaryOp::Ln, u)),
                                dv,
                            )
                        }
                        // u^v: u^v · (v'·ln u + v·u'/u)
                        (None, None) => {
                            let dv = differentiate(&v)?;
                            mul(
                                pow(u.clone(), v.clone()),
                                add(
                                    mul(dv, unary(UnaryOp::Ln, u.clone())),
                                    mul(v, div(du, u)),
                                ),
                            )
                        }
                    }
                }
            }
        }
    })
}
