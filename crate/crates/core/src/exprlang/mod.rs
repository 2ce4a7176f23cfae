//! A small expression language for user-supplied test functions: parsing,
//! evaluation, and symbolic first-derivative construction.
//!
//! The grammar is a public, versioned contract (it appears in CLI flags and
//! claim config files):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' factor)?              -- '^' is right-associative
//! atom   := number | 'x' | func '(' expr ')' | '(' expr ')' | '-' atom
//! func   := exp | ln | sqrt | abs
//! ```
//!
//! A bare unary minus is rejected in either operand position of `^`:
//! write `(-x)^2` or `x^(-2)`. Number literals are decimal with an optional
//! exponent; no hex, no locale. The single variable is `x`.

mod derivative;
mod parser;

pub use parser::{parse, ParseError};

use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Expression tree over the single variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Literal(f64),
    Var,
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    #[error("division by zero at x = {at}")]
    DivisionByZero { at: f64 },
    #[error("ln of non-positive value {arg} at x = {at}")]
    LogDomain { arg: f64, at: f64 },
    #[error("sqrt of negative value {arg} at x = {at}")]
    SqrtDomain { arg: f64, at: f64 },
    #[error("{base}^{exponent} is not a real value at x = {at}")]
    PowDomain { base: f64, exponent: f64, at: f64 },
    #[error("expression evaluated to a non-finite value at x = {at}")]
    NonFinite { at: f64 },
    #[error("x = {x} lies outside the declared domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum DiffError {
    #[error("'{node}' is not differentiable")]
    NonDifferentiable { node: &'static str },
}

impl Expr {
    /// Evaluates the expression at the given point with standard real
    /// semantics. ln/sqrt of negatives, division by zero, and negative bases
    /// under non-integer powers are evaluation errors, never silent NaN.
    pub fn evaluate(&self, x: f64) -> Result<f64, EvalError> {
        let value = self.eval_inner(x)?;
        if value.is_finite() {
            Ok(value)
        } else {
            Err(EvalError::NonFinite { at: x })
        }
    }

    fn eval_inner(&self, x: f64) -> Result<f64, EvalError> {
        match self {
            Expr::Literal(v) => Ok(*v),
            Expr::Var => Ok(x),
            Expr::Unary(op, operand) => {
                let v = operand.eval_inner(x)?;
                match op {
                    UnaryOp::Neg => Ok(-v),
                    UnaryOp::Exp => Ok(v.exp()),
                    UnaryOp::Ln => {
                        if v <= 0.0 {
                            Err(EvalError::LogDomain { arg: v, at: x })
                        } else {
                            Ok(v.ln())
                        }
                    }
                    UnaryOp::Sqrt => {
                        if v < 0.0 {
                            Err(EvalError::SqrtDomain { arg: v, at: x })
                        } else {
                            Ok(v.sqrt())
                        }
                    }
                    UnaryOp::Abs => Ok(v.abs()),
                }
            }
            Expr::Binary(op, lhs, rhs) => {
                let l = lhs.eval_inner(x)?;
                let r = rhs.eval_inner(x)?;
                match op {
                    BinaryOp::Add => Ok(l + r),
                    BinaryOp::Sub => Ok(l - r),
                    BinaryOp::Mul => Ok(l * r),
                    BinaryOp::Div => {
                        if r == 0.0 {
                            Err(EvalError::DivisionByZero { at: x })
                        } else {
                            Ok(l / r)
                        }
                    }
                    BinaryOp::Pow => {
                        if l < 0.0 && r.fract() != 0.0 {
                            return Err(EvalError::PowDomain {
                                base: l,
                                exponent: r,
                                at: x,
                            });
                        }
                        if l == 0.0 && r < 0.0 {
                            return Err(EvalError::PowDomain {
                                base: l,
                                exponent: r,
                                at: x,
                            });
                        }
                        Ok(l.powf(r))
                    }
                }
            }
        }
    }

    /// Symbolic first derivative with constant subtrees folded.
    ///
    /// `abs` is parseable (Theorem-style claims apply |·| outside the user
    /// function) but not differentiable; hitting it is an error naming the
    /// node.
    pub fn differentiate(&self) -> Result<Expr, DiffError> {
        derivative::differentiate(self)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinaryOp::Add | BinaryOp::Sub, _, _) => 1,
            Expr::Binary(BinaryOp::Mul | BinaryOp::Div, _, _) => 2,
            Expr::Unary(UnaryOp::Neg, _) => 3,
            // a negative literal prints with a leading '-', so it needs the
            // same parenthesization as a bare unary minus (e.g. next to '^')
            Expr::Literal(v) if *v < 0.0 => 3,
            Expr::Binary(BinaryOp::Pow, _, _) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min_prec {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Literal(v) => write!(f, "{v}"),
            Expr::Var => write!(f, "x"),
            Expr::Unary(UnaryOp::Neg, operand) => {
                write!(f, "-")?;
                operand.fmt_prec(f, 5)
            }
            Expr::Unary(op, operand) => {
                let name = match op {
                    UnaryOp::Exp => "exp",
                    UnaryOp::Ln => "ln",
                    UnaryOp::Sqrt => "sqrt",
                    UnaryOp::Abs => "abs",
                    UnaryOp::Neg => unreachable!(),
                };
                write!(f, "{name}(")?;
                operand.fmt_prec(f, 0)?;
                write!(f, ")")
            }
            Expr::Binary(op, lhs, rhs) => {
                // left-associative operators need the right operand one
                // level tighter so nesting survives the reparse
                let (symbol, lp, rp) = match op {
                    BinaryOp::Add => (" + ", 1, 2),
                    BinaryOp::Sub => (" - ", 1, 2),
                    BinaryOp::Mul => (" * ", 2, 3),
                    BinaryOp::Div => (" / ", 2, 3),
                    // the grammar rejects bare '-' around '^', so both
                    // operands print at atom level
                    BinaryOp::Pow => ("^", 5, 5),
                };
                lhs.fmt_prec(f, lp)?;
                write!(f, "{symbol}")?;
                rhs.fmt_prec(f, rp)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// An evaluable scalar function with a declared domain interval and access
/// to integer-order derivatives.
///
/// The symbolic first derivative is built at construction when every node
/// supports it; otherwise derivative values fall back to central finite
/// differences with step h = ε^(1/3)·max(1, |x|) (one-sided at the domain
/// edges).
#[derive(Debug, Clone)]
pub struct RealFunction {
    expr: Expr,
    lo: f64,
    hi: f64,
    derivative_expr: Option<Expr>,
    source: String,
}

impl RealFunction {
    pub fn parse(source: &str, lo: f64, hi: f64) -> Result<Self, ParseError> {
        let expr = parse(source)?;
        Ok(Self::from_expr(expr, lo, hi, source.to_string()))
    }

    pub fn from_expr(expr: Expr, lo: f64, hi: f64, source: String) -> Self {
        assert!(lo < hi, "domain [{lo}, {hi}] is empty");
        let derivative_expr = expr.differentiate().ok();
        RealFunction {
            expr,
            lo,
            hi,
            derivative_expr,
            source,
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    // Tiny slack so quadrature nodes and difference probes that land within
    // rounding distance of the boundary stay evaluable.
    fn domain_slack(&self) -> f64 {
        1e-9 * self.lo.abs().max(self.hi.abs()).max(1.0)
    }

    pub fn contains(&self, x: f64) -> bool {
        let slack = self.domain_slack();
        x >= self.lo - slack && x <= self.hi + slack
    }

    /// Evaluates f(x), checking the declared domain first.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        if !self.contains(x) {
            return Err(EvalError::OutsideDomain {
                x,
                lo: self.lo,
                hi: self.hi,
            });
        }
        self.expr.evaluate(x)
    }

    /// Whether a full symbolic derivative chain of order n exists.
    pub fn has_symbolic_derivative(&self, n: u32) -> bool {
        let mut current = self.expr.clone();
        for _ in 0..n {
            match current.differentiate() {
                Ok(d) => current = d,
                Err(_) => return false,
            }
        }
        true
    }

    /// Value of the n-th derivative at x: symbolic when the whole chain
    /// differentiates, central finite differences for the levels that do not.
    pub fn nth_derivative_value(&self, n: u32, x: f64) -> Result<f64, EvalError> {
        if !self.contains(x) {
            return Err(EvalError::OutsideDomain {
                x,
                lo: self.lo,
                hi: self.hi,
            });
        }
        if n == 0 {
            return self.expr.evaluate(x);
        }
        let mut chain = self.expr.clone();
        let mut symbolic_levels = 0;
        for _ in 0..n {
            match chain.differentiate() {
                Ok(d) => {
                    chain = d;
                    symbolic_levels += 1;
                }
                Err(_) => break,
            }
        }
        self.fd_value(&chain, n - symbolic_levels, x)
    }

    fn fd_value(&self, base: &Expr, levels: u32, x: f64) -> Result<f64, EvalError> {
        if levels == 0 {
            return base.evaluate(x);
        }
        let h = f64::EPSILON.cbrt() * x.abs().max(1.0);
        let up = x + h;
        let down = x - h;
        if self.contains(up) && self.contains(down) {
            let f_up = self.fd_value(base, levels - 1, up)?;
            let f_down = self.fd_value(base, levels - 1, down)?;
            Ok((f_up - f_down) / (2.0 * h))
        } else if self.contains(up) {
            let f_up = self.fd_value(base, levels - 1, up)?;
            let f_here = self.fd_value(base, levels - 1, x)?;
            Ok((f_up - f_here) / h)
        } else {
            let f_here = self.fd_value(base, levels - 1, x)?;
            let f_down = self.fd_value(base, levels - 1, down)?;
            Ok((f_here - f_down) / h)
        }
    }

    /// The cached symbolic first derivative, when one exists.
    pub fn derivative_expr(&self) -> Option<&Expr> {
        self.derivative_expr.as_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn evaluate_basic_expressions() {
        assert_eq!(parse("x^2").unwrap().evaluate(1.5).unwrap(), 2.25);
        assert_eq!(parse("ln(x)").unwrap().evaluate(1.0).unwrap(), 0.0);
        assert_relative_eq!(
            parse("exp(x) + 1").unwrap().evaluate(0.0).unwrap(),
            2.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let e = parse("x/(x - 1)").unwrap();
        assert!(matches!(
            e.evaluate(1.0),
            Err(EvalError::DivisionByZero { at }) if at == 1.0
        ));
    }

    #[test]
    fn domain_violations_are_errors_not_nan() {
        assert!(matches!(
            parse("ln(x)").unwrap().evaluate(-2.0),
            Err(EvalError::LogDomain { .. })
        ));
        assert!(matches!(
            parse("sqrt(x)").unwrap().evaluate(-1.0),
            Err(EvalError::SqrtDomain { .. })
        ));
        assert!(matches!(
            parse("x^0.5").unwrap().evaluate(-1.0),
            Err(EvalError::PowDomain { .. })
        ));
        assert!(matches!(
            parse("exp(x)").unwrap().evaluate(1e9),
            Err(EvalError::NonFinite { .. })
        ));
    }

    #[test]
    fn real_function_checks_domain() {
        let f = RealFunction::parse("x^2", 1.0, 2.0).unwrap();
        assert_eq!(f.eval(1.5).unwrap(), 2.25);
        assert!(matches!(
            f.eval(0.5),
            Err(EvalError::OutsideDomain { .. })
        ));
    }

    #[test]
    fn nth_derivative_symbolic_chain() {
        let f = RealFunction::parse("x^2", 0.0, 10.0).unwrap();
        assert_relative_eq!(
            f.nth_derivative_value(1, 3.0).unwrap(),
            6.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            f.nth_derivative_value(2, 3.0).unwrap(),
            2.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn nth_derivative_falls_back_to_finite_differences() {
        // abs blocks the symbolic route
        let f = RealFunction::parse("abs(x) * x", 1.0, 5.0).unwrap();
        assert!(!f.has_symbolic_derivative(1));
        // on [1, 5] the function is x^2, derivative 2x
        assert_relative_eq!(
            f.nth_derivative_value(1, 2.0).unwrap(),
            4.0,
            max_relative = 1e-8
        );
        // one-sided at the domain edge
        assert_relative_eq!(
            f.nth_derivative_value(1, 5.0).unwrap(),
            10.0,
            max_relative = 1e-5
        );
    }

    #[test]
    fn display_round_trips_structurally() {
        let corpus = [
            "x",
            "x^2",
            "exp(x)",
            "ln(x)",
            "x^2 * ln(x)",
            "sqrt(x) + 1/x",
            "(x + 1)^2",
            "(-x)^2",
            "x - (x - 1)",
            "abs(x - 2)",
            "2*x^3 - x/2 + 0.5",
            "x^2^3",
            "1/(1 + x)",
        ];
        for source in corpus {
            let tree = parse(source).unwrap();
            let printed = tree.to_string();
            let reparsed = parse(&printed)
                .unwrap_or_else(|e| panic!("{source} printed as {printed}: {e}"));
            assert_eq!(tree, reparsed, "{source} printed as {printed}");
        }
    }
}
