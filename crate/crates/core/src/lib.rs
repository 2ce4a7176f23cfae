//! Numerical verification lab for fractional-order convexity inequalities.
//!
//! The crate evaluates Hermite–Hadamard-type bounds, Caputo fractional
//! derivatives, and the integral identities that connect them, as
//! independently computed two-sided comparisons with margin reporting and
//! deterministic counterexample search. Every displayed inequality lives in
//! the [`claims`] registry; the supporting numerics are split into
//! [`specfun`] (Gamma/Beta/principal powers), [`quad`] (adaptive quadrature
//! with weakly singular endpoint support), [`fraccalc`] (Caputo left/right
//! derivatives), [`exprlang`] (the user-facing expression language), and
//! [`convexity`] (sampling-based membership testers).

// `!(a < b)` guards are deliberate: they reject NaN along with the ordinary
// precondition violation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod claims;
pub mod convexity;
pub mod exprlang;
pub mod fraccalc;
pub mod quad;
pub mod specfun;
pub mod verdict;

pub use exprlang::RealFunction;
pub use fraccalc::FracOrder;
pub use quad::{QuadResult, QuadratureSpec};
pub use verdict::{Verdict, VerdictKind, Witness};

/// Version string embedded in every emitted report.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
