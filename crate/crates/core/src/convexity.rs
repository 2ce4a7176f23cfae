//! Sampling-based membership testers for the two generalized convexity
//! classes and the pointwise helper inequalities underlying them.
//!
//! The class with weights t^p and |t^p − (1−t)^p| is checked on a
//! deterministic grid of t values crossed with seeded (x, y) pairs; the
//! dyadic-weight class checks a single printed instance per call, in both a
//! literal and a corrected reading of its doubly divided argument.
//! Membership is always reported as Holds-on-grid, never as a proof.

use crate::exprlang::RealFunction;
use crate::verdict::{Verdict, Witness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ConvexityError {
    #[error("domain error: {0}")]
    Domain(String),
}

/// Deterministic evaluation grid: ordered t values in (0, 1] crossed with
/// seeded (x, y) pairs drawn from the target interval with y < x.
///
/// Every grid contains t = 1/2 and t = 1 exactly (the constructors insert
/// them); pair generation from the seed is reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    t_values: Vec<f64>,
    pair_count: usize,
    seed: u64,
}

impl SampleGrid {
    /// Default grid: t ∈ {2⁻²⁰} ∪ {j/256 : j = 1..256} and 512 pairs.
    /// The 2⁻²⁰ point covers the t → 0⁺ edge while staying inside (0, 1].
    pub fn with_default_resolution(seed: u64) -> Self {
        let mut t_values = vec![2f64.powi(-20)];
        t_values.extend((1..=256).map(|j| f64::from(j) / 256.0));
        SampleGrid::new(t_values, 512, seed)
    }

    pub fn new(t_values: Vec<f64>, pair_count: usize, seed: u64) -> Self {
        let mut t_values: Vec<f64> = t_values
            .into_iter()
            .filter(|t| *t > 0.0 && *t <= 1.0)
            .collect();
        t_values.push(0.5);
        t_values.push(1.0);
        t_values.sort_by(f64::total_cmp);
        t_values.dedup();
        SampleGrid {
            t_values,
            pair_count,
            seed,
        }
    }

    pub fn t_values(&self) -> &[f64] {
        &self.t_values
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Deterministic (x, y) pairs inside [lo, hi] with y < x: the endpoint
    /// pair (hi, lo) first, then seeded draws.
    pub fn pairs(&self, lo: f64, hi: f64) -> Vec<(f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut pairs = Vec::with_capacity(self.pair_count);
        if self.pair_count > 0 {
            pairs.push((hi, lo));
        }
        while pairs.len() < self.pair_count {
            let u: f64 = rng.random();
            let v: f64 = rng.random();
            let first = lo + u * (hi - lo);
            let second = lo + v * (hi - lo);
            if first == second {
                pairs.push((hi, lo));
            } else {
                pairs.push((first.max(second), first.min(second)));
            }
        }
        pairs
    }
}

fn check_on_grid<W>(
    f: &RealFunction,
    interval: (f64, f64),
    p: f64,
    grid: &SampleGrid,
    t_filter: impl Fn(f64) -> bool,
    weighted_rhs: W,
) -> Verdict
where
    W: Fn(f64, f64, f64) -> f64, // (t, f(x), f(y)) -> rhs
{
    let (lo, hi) = interval;
    if lo < 1.0 {
        return Verdict::indeterminate(format!(
            "interval [{lo}, {hi}] leaves the class domain [1, inf)"
        ));
    }
    if !(lo < hi) {
        return Verdict::indeterminate(format!("empty interval [{lo}, {hi}]"));
    }
    if !(p > -1.0 && p <= 1.0) {
        return Verdict::indeterminate(format!("exponent p = {p} outside (-1, 1]"));
    }

    let mut min_margin = f64::INFINITY;
    let mut worst: Option<Witness> = None;
    for &t in grid.t_values.iter().filter(|t| t_filter(**t)) {
        for &(x, y) in &grid.pairs(lo, hi) {
            let points = [(x, "x"), (y, "y"), (t * x + (1.0 - t) * y, "tx+(1-t)y")];
            let mut values = [0.0f64; 3];
            for (slot, (point, role)) in values.iter_mut().zip(points) {
                match f.eval(point) {
                    Ok(v) if v >= 0.0 => *slot = v,
                    Ok(v) => {
                        return Verdict::indeterminate(format!(
                            "f({point}) = {v} < 0 at sample {role}; the class requires f >= 0"
                        ));
                    }
                    Err(e) => {
                        return Verdict::indeterminate(format!(
                            "evaluation failed at sample {role}: {e}"
                        ));
                    }
                }
            }
            let (fx, fy, lhs) = (values[0], values[1], values[2]);
            let rhs = weighted_rhs(t, fx, fy);
            if !rhs.is_finite() {
                // 0^p at t = 1 with p <= 0: the weight diverges and the
                // comparison holds trivially; keep margins finite
                continue;
            }
            let margin = rhs - lhs;
            if margin < min_margin {
                min_margin = margin;
                if margin < 0.0 {
                    worst = Some(Witness {
                        params: vec![
                            ("t".to_string(), t),
                            ("x".to_string(), x),
                            ("y".to_string(), y),
                        ],
                        lhs,
                        rhs,
                        margin: lhs - rhs,
                    });
                }
            }
        }
    }
    match worst {
        Some(witness) => Verdict::fails(witness, 0.0),
        None => Verdict::holds(min_margin, 0.0),
    }
}

/// Checks f(tx+(1−t)y) ≤ t^p f(x) + |t^p − (1−t)^p| f(y) at every grid
/// point. Holds carries the minimum slack; Fails carries the worst witness.
pub fn check_def1(f: &RealFunction, interval: (f64, f64), p: f64, grid: &SampleGrid) -> Verdict {
    check_on_grid(f, interval, p, grid, |_| true, |t, fx, fy| {
        t.powf(p) * fx + (t.powf(p) - (1.0 - t).powf(p)).abs() * fy
    })
}

/// Checks the weakened form f(tx+(1−t)y) ≤ t^p (f(x) + f(y)), which is
/// stated for t ∈ [1/2, 1]; grid points below 1/2 are skipped.
pub fn check_eq_a12(f: &RealFunction, interval: (f64, f64), p: f64, grid: &SampleGrid) -> Verdict {
    check_on_grid(f, interval, p, grid, |t| t >= 0.5, |t, fx, fy| {
        t.powf(p) * (fx + fy)
    })
}

/// Which reading of the dyadic-class argument to check.
///
/// The printed display divides the convex combination by 2^k a second time;
/// `Corrected` drops that outer division so the argument matches the sequence
/// the display was derived from. Both are reported side by side; the lab's
/// job is to report, not silently fix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Def2Mode {
    Literal,
    Corrected,
}

/// (2^k − 1)/2^k, the dyadic weight at level k.
pub fn dyadic_ratio(k: u32) -> f64 {
    let two_k = 2f64.powi(k as i32);
    (two_k - 1.0) / two_k
}

/// Checks one instance of the dyadic-weight class:
/// f(arg) ≤ ((2^k−1)/2^k)^p f(x) + ((4^k−1)/2^k)^p f(y), with arg per mode.
pub fn check_def2(
    f: &RealFunction,
    x: f64,
    y: f64,
    p: f64,
    k: u32,
    mode: Def2Mode,
) -> Verdict {
    if x < 1.0 || y < 1.0 {
        return Verdict::indeterminate(format!(
            "points x = {x}, y = {y} must lie in the class domain [1, inf)"
        ));
    }
    if k < 1 {
        return Verdict::indeterminate("dyadic level k must be at least 1".to_string());
    }
    let two_k = 2f64.powi(k as i32);
    let ratio = dyadic_ratio(k);
    let combination = ratio * x + y / two_k;
    let argument = match mode {
        Def2Mode::Literal => combination / two_k,
        Def2Mode::Corrected => combination,
    };
    let lhs = match f.eval(argument) {
        Ok(v) => v,
        Err(e) => {
            return Verdict::indeterminate(format!(
                "argument {argument} is not evaluable ({e}); the printed formula divides \
                 the convex combination by 2^k twice, which can leave the domain"
            ));
        }
    };
    let second_weight = ((two_k * two_k - 1.0) / two_k).powf(p);
    let (fx, fy) = match (f.eval(x), f.eval(y)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            return Verdict::indeterminate(format!("endpoint evaluation failed: {e}"));
        }
    };
    let rhs = ratio.powf(p) * fx + second_weight * fy;
    let witness_params = vec![
        ("k".to_string(), f64::from(k)),
        ("x".to_string(), x),
        ("y".to_string(), y),
    ];
    if lhs > rhs {
        Verdict::fails(
            Witness {
                params: witness_params,
                lhs,
                rhs,
                margin: lhs - rhs,
            },
            0.0,
        )
    } else {
        Verdict::holds(rhs - lhs, 0.0)
    }
}

/// One pointwise instance of |t₁^p − t₂^p| vs |t₁ − t₂|^p. No truth claim
/// beyond the evaluated instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsPowerCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn check_abs_power(t1: f64, t2: f64, p: f64) -> Result<AbsPowerCheck, ConvexityError> {
    for t in [t1, t2] {
        if !(0.0..=1.0).contains(&t) {
            return Err(ConvexityError::Domain(format!(
                "t values must lie in [0, 1], got {t}"
            )));
        }
        if p <= 0.0 && t == 0.0 {
            return Err(ConvexityError::Domain(format!(
                "0^{p} is undefined for nonpositive exponents"
            )));
        }
    }
    if p <= 0.0 && t1 == t2 {
        return Err(ConvexityError::Domain(format!(
            "|t1 - t2|^{p} is undefined at coincident points for nonpositive exponents"
        )));
    }
    let lhs = (t1.powf(p) - t2.powf(p)).abs();
    let rhs = (t1 - t2).abs().powf(p);
    Ok(AbsPowerCheck {
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

/// One level of the dyadic chain: the weight ratio (2^k − 1)/2^k and its
/// p-th power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicStep {
    pub k: u32,
    pub ratio: f64,
    pub coefficient: f64,
}

impl DyadicStep {
    /// Margin rhs − lhs of the printed chain display at this level for the
    /// given function and points (positive means it holds). None when the
    /// printed argument leaves the function's domain.
    pub fn margin_at(&self, f: &RealFunction, x: f64, y: f64) -> Option<f64> {
        let two_k = 2f64.powi(self.k as i32);
        let argument = (self.ratio * x + y / two_k) / two_k;
        let lhs = f.eval(argument).ok()?;
        let fx = f.eval(x).ok()?;
        let fy = f.eval(y).ok()?;
        Some(self.coefficient * (fx + fy) - lhs)
    }
}

/// The coefficient sequence ((2^k − 1)/2^k)^p for k = 1..k_max; monotone
/// toward 1 for p ∈ (0, 1].
pub fn dyadic_chain(k_max: u32, p: f64) -> Vec<DyadicStep> {
    (1..=k_max)
        .map(|k| {
            let ratio = dyadic_ratio(k);
            DyadicStep {
                k,
                ratio,
                coefficient: ratio.powf(p),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn identity_on(lo: f64, hi: f64) -> RealFunction {
        RealFunction::parse("x", lo, hi).unwrap()
    }

    #[test]
    fn def1_instance_at_quarter_violates() {
        // t = 1/4, x = 2, y = 1, p = 1: lhs 1.25 > rhs 1.0. For f(x) = x the
        // violation lhs − rhs equals y·t below t = 1/2 and y·(2 − 3t) above,
        // so the grid's worst witness sits at t = 1/2 with margin y/2.
        let f = identity_on(1.0, 3.0);
        let lhs = f.eval(0.25 * 2.0 + 0.75 * 1.0).unwrap();
        let rhs = 0.25 * f.eval(2.0).unwrap()
            + (0.25f64 - 0.75f64).abs() * f.eval(1.0).unwrap();
        assert_relative_eq!(lhs, 1.25, max_relative = 1e-12);
        assert_relative_eq!(rhs, 1.0, max_relative = 1e-12);

        // single-pair grid on [1, 2] evaluates exactly the endpoint pair
        // (2, 1); the constructor adds t = 1/2 and t = 1 to the given 1/4
        let grid = SampleGrid::new(vec![0.25], 1, 1);
        let verdict = check_def1(&f, (1.0, 2.0), 1.0, &grid);
        let witness = verdict.witness().expect("expected a failing witness");
        assert_eq!(witness.get("t"), Some(0.5));
        assert_eq!(witness.get("x"), Some(2.0));
        assert_eq!(witness.get("y"), Some(1.0));
        assert_relative_eq!(witness.margin, 0.5, max_relative = 1e-12);
    }

    #[test]
    fn def1_worst_witness_on_upper_half_sits_at_one_half() {
        // even restricted to t in [1/2, 1] the weighted definition fails for
        // f(x) = x: at t = 1/2 the second weight vanishes and the violation
        // is y/2, shrinking to zero only at t = 2/3
        let f = identity_on(1.0, 3.0);
        let t_values: Vec<f64> = (128..=256).map(|j| f64::from(j) / 256.0).collect();
        let grid = SampleGrid::new(t_values, 128, 7);
        let y_max = grid
            .pairs(1.0, 2.0)
            .iter()
            .map(|&(_, y)| y)
            .fold(f64::NEG_INFINITY, f64::max);
        let verdict = check_def1(&f, (1.0, 2.0), 1.0, &grid);
        let witness = verdict.witness().expect("t = 1/2 violates for f(x) = x");
        assert_eq!(witness.get("t"), Some(0.5));
        assert_relative_eq!(witness.margin, y_max / 2.0, max_relative = 1e-12);
        // the weakened form with weight t^p on both endpoints does hold there
        let weakened = check_eq_a12(&f, (1.0, 2.0), 1.0, &grid);
        assert!(weakened.is_holds(), "{weakened:?}");
    }

    #[test]
    fn def1_default_grid_finds_violation_for_identity() {
        let f = identity_on(1.0, 3.0);
        let grid = SampleGrid::with_default_resolution(7);
        let verdict = check_def1(&f, (1.0, 2.0), 1.0, &grid);
        let witness = verdict.witness().expect("identity violates the class below t = 1/2");
        assert!(witness.margin > 0.0);
        // re-evaluating the witness reproduces lhs and rhs
        let t = witness.get("t").unwrap();
        let x = witness.get("x").unwrap();
        let y = witness.get("y").unwrap();
        let lhs = f.eval(t * x + (1.0 - t) * y).unwrap();
        let rhs = t * f.eval(x).unwrap() + (t - (1.0 - t)).abs() * f.eval(y).unwrap();
        assert!((lhs - witness.lhs).abs() <= 1e-12);
        assert!((rhs - witness.rhs).abs() <= 1e-12);
    }

    #[test]
    fn def1_verdicts_are_reproducible() {
        let f = identity_on(1.0, 3.0);
        let a = check_def1(&f, (1.0, 2.0), 1.0, &SampleGrid::with_default_resolution(42));
        let b = check_def1(&f, (1.0, 2.0), 1.0, &SampleGrid::with_default_resolution(42));
        assert_eq!(a, b);
    }

    #[test]
    fn def1_negative_function_is_indeterminate() {
        let f = RealFunction::parse("x - 10", 1.0, 3.0).unwrap();
        let grid = SampleGrid::with_default_resolution(5);
        let verdict = check_def1(&f, (1.0, 2.0), 1.0, &grid);
        assert!(verdict.is_indeterminate(), "{verdict:?}");
    }

    #[test]
    fn constant_function_holds_with_zero_margin_at_p_zero() {
        // at t = 1, p = 0 both weights are 1 and |1 - 1| = 0, so rhs = c
        let f = RealFunction::parse("2", 1.0, 3.0).unwrap();
        let grid = SampleGrid::new(vec![1.0], 4, 3);
        let verdict = check_def1(&f, (1.0, 2.0), 0.0, &grid);
        match verdict.kind {
            crate::verdict::VerdictKind::Holds { min_margin } => {
                assert!(min_margin.abs() <= 1e-12, "min_margin = {min_margin}")
            }
            other => panic!("expected holds, got {other:?}"),
        }
    }

    #[test]
    fn eq_a12_holds_for_identity() {
        // t = 3/4, x = 2, y = 1: lhs 1.75 <= rhs 2.25
        let f = identity_on(1.0, 3.0);
        let grid = SampleGrid::with_default_resolution(11);
        let verdict = check_eq_a12(&f, (1.0, 2.0), 1.0, &grid);
        assert!(verdict.is_holds(), "{verdict:?}");
        let verdict = check_eq_a12(&f, (1.0, 2.0), 0.5, &grid);
        assert!(verdict.is_holds(), "{verdict:?}");
    }

    #[test]
    fn eq_a12_midpoint_instance_for_square() {
        // t = 1/2, p = 1, x = 2, y = 1 for f(x) = x²: 2.25 <= 2.5
        let f = RealFunction::parse("x^2", 1.0, 3.0).unwrap();
        let lhs = f.eval(0.5 * 2.0 + 0.5 * 1.0).unwrap();
        let rhs = 0.5 * (f.eval(2.0).unwrap() + f.eval(1.0).unwrap());
        assert_relative_eq!(lhs, 2.25, max_relative = 1e-12);
        assert_relative_eq!(rhs, 2.5, max_relative = 1e-12);
        assert!(lhs <= rhs);
        let verdict = check_eq_a12(&f, (1.0, 2.0), 1.0, &SampleGrid::with_default_resolution(3));
        assert!(verdict.is_holds(), "{verdict:?}");
    }

    #[test]
    fn def2_literal_example() {
        // k = 1, p = 1, x = 4, y = 2: f((0.5·4 + 0.5·2)/2) = 1.5 <= 5
        let f = identity_on(1.0, 10.0);
        let verdict = check_def2(&f, 4.0, 2.0, 1.0, 1, Def2Mode::Literal);
        match verdict.kind {
            crate::verdict::VerdictKind::Holds { min_margin } => {
                assert_relative_eq!(min_margin, 3.5, max_relative = 1e-12)
            }
            other => panic!("expected holds, got {other:?}"),
        }
    }

    #[test]
    fn def2_corrected_example() {
        // k = 2, p = 1, x = 8, y = 4: f(0.75·8 + 0.25·4) = 7 <= 21
        let f = identity_on(1.0, 10.0);
        let verdict = check_def2(&f, 8.0, 4.0, 1.0, 2, Def2Mode::Corrected);
        match verdict.kind {
            crate::verdict::VerdictKind::Holds { min_margin } => {
                assert_relative_eq!(min_margin, 14.0, max_relative = 1e-12)
            }
            other => panic!("expected holds, got {other:?}"),
        }
    }

    #[test]
    fn def2_literal_argument_can_leave_domain() {
        // k = 1, x = y = 1: argument (0.5 + 0.5)/2 = 0.5 < 1
        let f = identity_on(1.0, 10.0);
        let verdict = check_def2(&f, 1.0, 1.0, 1.0, 1, Def2Mode::Literal);
        assert!(verdict.is_indeterminate(), "{verdict:?}");
    }

    #[test]
    fn abs_power_instances() {
        let c = check_abs_power(0.3, 0.3, 0.5).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));
        assert!(c.holds);

        let c = check_abs_power(1.0, 0.0, 0.5).unwrap();
        assert_relative_eq!(c.lhs, 1.0, max_relative = 1e-15);
        assert_relative_eq!(c.rhs, 1.0, max_relative = 1e-15);
        assert!(c.holds);

        let c = check_abs_power(0.8, 0.3, 1.0).unwrap();
        assert_relative_eq!(c.lhs, 0.5, max_relative = 1e-12);
        assert_relative_eq!(c.rhs, 0.5, max_relative = 1e-12);
        assert!(c.holds);

        assert!(check_abs_power(0.0, 0.5, -0.5).is_err());
        assert!(check_abs_power(1.2, 0.5, 0.5).is_err());
    }

    #[test]
    fn abs_power_fact_on_dense_grid() {
        // |t1^p − t2^p| <= |t1 − t2|^p for p in (0, 1] on a 200×200 grid
        for p in [0.1, 0.25, 0.5, 0.75, 1.0] {
            for i in 0..200 {
                for j in 0..200 {
                    let t1 = f64::from(i) / 199.0;
                    let t2 = f64::from(j) / 199.0;
                    let c = check_abs_power(t1, t2, p).unwrap();
                    assert!(
                        c.lhs <= c.rhs + 1e-14,
                        "p = {p}, t1 = {t1}, t2 = {t2}: {} > {}",
                        c.lhs,
                        c.rhs
                    );
                }
            }
        }
    }

    #[test]
    fn two_t_minus_one_bound_on_upper_half() {
        // |2t−1|^p <= t^p for t in [1/2, 1], p in (0, 1]
        for p in [0.1, 0.25, 0.5, 0.75, 1.0] {
            for i in 0..=400 {
                let t = 0.5 + 0.5 * f64::from(i) / 400.0;
                let lhs = (2.0 * t - 1.0).abs().powf(p);
                let rhs = t.powf(p);
                assert!(lhs <= rhs + 1e-14, "p = {p}, t = {t}");
            }
        }
    }

    #[test]
    fn dyadic_chain_sequence_at_p_one() {
        let chain = dyadic_chain(4, 1.0);
        let coefficients: Vec<f64> = chain.iter().map(|s| s.coefficient).collect();
        assert_eq!(coefficients, vec![0.5, 0.75, 0.875, 0.9375]);
    }

    #[test]
    #[allow(clippy::approx_constant)] // the frozen digits equal sqrt(1/2)
    fn dyadic_chain_sqrt_half() {
        let chain = dyadic_chain(1, 0.5);
        assert_relative_eq!(chain[0].coefficient, 0.5f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(chain[0].coefficient, 0.7071067811865476, max_relative = 1e-12);
    }

    #[test]
    fn dyadic_chain_converges_to_one() {
        let chain = dyadic_chain(21, 1.0);
        assert!((chain.last().unwrap().coefficient - 1.0).abs() <= 1e-6);
        // monotone toward 1 for p in (0, 1]
        for p in [0.25, 0.5, 1.0] {
            let chain = dyadic_chain(12, p);
            for pair in chain.windows(2) {
                assert!(pair[0].coefficient < pair[1].coefficient, "p = {p}");
            }
        }
    }

    #[test]
    fn dyadic_margin_reports_domain_exit() {
        let f = identity_on(1.0, 10.0);
        let chain = dyadic_chain(4, 1.0);
        // x = y = 1 pushes the literal argument below the domain for k = 1
        assert!(chain[0].margin_at(&f, 1.0, 1.0).is_none());
        // roomier points evaluate fine: rhs 0.5·(4+2) = 3, lhs f(1.5)
        let margin = chain[0].margin_at(&f, 4.0, 2.0).unwrap();
        assert_relative_eq!(margin, 1.5, max_relative = 1e-12);
    }
}
