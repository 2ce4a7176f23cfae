//! Deterministic counterexample search: a coarse grid over the parameter
//! box crossed with the function corpus, compass-style local refinement from
//! the best cell, then a seeded polish phase around the incumbent.
//!
//! Identical (seed, budget, box) inputs produce identical outputs; ties are
//! broken by evaluation order, which is itself fixed (corpus outer,
//! lexicographic grid order inner). A candidate only becomes a witness if
//! its violation exceeds 10× the quadrature error of a fresh confirming
//! evaluation, so integration noise cannot produce false alarms.

use super::{
    evaluate_claim, find_claim, Claim, ClaimError, ClaimKind, IdentityInterpretation, Report,
};
use crate::exprlang::RealFunction;
use crate::quad::QuadratureSpec;
use crate::verdict::VerdictKind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// One searched dimension, a closed interval for a named claim parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxDim {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

/// The searched region, e.g. parsed from "p=0:1,a=1:2,b=1:2,t=0:1".
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SearchBox {
    pub dims: Vec<BoxDim>,
}

impl SearchBox {
    pub fn parse(source: &str) -> Result<Self, ClaimError> {
        let mut dims = Vec::new();
        for part in source.split(',').filter(|p| !p.trim().is_empty()) {
            let (name, range) = part.split_once('=').ok_or_else(|| {
                ClaimError::Usage(format!(
                    "box entry '{part}' must look like name=lo:hi"
                ))
            })?;
            let (lo, hi) = range.split_once(':').ok_or_else(|| {
                ClaimError::Usage(format!("box range '{range}' must look like lo:hi"))
            })?;
            let lo: f64 = lo.trim().parse().map_err(|_| {
                ClaimError::Usage(format!("box bound '{lo}' is not a number"))
            })?;
            let hi: f64 = hi.trim().parse().map_err(|_| {
                ClaimError::Usage(format!("box bound '{hi}' is not a number"))
            })?;
            if !(lo <= hi) {
                return Err(ClaimError::Usage(format!(
                    "box range for '{name}' is empty: {lo}:{hi}"
                )));
            }
            dims.push(BoxDim {
                name: name.trim().to_string(),
                lo,
                hi,
            });
        }
        Ok(SearchBox { dims })
    }
}

/// A confirmed counterexample: the failing report plus the corpus function
/// it was found on.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub report: Report,
    pub function_source: Option<String>,
    pub evaluations: usize,
}

struct Candidate {
    violation: f64,
    params: BTreeMap<String, f64>,
    corpus_index: Option<usize>,
    quad_error: f64,
}

/// Violation of a report: how far the worst link is from holding.
fn violation_of(report: &Report, kind: ClaimKind) -> Option<f64> {
    if matches!(report.verdict.kind, VerdictKind::Indeterminate { .. }) {
        return None;
    }
    report
        .comparisons
        .iter()
        .map(|c| match kind {
            ClaimKind::Inequality => -c.margin,
            ClaimKind::Identity => c.margin.abs(),
        })
        .fold(None, |acc: Option<f64>, v| {
            Some(acc.map_or(v, |a| a.max(v)))
        })
}

struct Evaluator<'a> {
    claim: &'static Claim,
    corpus: &'a [RealFunction],
    quad: &'a QuadratureSpec,
    budget: usize,
    used: usize,
}

impl<'a> Evaluator<'a> {
    fn exhausted(&self) -> bool {
        self.used >= self.budget
    }

    /// Evaluates one assignment against one corpus entry; sampling errors
    /// (invalid parameters, non-evaluable sides, quadrature budget) are not
    /// witnesses and yield None.
    fn probe(
        &mut self,
        params: &BTreeMap<String, f64>,
        corpus_index: Option<usize>,
    ) -> Option<(f64, f64)> {
        if self.exhausted() {
            return None;
        }
        self.used += 1;
        if self.claim.validate_params(params).is_err() {
            return None;
        }
        let function = corpus_index.map(|i| &self.corpus[i]);
        match evaluate_claim(
            self.claim.id,
            params,
            function,
            self.quad,
            IdentityInterpretation::default(),
            None,
        ) {
            Ok(report) => {
                let violation = violation_of(&report, self.claim.kind)?;
                Some((violation, report.verdict.quadrature_error))
            }
            Err(_) => None,
        }
    }
}

fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count <= 1 || lo == hi {
        return vec![0.5 * (lo + hi)];
    }
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

fn grid_values(dim: &BoxDim, spec_integer: bool, per_dim: usize) -> Vec<f64> {
    if spec_integer {
        let lo = dim.lo.ceil() as i64;
        let hi = dim.hi.floor() as i64;
        (lo..=hi).map(|v| v as f64).collect()
    } else {
        linspace(dim.lo, dim.hi, per_dim)
    }
}

/// Searches the box × corpus for a parameter assignment violating the
/// claim. Returns the refined best witness once its violation exceeds 10×
/// the quadrature error of a confirming re-evaluation, or None when the
/// budget is exhausted without one.
pub fn search_counterexample(
    id: &str,
    search_box: &SearchBox,
    fixed: &BTreeMap<String, f64>,
    corpus: &[RealFunction],
    budget: usize,
    seed: u64,
    quad: &QuadratureSpec,
) -> Result<Option<SearchOutcome>, ClaimError> {
    let claim = find_claim(id)?;
    if budget < 1 {
        return Err(ClaimError::Usage("search budget must be at least 1".into()));
    }
    for dim in &search_box.dims {
        let spec = claim.param_spec(&dim.name).ok_or_else(|| {
            ClaimError::Usage(format!(
                "claim {} does not take a parameter named '{}'",
                claim.id, dim.name
            ))
        })?;
        if dim.hi < spec.lo || dim.lo > spec.hi {
            return Err(ClaimError::Usage(format!(
                "box range {}:{} for '{}' lies outside the claim's domain ({})",
                dim.lo,
                dim.hi,
                dim.name,
                spec.describe()
            )));
        }
    }
    for name in fixed.keys() {
        if claim.param_spec(name).is_none() {
            return Err(ClaimError::Usage(format!(
                "claim {} does not take a parameter named '{name}'",
                claim.id
            )));
        }
    }
    if claim.requires_function && corpus.is_empty() {
        return Err(ClaimError::Usage(format!(
            "claim {} requires at least one corpus function",
            claim.id
        )));
    }

    let base: BTreeMap<String, f64> = claim
        .params
        .iter()
        .map(|p| {
            let value = fixed.get(p.name).copied().unwrap_or(p.default);
            (p.name.to_string(), value)
        })
        .collect();

    let corpus_indices: Vec<Option<usize>> = if claim.requires_function {
        (0..corpus.len()).map(Some).collect()
    } else {
        vec![None]
    };

    let mut evaluator = Evaluator {
        claim,
        corpus,
        quad,
        budget,
        used: 0,
    };

    // coarse grid: ~55% of the budget, capped resolution per dimension
    let dims = &search_box.dims;
    let d = dims.len().max(1);
    let grid_budget = (budget as f64 * 0.55 / corpus_indices.len().max(1) as f64).max(1.0);
    let per_dim = (grid_budget.powf(1.0 / d as f64).floor() as usize).clamp(2, 33);
    let axes: Vec<Vec<f64>> = dims
        .iter()
        .map(|dim| {
            let integer = claim
                .param_spec(&dim.name)
                .map(|s| s.integer)
                .unwrap_or(false);
            grid_values(dim, integer, per_dim)
        })
        .collect();

    let mut best: Option<Candidate> = None;
    let consider = |cand: Candidate, best: &mut Option<Candidate>| {
        let better = match best {
            Some(current) => cand.violation > current.violation,
            None => true,
        };
        if better {
            *best = Some(cand);
        }
    };

    for &corpus_index in &corpus_indices {
        let mut cursor = vec![0usize; axes.len()];
        loop {
            let mut params = base.clone();
            for (dim_index, &i) in cursor.iter().enumerate() {
                params.insert(dims[dim_index].name.clone(), axes[dim_index][i]);
            }
            if let Some((violation, quad_error)) = evaluator.probe(&params, corpus_index) {
                consider(
                    Candidate {
                        violation,
                        params,
                        corpus_index,
                        quad_error,
                    },
                    &mut best,
                );
            }
            // odometer increment over the grid
            let mut advanced = false;
            for axis_index in (0..cursor.len()).rev() {
                if cursor[axis_index] + 1 < axes[axis_index].len() {
                    cursor[axis_index] += 1;
                    cursor[axis_index + 1..].iter_mut().for_each(|c| *c = 0);
                    advanced = true;
                    break;
                }
            }
            if !advanced || evaluator.exhausted() {
                break;
            }
        }
        if evaluator.exhausted() {
            break;
        }
    }

    // compass refinement from the best cell
    if let Some(incumbent) = &best {
        let mut center = incumbent.params.clone();
        let corpus_index = incumbent.corpus_index;
        let mut steps: Vec<f64> = dims
            .iter()
            .map(|dim| (dim.hi - dim.lo) / per_dim.max(2) as f64)
            .collect();
        let spans: Vec<f64> = dims.iter().map(|dim| dim.hi - dim.lo).collect();
        while !evaluator.exhausted() {
            let mut improved = false;
            for (dim_index, dim) in dims.iter().enumerate() {
                let spec_integer = claim
                    .param_spec(&dim.name)
                    .map(|s| s.integer)
                    .unwrap_or(false);
                let step = if spec_integer {
                    steps[dim_index].max(1.0).round()
                } else {
                    steps[dim_index]
                };
                for direction in [1.0, -1.0] {
                    let mut params = center.clone();
                    let current = params[&dim.name];
                    let mut moved = (current + direction * step).clamp(dim.lo, dim.hi);
                    if spec_integer {
                        moved = moved.round();
                    }
                    if moved == current {
                        continue;
                    }
                    params.insert(dim.name.clone(), moved);
                    if let Some((violation, quad_error)) = evaluator.probe(&params, corpus_index) {
                        let beats = best
                            .as_ref()
                            .map(|b| violation > b.violation)
                            .unwrap_or(true);
                        if beats {
                            center = params.clone();
                            consider(
                                Candidate {
                                    violation,
                                    params,
                                    corpus_index,
                                    quad_error,
                                },
                                &mut best,
                            );
                            improved = true;
                        }
                    }
                }
            }
            if !improved {
                steps.iter_mut().for_each(|s| *s *= 0.5);
                let done = steps
                    .iter()
                    .zip(&spans)
                    .all(|(s, span)| *s < 1e-9 * span.max(1e-9));
                if done {
                    break;
                }
            }
        }

        // seeded polish around the incumbent
        let polish = (budget / 10).min(budget.saturating_sub(evaluator.used));
        if polish > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let widths: Vec<f64> = steps
                .iter()
                .zip(&spans)
                .map(|(s, span)| (4.0 * s).max(1e-6 * span))
                .collect();
            for _ in 0..polish {
                let mut params = center.clone();
                for (dim_index, dim) in dims.iter().enumerate() {
                    let jitter: f64 = rng.random_range(-1.0..1.0);
                    let mut value =
                        (params[&dim.name] + jitter * widths[dim_index]).clamp(dim.lo, dim.hi);
                    if claim
                        .param_spec(&dim.name)
                        .map(|s| s.integer)
                        .unwrap_or(false)
                    {
                        value = value.round();
                    }
                    params.insert(dim.name.clone(), value);
                }
                if let Some((violation, quad_error)) = evaluator.probe(&params, corpus_index) {
                    consider(
                        Candidate {
                            violation,
                            params,
                            corpus_index,
                            quad_error,
                        },
                        &mut best,
                    );
                }
            }
        }
    }

    let Some(candidate) = best else {
        return Ok(None);
    };
    if candidate.violation <= (10.0 * candidate.quad_error).max(0.0) {
        return Ok(None);
    }

    // no stale witnesses: confirm with a fresh evaluation
    let function = candidate.corpus_index.map(|i| &corpus[i]);
    let mut report = evaluate_claim(
        claim.id,
        &candidate.params,
        function,
        quad,
        IdentityInterpretation::default(),
        Some(seed),
    )?;
    let confirmed = violation_of(&report, claim.kind)
        .map(|v| v > 10.0 * report.verdict.quadrature_error)
        .unwrap_or(false);
    if !confirmed || !matches!(report.verdict.kind, VerdictKind::Fails { .. }) {
        return Ok(None);
    }
    report.seed = Some(seed);
    Ok(Some(SearchOutcome {
        report,
        function_source: candidate
            .corpus_index
            .map(|i| corpus[i].source().to_string()),
        evaluations: evaluator.used,
    }))
}
