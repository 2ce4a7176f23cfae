//! Shared verdict and witness types used by the convexity testers and the
//! claim registry.

/// A concrete parameter assignment at which a claim's left side was compared
/// against its right side.
///
/// `margin` is lhs − rhs for a ≤-claim, so a strictly positive margin means
/// the recorded point violates the claim. Re-evaluating the recorded
/// parameters must reproduce `lhs` and `rhs` (the tests enforce 1e-12).
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub params: Vec<(String, f64)>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl Witness {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.params
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }
}

/// Outcome of checking one claim or membership test.
///
/// `Holds` carries the minimum slack rhs − lhs observed across the checked
/// points (nonnegative up to quadrature noise); `Fails` carries the worst
/// witness; `Indeterminate` is used for precondition violations and
/// evaluation failures, never as a soft failure.
#[derive(Debug, Clone, PartialEq)]
pub enum VerdictKind {
    Holds { min_margin: f64 },
    Fails { witness: Witness },
    Indeterminate { reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub quadrature_error: f64,
}

impl Verdict {
    pub fn holds(min_margin: f64, quadrature_error: f64) -> Self {
        Verdict {
            kind: VerdictKind::Holds { min_margin },
            quadrature_error,
        }
    }

    pub fn fails(witness: Witness, quadrature_error: f64) -> Self {
        Verdict {
            kind: VerdictKind::Fails { witness },
            quadrature_error,
        }
    }

    pub fn indeterminate(reason: impl Into<String>) -> Self {
        Verdict {
            kind: VerdictKind::Indeterminate {
                reason: reason.into(),
            },
            quadrature_error: 0.0,
        }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self.kind, VerdictKind::Holds { .. })
    }

    pub fn is_fails(&self) -> bool {
        matches!(self.kind, VerdictKind::Fails { .. })
    }

    pub fn is_indeterminate(&self) -> bool {
        matches!(self.kind, VerdictKind::Indeterminate { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.kind {
            VerdictKind::Fails { witness } => Some(witness),
            _ => None,
        }
    }
}
