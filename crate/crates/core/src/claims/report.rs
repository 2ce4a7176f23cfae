//! Self-contained claim reports and their machine-readable serializations.
//!
//! JSON is the canonical format: field order is fixed and every real is
//! printed with 17 significant digits, so identical runs emit byte-identical
//! files and parsing the number recovers the exact f64. CSV is a lossy
//! convenience view (no side values). The writer is hand-rolled because the
//! byte-level contract (field order, float format) is part of the public
//! interface.

use super::{IdentityInterpretation, KernelBase, UPoint};
use crate::verdict::{Verdict, VerdictKind, Witness};
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportSide {
    pub name: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportComparison {
    /// Side name of the smaller-or-equal member.
    pub lhs: String,
    pub rhs: String,
    /// rhs − lhs; positive means this link holds.
    pub margin: f64,
}

/// Everything needed to reproduce one claim evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub claim_id: String,
    pub anchor: String,
    pub params: Vec<(String, f64)>,
    pub sides: Vec<ReportSide>,
    pub comparisons: Vec<ReportComparison>,
    pub verdict: Verdict,
    pub quadrature_error: f64,
    pub interpretation: Option<IdentityInterpretation>,
    pub seed: Option<u64>,
    pub tool_version: String,
}

/// 17 significant digits: enough to recover the exact f64 on reparse.
fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

fn escape_json(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

fn write_params(out: &mut String, params: &[(String, f64)]) {
    out.push('{');
    for (i, (name, value)) in params.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "\"{}\":{}", escape_json(name), fmt_f64(*value));
    }
    out.push('}');
}

fn write_witness(out: &mut String, witness: &Witness) {
    out.push_str("{\"params\":");
    write_params(out, &witness.params);
    let _ = write!(
        out,
        ",\"lhs\":{},\"rhs\":{},\"margin\":{}}}",
        fmt_f64(witness.lhs),
        fmt_f64(witness.rhs),
        fmt_f64(witness.margin)
    );
}

fn write_verdict(out: &mut String, verdict: &Verdict) {
    match &verdict.kind {
        VerdictKind::Holds { min_margin } => {
            let _ = write!(
                out,
                "{{\"kind\":\"holds\",\"min_margin\":{}}}",
                fmt_f64(*min_margin)
            );
        }
        VerdictKind::Fails { witness } => {
            out.push_str("{\"kind\":\"fails\",\"witness\":");
            write_witness(out, witness);
            out.push('}');
        }
        VerdictKind::Indeterminate { reason } => {
            let _ = write!(
                out,
                "{{\"kind\":\"indeterminate\",\"reason\":\"{}\"}}",
                escape_json(reason)
            );
        }
    }
}

impl UPoint {
    pub fn label(&self) -> &'static str {
        match self {
            UPoint::EvalAtY => "eval-at-y",
            UPoint::EvalAtX => "eval-at-x",
        }
    }
}

impl KernelBase {
    pub fn label(&self) -> &'static str {
        match self {
            KernelBase::AsDefinedInA19 => "as-defined-in-a19",
            KernelBase::AsUsedInProof => "as-used-in-proof",
        }
    }
}

impl Report {
    /// Canonical JSON object with fixed field order.
    pub fn to_json(&self) -> String {
        let mut out = String::with_capacity(512);
        let _ = write!(
            out,
            "{{\"claim_id\":\"{}\",\"anchor\":\"{}\",\"params\":",
            escape_json(&self.claim_id),
            escape_json(&self.anchor)
        );
        write_params(&mut out, &self.params);
        out.push_str(",\"sides\":[");
        for (i, side) in self.sides.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(
                out,
                "{{\"name\":\"{}\",\"re\":{},\"im\":{}}}",
                escape_json(&side.name),
                fmt_f64(side.re),
                fmt_f64(side.im)
            );
        }
        out.push_str("],\"comparisons\":[");
        for (i, cmp) in self.comparisons.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(
                out,
                "{{\"lhs\":\"{}\",\"rhs\":\"{}\",\"margin\":{}}}",
                escape_json(&cmp.lhs),
                escape_json(&cmp.rhs),
                fmt_f64(cmp.margin)
            );
        }
        out.push_str("],\"verdict\":");
        write_verdict(&mut out, &self.verdict);
        let _ = write!(
            out,
            ",\"quadrature_error\":{}",
            fmt_f64(self.quadrature_error)
        );
        match &self.interpretation {
            Some(interp) => {
                let _ = write!(
                    out,
                    ",\"interpretation\":{{\"u_point\":\"{}\",\"caputo_kernel_base\":\"{}\"}}",
                    interp.u_point.label(),
                    interp.caputo_kernel_base.label()
                );
            }
            None => out.push_str(",\"interpretation\":null"),
        }
        match self.seed {
            Some(seed) => {
                let _ = write!(out, ",\"seed\":{seed}");
            }
            None => out.push_str(",\"seed\":null"),
        }
        let _ = write!(
            out,
            ",\"tool_version\":\"{}\"}}",
            escape_json(&self.tool_version)
        );
        out
    }

    /// Headline margin for the CSV view: minimum link margin for Holds,
    /// rhs − lhs at the worst link for Fails, empty for Indeterminate.
    pub fn headline_margin(&self) -> Option<f64> {
        match &self.verdict.kind {
            VerdictKind::Holds { min_margin } => Some(*min_margin),
            VerdictKind::Fails { witness } => Some(-witness.margin),
            VerdictKind::Indeterminate { .. } => None,
        }
    }

    pub fn verdict_label(&self) -> &'static str {
        match self.verdict.kind {
            VerdictKind::Holds { .. } => "holds",
            VerdictKind::Fails { .. } => "fails",
            VerdictKind::Indeterminate { .. } => "indeterminate",
        }
    }

    pub fn to_csv_row(&self) -> String {
        let margin = self
            .headline_margin()
            .map(fmt_f64)
            .unwrap_or_default();
        let params = self
            .params
            .iter()
            .map(|(name, value)| format!("{name}={value}"))
            .collect::<Vec<_>>()
            .join(";");
        let seed = self.seed.map(|s| s.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            self.claim_id,
            self.verdict_label(),
            margin,
            fmt_f64(self.quadrature_error),
            params,
            seed
        )
    }
}

pub const CSV_HEADER: &str = "claim_id,verdict,margin,quad_error,params,seed";

/// Serializes one or more reports as canonical JSON (an array when more
/// than one), with a trailing newline.
pub fn emit_json(reports: &[Report]) -> String {
    let mut out = String::new();
    if reports.len() == 1 {
        out.push_str(&reports[0].to_json());
    } else {
        out.push('[');
        for (i, report) in reports.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&report.to_json());
        }
        out.push(']');
    }
    out.push('\n');
    out
}

/// CSV with the fixed header row and a trailing newline.
pub fn emit_csv(reports: &[Report]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for report in reports {
        out.push_str(&report.to_csv_row());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> Report {
        Report {
            claim_id: "THM5-ELEM".into(),
            anchor: "Theorem 5".into(),
            params: vec![("p".into(), 1.0)],
            sides: vec![
                ReportSide {
                    name: "half".into(),
                    re: 0.5,
                    im: 0.0,
                },
                ReportSide {
                    name: "elementary_form".into(),
                    re: 2.0 / 3.0,
                    im: 0.0,
                },
            ],
            comparisons: vec![ReportComparison {
                lhs: "half".into(),
                rhs: "elementary_form".into(),
                margin: 2.0 / 3.0 - 0.5,
            }],
            verdict: Verdict::holds(2.0 / 3.0 - 0.5, 0.0),
            quadrature_error: 0.0,
            interpretation: None,
            seed: Some(7),
            tool_version: "0.1.0".into(),
        }
    }

    #[test]
    fn json_has_fixed_field_order() {
        let json = sample_report().to_json();
        let claim_pos = json.find("\"claim_id\"").unwrap();
        let anchor_pos = json.find("\"anchor\"").unwrap();
        let params_pos = json.find("\"params\"").unwrap();
        let sides_pos = json.find("\"sides\"").unwrap();
        let comparisons_pos = json.find("\"comparisons\"").unwrap();
        let verdict_pos = json.find("\"verdict\"").unwrap();
        let quad_pos = json.find("\"quadrature_error\"").unwrap();
        let interp_pos = json.find("\"interpretation\"").unwrap();
        let seed_pos = json.find("\"seed\"").unwrap();
        let version_pos = json.find("\"tool_version\"").unwrap();
        let order = [
            claim_pos,
            anchor_pos,
            params_pos,
            sides_pos,
            comparisons_pos,
            verdict_pos,
            quad_pos,
            interp_pos,
            seed_pos,
            version_pos,
        ];
        assert!(order.windows(2).all(|w| w[0] < w[1]), "{json}");
    }

    #[test]
    fn json_reals_round_trip_exactly() {
        let json = sample_report().to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let side = &value["sides"][1];
        assert_eq!(side["re"].as_f64().unwrap(), 2.0 / 3.0);
        assert_eq!(value["verdict"]["kind"], "holds");
        assert_eq!(value["seed"].as_u64().unwrap(), 7);
    }

    #[test]
    fn json_escapes_reason_strings() {
        let mut report = sample_report();
        report.verdict = Verdict::indeterminate("a \"quoted\"\nreason");
        let json = report.to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(
            value["verdict"]["reason"].as_str().unwrap(),
            "a \"quoted\"\nreason"
        );
    }

    #[test]
    fn csv_row_shape() {
        let csv = emit_csv(&[sample_report()]);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let row = lines.next().unwrap();
        assert!(row.starts_with("THM5-ELEM,holds,"));
        assert!(row.ends_with(",p=1,7"));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn multiple_reports_become_an_array() {
        let json = emit_json(&[sample_report(), sample_report()]);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value.as_array().unwrap().len(), 2);
        assert!(json.ends_with('\n'));
    }
}
