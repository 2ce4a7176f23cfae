//! Command-line front end: run claims, search for counterexamples, compute
//! Caputo derivatives, and emit machine-readable reports.
//!
//! Exit codes: 0 when everything requested holds, 1 when at least one claim
//! fails (the witness is emitted), 2 when something is indeterminate and
//! nothing fails, 3 on usage or parse errors.

// the `!(a < b)` guard rejects NaN along with the ordering violation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use clap::{Args, Parser, Subcommand, ValueEnum};
use ineqlab::claims::{
    self, emit_csv, emit_json, IdentityInterpretation, KernelBase, Report, SearchBox, UPoint,
};
use ineqlab::exprlang::RealFunction;
use ineqlab::fraccalc::{self, FracOrder};
use ineqlab::quad::QuadratureSpec;
use ineqlab::verdict::VerdictKind;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

/// Writes a line to stdout, tolerating a closed pipe (e.g. `| head`).
fn out_line(line: std::fmt::Arguments) {
    let _ = writeln!(std::io::stdout(), "{line}");
}

macro_rules! outln {
    ($($arg:tt)*) => { out_line(format_args!($($arg)*)) };
}

const EXIT_HOLDS: u8 = 0;
const EXIT_FAILS: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ineqlab",
    version,
    about = "Numerical verification lab for fractional-order convexity inequalities",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect and evaluate registered claims.
    Claims {
        #[command(subcommand)]
        action: ClaimsAction,
    },
    /// Compute a Caputo fractional derivative of an expression.
    Caputo(CaputoArgs),
    /// Evaluate the entire claim registry at per-claim defaults.
    Report(ReportArgs),
}

#[derive(Subcommand)]
enum ClaimsAction {
    /// List claim ids with their anchors and parameters.
    List,
    /// Evaluate one claim at an explicit parameter assignment.
    Verify(VerifyArgs),
    /// Search a parameter box for a counterexample.
    Search(SearchArgs),
}

#[derive(Args)]
struct FunctionArgs {
    /// Expression for f, e.g. "x^2" (grammar: + - * / ^, exp, ln, sqrt, abs).
    #[arg(long = "f")]
    function: Option<String>,
    /// Domain of f (lower end).
    #[arg(long, default_value_t = 1.0)]
    domain_lo: f64,
    /// Domain of f (upper end).
    #[arg(long, default_value_t = 100.0)]
    domain_hi: f64,
}

impl FunctionArgs {
    fn build(&self) -> Result<Option<RealFunction>, CliError> {
        match &self.function {
            None => Ok(None),
            Some(source) => {
                if !(self.domain_lo < self.domain_hi) {
                    return Err(CliError::usage(format!(
                        "empty function domain [{}, {}]",
                        self.domain_lo, self.domain_hi
                    )));
                }
                let f = RealFunction::parse(source, self.domain_lo, self.domain_hi)
                    .map_err(|e| CliError::usage(format!("--f: {e}")))?;
                Ok(Some(f))
            }
        }
    }
}

#[derive(Args)]
struct QuadArgs {
    /// Absolute quadrature tolerance.
    #[arg(long = "tol-abs", default_value_t = 1e-10)]
    tol_abs: f64,
    /// Relative quadrature tolerance.
    #[arg(long = "tol-rel", default_value_t = 1e-8)]
    tol_rel: f64,
    /// Subdivision budget per integral.
    #[arg(long, default_value_t = 2000)]
    max_subdivisions: usize,
}

impl QuadArgs {
    fn build(&self) -> QuadratureSpec {
        QuadratureSpec {
            abs_tol: self.tol_abs,
            rel_tol: self.tol_rel,
            max_subdivisions: self.max_subdivisions,
            singularity: None,
        }
    }
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    y: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    /// Exponent p set directly (claims whose domain is p in (-1, 1]).
    #[arg(long)]
    p: Option<f64>,
    /// Fractional order alpha in [0, 1); routed through (n, alpha).
    #[arg(long)]
    alpha: Option<f64>,
    /// Integer derivative order n.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
}

impl ParamArgs {
    fn collect(&self) -> BTreeMap<String, f64> {
        let mut params = BTreeMap::new();
        let mut put = |name: &str, value: Option<f64>| {
            if let Some(v) = value {
                params.insert(name.to_string(), v);
            }
        };
        put("a", self.a);
        put("b", self.b);
        put("x", self.x);
        put("y", self.y);
        put("t", self.t);
        put("p", self.p);
        put("alpha", self.alpha);
        put("n", self.n.map(f64::from));
        put("k", self.k.map(f64::from));
        put("s", self.s.map(f64::from));
        params
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim id, e.g. THM5-ELEM (see `claims list`).
    #[arg(long)]
    id: String,
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// Lemma interpretation: "u=y|x,kernel=def|proof".
    #[arg(long)]
    interp: Option<String>,
    #[command(flatten)]
    quad: QuadArgs,
    #[command(flatten)]
    output: OutputArgs,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    id: String,
    /// Searched region, e.g. "p=0:1,a=1:2,b=1:2,t=0:1".
    #[arg(long = "box")]
    search_box: String,
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    function: FunctionArgs,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    quad: QuadArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CaputoArgs {
    /// Which side to compute.
    #[arg(long, value_parser = ["left", "right"])]
    side: String,
    #[arg(long = "f")]
    function: String,
    /// Base point (left side) or evaluation point (right side).
    #[arg(long)]
    a: f64,
    /// Evaluation point (left side) or upper point (right side).
    #[arg(long)]
    x: f64,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    function: FunctionArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lemma interpretation for the identity claims.
    #[arg(long)]
    interp: Option<String>,
    #[command(flatten)]
    quad: QuadArgs,
    #[command(flatten)]
    output: OutputArgs,
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: EXIT_USAGE,
        }
    }
}

impl From<claims::ClaimError> for CliError {
    fn from(e: claims::ClaimError) -> Self {
        CliError::usage(e.to_string())
    }
}

fn parse_interp(source: Option<&str>) -> Result<IdentityInterpretation, CliError> {
    let mut interp = IdentityInterpretation::default();
    let Some(source) = source else {
        return Ok(interp);
    };
    for part in source.split(',').filter(|p| !p.trim().is_empty()) {
        match part.trim().split_once('=') {
            Some(("u", "y")) => interp.u_point = UPoint::EvalAtY,
            Some(("u", "x")) => interp.u_point = UPoint::EvalAtX,
            Some(("kernel", "def")) => interp.caputo_kernel_base = KernelBase::AsDefinedInA19,
            Some(("kernel", "proof")) => interp.caputo_kernel_base = KernelBase::AsUsedInProof,
            _ => {
                return Err(CliError::usage(format!(
                    "unknown interpretation '{part}'; expected u=y|x or kernel=def|proof"
                )))
            }
        }
    }
    Ok(interp)
}

fn write_output(content: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        None => {
            let _ = write!(std::io::stdout(), "{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
    }
}

fn emit_reports(
    reports: &[Report],
    format: OutputFormat,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    if reports.is_empty() {
        return Err(CliError::usage("nothing to report"));
    }
    let content = match format {
        OutputFormat::Json => emit_json(reports),
        OutputFormat::Csv => emit_csv(reports),
    };
    write_output(&content, out)
}

fn exit_code_for(reports: &[Report]) -> u8 {
    let any_fails = reports
        .iter()
        .any(|r| matches!(r.verdict.kind, VerdictKind::Fails { .. }));
    if any_fails {
        return EXIT_FAILS;
    }
    let any_indeterminate = reports
        .iter()
        .any(|r| matches!(r.verdict.kind, VerdictKind::Indeterminate { .. }));
    if any_indeterminate {
        return EXIT_INDETERMINATE;
    }
    EXIT_HOLDS
}

fn run_claims_list() -> Result<u8, CliError> {
    for claim in claims::list_claims() {
        let params = claim
            .params
            .iter()
            .map(|p| p.describe())
            .collect::<Vec<_>>()
            .join(", ");
        outln!("{:<12} {} [{params}]", claim.id, claim.paper_anchor);
        outln!("{:<12}   {}", "", claim.description);
    }
    Ok(EXIT_HOLDS)
}

fn run_claims_verify(args: &VerifyArgs) -> Result<u8, CliError> {
    let function = args.function.build()?;
    let quad = args.quad.build();
    let interp = parse_interp(args.interp.as_deref())?;
    let params = args.params.collect();
    let report = claims::evaluate_claim(
        &args.id,
        &params,
        function.as_ref(),
        &quad,
        interp,
        args.seed,
    )?;
    emit_reports(
        std::slice::from_ref(&report),
        args.output.format,
        args.output.out.as_ref(),
    )?;
    Ok(exit_code_for(std::slice::from_ref(&report)))
}

fn run_claims_search(args: &SearchArgs) -> Result<u8, CliError> {
    let function = args.function.build()?;
    let quad = args.quad.build();
    let search_box = SearchBox::parse(&args.search_box)?;
    let corpus: Vec<RealFunction> = function.into_iter().collect();
    let fixed = args.params.collect();
    let outcome = claims::search_counterexample(
        &args.id,
        &search_box,
        &fixed,
        &corpus,
        args.budget,
        args.seed,
        &quad,
    )?;
    match outcome {
        Some(hit) => {
            emit_reports(
                std::slice::from_ref(&hit.report),
                args.output.format,
                args.output.out.as_ref(),
            )?;
            Ok(EXIT_FAILS)
        }
        None => {
            outln!(
                "no counterexample found for {} within budget {}",
                args.id, args.budget
            );
            Ok(EXIT_HOLDS)
        }
    }
}

fn run_caputo(args: &CaputoArgs) -> Result<u8, CliError> {
    let lo = args.a.min(args.x) - 1.0;
    let hi = args.a.max(args.x) + 1.0;
    let f = RealFunction::parse(&args.function, lo, hi)
        .map_err(|e| CliError::usage(format!("--f: {e}")))?;
    let order = FracOrder::new(args.n, args.alpha).map_err(|e| CliError::usage(e.to_string()))?;
    let quad = args.quad.build();
    let value = match args.side.as_str() {
        "left" => fraccalc::caputo_left(&f, args.a, args.x, order, &quad),
        "right" => fraccalc::caputo_right(&f, args.a, args.x, order, &quad),
        other => return Err(CliError::usage(format!("unknown side '{other}'"))),
    }
    .map_err(|e| CliError::usage(e.to_string()))?;
    outln!("{value:.16}");
    Ok(EXIT_HOLDS)
}

fn run_report(args: &ReportArgs) -> Result<u8, CliError> {
    let function = args
        .function
        .build()?
        .unwrap_or_else(|| RealFunction::parse("x^2", 1.0, 100.0).expect("default function"));
    let quad = args.quad.build();
    let interp = parse_interp(args.interp.as_deref())?;
    let mut reports = Vec::new();
    for claim in claims::list_claims() {
        let params = claim.default_params();
        let report = claims::evaluate_claim(
            claim.id,
            &params,
            Some(&function),
            &quad,
            interp,
            Some(args.seed),
        )?;
        reports.push(report);
    }
    emit_reports(&reports, args.output.format, args.output.out.as_ref())?;
    Ok(exit_code_for(&reports))
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Claims { action } => match action {
            ClaimsAction::List => run_claims_list(),
            ClaimsAction::Verify(args) => run_claims_verify(args),
            ClaimsAction::Search(args) => run_claims_search(args),
        },
        Command::Caputo(args) => run_caputo(args),
        Command::Report(args) => run_report(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exits
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            let _ = write!(std::io::stdout(), "{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
