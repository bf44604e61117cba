//! The `relnum` command line: argument parsing, command dispatch and the
//! canonical JSON report.
//!
//! [`run_command`] is the whole program minus I/O, so tests can drive it
//! directly. Exit codes: 0 when every check passes (or the value was
//! computed), 1 when a check fails or evaluation raises an error, 2 for usage
//! and parse errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use relnum::accel::{self, UnifObConfig};
use relnum::algebraic::{check_real_closed, RcfConfig};
use relnum::analysis;
use relnum::expr::{self, Env};
use relnum::field::check_ordered_field_axioms;
use relnum::rational::{self, int, Rational};
use relnum::report::{to_canonical_json, AxiomReport, Verdict};
use relnum::specrel::{check_axioms, Axiom, AxiomSampling, ModelSpec};
use relnum::transcendence::{transcendence_witness, Outcome, WitnessConfig, WitnessValue};
use relnum::{Error, FieldContext, FieldElement, SampleConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "relnum", version, about = "Exact number systems and relativity model checkers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct Common {
    /// Seed for every sampler.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add wall-clock timings to the report (breaks byte-identical output).
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate exact expressions; `name = expr` binds a name for later ones.
    Eval {
        #[arg(required = true)]
        expressions: Vec<String>,
        #[arg(long, default_value = "realalgebraic")]
        context: String,
        /// Decimal digits of the printed approximation.
        #[arg(long, default_value_t = 20)]
        digits: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Check the ordered-field laws on seeded samples.
    VerifyField {
        /// Only this context (default: rational and realalgebraic).
        #[arg(long)]
        context: Option<String>,
        /// Samples per context (default 200 rational, 50 realalgebraic).
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Check square roots and odd-degree roots of real algebraic numbers.
    VerifyRcf {
        /// Square-root samples; odd-degree samples are 3/5 of this.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        /// Largest absolute coefficient of the sampled polynomials.
        #[arg(long, default_value_t = 10)]
        max_height: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Build a special-relativity model and check its axioms.
    VerifySpecrel {
        #[arg(long, default_value = "rational")]
        context: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// JSON model description (default: identity plus three boosts).
        #[arg(long)]
        model: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check a uniformly accelerated observer and the sinh/cosh/exp identities.
    VerifyUnifob {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Digits of the identity-suite enclosures.
        #[arg(long, default_value_t = 10)]
        digits: u32,
        /// Acceleration `a > 0`.
        #[arg(long, default_value = "1")]
        accel: String,
        #[command(flatten)]
        common: Common,
    },
    /// Search for an integer polynomial vanishing at e within the bounds.
    WitnessE {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 100)]
        max_height: i64,
        #[arg(long, default_value_t = 60)]
        digits: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Recover `(ε, c)` from a hyperbola and its reparametrization `γ(εt + c)`.
    Reparam {
        #[arg(long, default_value = "1")]
        accel: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        shift: String,
        #[arg(long)]
        reverse: bool,
        #[command(flatten)]
        common: Common,
    },
}

/// Everything a run produces. Serialized with sorted keys.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: BTreeMap<String, Value>,
    pub passed: bool,
    pub checks: Vec<AxiomReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Value>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            config: BTreeMap::new(),
            passed: true,
            checks: Vec::new(),
            result: None,
            error: None,
            timings: None,
        }
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.config.insert(key.into(), v.into());
    }

    fn push(&mut self, r: AxiomReport) {
        self.passed &= r.all_passed();
        self.checks.push(r);
    }

    fn fail(mut self, e: impl ToString) -> Self {
        self.passed = false;
        self.error = Some(e.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }

    /// Human-readable lines for the terminal.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        if self.command == "eval" {
            if let Some(Value::Array(items)) = &self.result {
                for it in items {
                    let name = it.get("name").and_then(Value::as_str).map(|n| format!("{n} = ")).unwrap_or_default();
                    out.push_str(&format!("{name}{}\n", it["value"].as_str().unwrap_or("")));
                    if let Some(a) = it.get("approx").and_then(Value::as_str) {
                        out.push_str(&format!("  ~ {a}\n"));
                    }
                }
            }
        }
        for c in &self.checks {
            for v in &c.verdicts {
                let mark = if v.passed { "pass" } else { "FAIL" };
                out.push_str(&format!("{mark} {}/{} ({} cases)", c.title, v.name, v.cases));
                if let Some(w) = &v.witness {
                    out.push_str(&format!(" witness: {}", w.join("; ")));
                }
                out.push('\n');
            }
        }
        if self.command == "witness-e" || self.command == "reparam" {
            if let Some(r) = &self.result {
                for key in ["outcome", "root", "candidates", "pruning_effectiveness", "worst_margin", "epsilon", "c"] {
                    if let Some(v) = r.get(key) {
                        out.push_str(&format!("{key}: {v}\n"));
                    }
                }
            }
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        if self.command != "eval" {
            out.push_str(if self.passed { "all checks passed\n" } else { "some checks FAILED\n" });
        }
        out
    }
}

/// Writes the canonical JSON form of `report` to `path`.
pub fn emit_report(report: &Report, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, report.to_json())
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> (i32, Report)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            let mut r = Report::new("usage");
            r.passed = code == EXIT_PASS;
            r.error = Some(e.render().to_string());
            return (code, r);
        }
    };
    let start = Instant::now();
    let (code, mut report, common) = dispatch(cli.command);
    if common.timings {
        report.timings = Some(json!({ "elapsed_ms": start.elapsed().as_millis() as u64 }));
    }
    if let Some(path) = &common.out {
        if let Err(e) = emit_report(&report, path) {
            let r = report.fail(format!("cannot write {}: {e}", path.display()));
            return (EXIT_FAIL, r);
        }
    }
    (code, report)
}

fn exit_code(r: &Report) -> i32 {
    if r.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn usage(mut r: Report, e: impl ToString) -> (i32, Report) {
    r.passed = false;
    r.error = Some(e.to_string());
    (EXIT_USAGE, r)
}

fn parse_context(name: &str) -> Result<FieldContext, Error> {
    FieldContext::parse(name)
}

fn dispatch(cmd: Command) -> (i32, Report, Common) {
    match cmd {
        Command::Eval { expressions, context, digits, common } => {
            let (c, r) = cmd_eval(&expressions, &context, digits);
            (c, r, common)
        }
        Command::VerifyField { context, samples, common } => {
            let (c, r) = cmd_verify_field(context.as_deref(), samples, common.seed);
            (c, r, common)
        }
        Command::VerifyRcf { samples, max_degree, max_height, common } => {
            let (c, r) = cmd_verify_rcf(samples, max_degree, max_height, common.seed);
            (c, r, common)
        }
        Command::VerifySpecrel { context, dim, samples, model, common } => {
            let (c, r) = cmd_verify_specrel(&context, dim, samples, model.as_deref(), common.seed);
            (c, r, common)
        }
        Command::VerifyUnifob { dim, digits, accel, common } => {
            let (c, r) = cmd_verify_unifob(dim, digits, &accel);
            (c, r, common)
        }
        Command::WitnessE { max_degree, max_height, digits, common } => {
            let (c, r) = cmd_witness_e(max_degree, max_height, digits, common.timings);
            (c, r, common)
        }
        Command::Reparam { accel, shift, reverse, common } => {
            let (c, r) = cmd_reparam(&accel, &shift, reverse);
            (c, r, common)
        }
    }
}

fn element_json(v: &FieldElement, digits: u32) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("value".into(), v.to_string().into());
    if v.as_rational().is_none() {
        let iv = v.approx(digits);
        m.insert("approx".into(), rational::to_decimal_string(&iv.lo, digits as usize).into());
        m.insert("enclosure".into(), serde_json::to_value(&iv).expect("interval serializes"));
    }
    Value::Object(m)
}

fn cmd_eval(expressions: &[String], context: &str, digits: u32) -> (i32, Report) {
    let mut r = Report::new("eval");
    r.set("context", context);
    r.set("digits", digits);
    r.set("expressions", expressions.to_vec());
    let ctx = match parse_context(context) {
        Ok(c) => c,
        Err(e) => return usage(r, e),
    };
    let mut env = Env::new();
    let mut results = Vec::new();
    for text in expressions {
        let (name, body) = match split_binding(text) {
            Some((n, b)) => (Some(n), b),
            None => (None, text.as_str()),
        };
        let parsed = match expr::parse_expression(body) {
            Ok(p) => p,
            Err(e) => return usage(r, e),
        };
        match expr::eval(&parsed, ctx, &env) {
            Ok(v) => {
                let mut item = element_json(&v, digits);
                item["expression"] = body.trim().into();
                if let Some(n) = &name {
                    item["name"] = n.clone().into();
                    env.insert(n.clone(), v);
                }
                results.push(item);
            }
            Err(e) => {
                r.result = Some(Value::Array(results));
                return (EXIT_FAIL, r.fail(e));
            }
        }
    }
    r.result = Some(Value::Array(results));
    (EXIT_PASS, r)
}

/// `name = expr` with `name` an identifier.
fn split_binding(text: &str) -> Option<(String, &str)> {
    let (lhs, rhs) = text.split_once('=')?;
    let name = lhs.trim();
    let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    ok.then(|| (name.to_string(), rhs))
}

fn cmd_verify_field(context: Option<&str>, samples: Option<usize>, seed: u64) -> (i32, Report) {
    let mut r = Report::new("verify-field");
    r.set("seed", seed);
    let contexts = match context {
        Some(name) => match parse_context(name) {
            Ok(c) => vec![c],
            Err(e) => return usage(r, e),
        },
        None => vec![FieldContext::Rational, FieldContext::RealAlgebraic],
    };
    let mut counts = BTreeMap::new();
    for ctx in contexts {
        let count = samples.unwrap_or(if ctx.is_real_closed() { 50 } else { 200 });
        counts.insert(ctx.name().to_string(), Value::from(count));
        r.push(check_ordered_field_axioms(ctx, &SampleConfig { seed, count }));
    }
    r.set("samples", Value::Object(counts.into_iter().collect()));
    (exit_code(&r), r)
}

fn cmd_verify_rcf(samples: usize, max_degree: usize, max_height: i64, seed: u64) -> (i32, Report) {
    let mut r = Report::new("verify-rcf");
    let cfg = RcfConfig { seed, sqrt_samples: samples, odd_samples: samples * 3 / 5, max_degree, max_coeff: max_height };
    r.set("seed", seed);
    r.set("sqrt_samples", cfg.sqrt_samples);
    r.set("odd_samples", cfg.odd_samples);
    r.set("max_degree", max_degree);
    r.set("max_height", max_height);
    if max_degree == 0 || max_height < 1 {
        return usage(r, "need --max-degree >= 1 and --max-height >= 1");
    }
    r.push(check_real_closed(&cfg));
    (exit_code(&r), r)
}

fn cmd_verify_specrel(context: &str, dim: usize, samples: usize, model: Option<&Path>, seed: u64) -> (i32, Report) {
    let mut r = Report::new("verify-specrel");
    r.set("seed", seed);
    r.set("samples", samples);
    let spec = match model {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return usage(r, format!("cannot read {}: {e}", path.display())),
            };
            match ModelSpec::from_json(&text) {
                Ok(s) => s,
                Err(e) => return usage(r, e),
            }
        }
        None => match parse_context(context) {
            Ok(ctx) => ModelSpec::standard(ctx, dim),
            Err(e) => return usage(r, e),
        },
    };
    r.set("context", spec.context.clone());
    r.set("dim", spec.dim);
    r.set("observers", spec.observers.len());
    let built = match spec.build() {
        Ok(m) => m,
        Err(e) => return (EXIT_FAIL, r.fail(e)),
    };
    r.push(check_axioms(&built, &Axiom::ALL, &AxiomSampling { seed, samples }));
    (exit_code(&r), r)
}

fn cmd_verify_unifob(dim: usize, digits: u32, accel_text: &str) -> (i32, Report) {
    let mut r = Report::new("verify-unifob");
    r.set("dim", dim);
    r.set("digits", digits);
    r.set("accel", accel_text);
    let a = match rational::parse_rational(accel_text) {
        Ok(a) => a,
        Err(e) => return usage(r, e),
    };
    let cfg = UnifObConfig {
        a,
        center: vec![Rational::from_integer(0.into()); dim],
        grid: analysis::uniform_grid(&int(-2), &int(2), 40),
        digits: accel::DEFAULT_DIGITS,
    };
    match accel::check_unif_observer(&cfg) {
        Ok(rep) => r.push(rep),
        Err(e @ Error::NonpositiveAcceleration(_)) => return usage(r, e),
        Err(e @ Error::DimensionMismatch { .. }) => return usage(r, e),
        Err(e) => return (EXIT_FAIL, r.fail(e)),
    }
    let grid = accel::default_grid();
    r.push(accel::check_hyperbolic_identities(digits, &grid));
    r.push(accel::check_exp_properties(digits, &grid));
    (exit_code(&r), r)
}

fn cmd_witness_e(max_degree: usize, max_height: i64, digits: u32, timings: bool) -> (i32, Report) {
    let mut r = Report::new("witness-e");
    r.set("max_degree", max_degree);
    r.set("max_height", max_height);
    r.set("digits", digits);
    let cfg = WitnessConfig { max_degree, max_height, digits, digits_cap: digits.max(60) * 4, timings };
    match transcendence_witness(&WitnessValue::euler(), &cfg) {
        Ok(cert) => {
            let v = match cert.outcome {
                Outcome::Certificate => Verdict::pass("no-vanishing-candidate", cert.candidates as usize),
                _ => Verdict::fail(
                    "no-vanishing-candidate",
                    cert.candidates as usize,
                    cert.root.iter().chain(&cert.unresolved).map(|p| p.to_string()).collect(),
                ),
            };
            let mut rep = AxiomReport::new("transcendence-witness");
            rep.push(v.with_note(format!(
                "pruning effectiveness {}",
                rational::to_decimal_string(&cert.pruning_effectiveness(), 6)
            )));
            r.push(rep);
            r.result = Some(serde_json::to_value(&cert).expect("certificate serializes"));
            (exit_code(&r), r)
        }
        Err(e) => usage(r, e),
    }
}

fn cmd_reparam(accel_text: &str, shift_text: &str, reverse: bool) -> (i32, Report) {
    let mut r = Report::new("reparam");
    r.set("accel", accel_text);
    r.set("shift", shift_text);
    r.set("reverse", reverse);
    let (a, c) = match (rational::parse_rational(accel_text), rational::parse_rational(shift_text)) {
        (Ok(a), Ok(c)) => (a, c),
        (Err(e), _) | (_, Err(e)) => return usage(r, e),
    };
    let dim = relnum::minkowski::DEFAULT_DIM;
    let origin = relnum::minkowski::SpacetimePoint::origin(FieldContext::Rational, dim);
    let gamma = match accel::unif_lifecurve(&a, &origin) {
        Ok(g) => g,
        Err(e) => return usage(r, e),
    };
    let epsilon = if reverse { -1 } else { 1 };
    let delta = gamma.reparametrized(epsilon, c.clone());
    let grid = analysis::uniform_grid(&int(-1), &int(1), 8);
    let tol = rational::decimal_unit(6);
    let width = rational::decimal_unit(8);
    let mut rep = AxiomReport::new("reparametrization");
    match accel::reparam_check(&gamma, &delta, &grid, &tol) {
        Ok(fit) => {
            let off = fit.c.midpoint() - &c;
            let ok = fit.epsilon == epsilon && fit.c.width() <= width && off <= width && -off <= width;
            rep.push(if ok {
                Verdict::pass("recovers-epsilon-and-shift", fit.checked)
            } else {
                Verdict::fail("recovers-epsilon-and-shift", fit.checked, vec![format!("epsilon = {}, c in {}", fit.epsilon, fit.c)])
            });
            r.result = Some(serde_json::to_value(&fit).expect("fit serializes"));
            r.push(rep);
            (exit_code(&r), r)
        }
        Err(e) => {
            rep.push(Verdict::fail("recovers-epsilon-and-shift", grid.len(), vec![e.to_string()]));
            r.push(rep);
            (EXIT_FAIL, r.fail(e))
        }
    }
}
