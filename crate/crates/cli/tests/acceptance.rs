//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use relnum::accel;
use relnum::algebraic::{check_real_closed, RcfConfig};
use relnum::analysis::{self, SampledCurve};
use relnum::certified;
use relnum::field::{check_ordered_field_axioms, check_ordered_field_laws, OrderedField};
use relnum::minkowski::{self, SpacetimePoint};
use relnum::rational::{self, int, ratio, Rational};
use relnum::sample::sample_rational;
use relnum::specrel::{check_axioms, Axiom, AxiomSampling, ModelSpec};
use relnum::transcendence::{transcendence_witness, Outcome, WitnessConfig, WitnessValue};
use relnum::{Error, FieldContext, IntPolynomial, RealAlgebraic, SampleConfig};

type Outcome9 = Result<String, String>;

/// Rationals with a deliberately wrong product `a·b + 1`.
struct BrokenMul;

impl OrderedField for BrokenMul {
    type Elem = Rational;

    fn name(&self) -> String {
        "broken-mul".into()
    }
    fn zero(&self) -> Rational {
        int(0)
    }
    fn one(&self) -> Rational {
        int(1)
    }
    fn add(&self, a: &Rational, b: &Rational) -> relnum::Result<Rational> {
        Ok(a + b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> relnum::Result<Rational> {
        Ok(a * b + int(1))
    }
    fn neg(&self, a: &Rational) -> relnum::Result<Rational> {
        Ok(-a)
    }
    fn inv(&self, a: &Rational) -> relnum::Result<Rational> {
        if a == &int(0) {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn equal(&self, a: &Rational, b: &Rational) -> relnum::Result<bool> {
        Ok(a == b)
    }
    fn leq(&self, a: &Rational, b: &Rational) -> relnum::Result<bool> {
        Ok(a <= b)
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn field_laws() -> Outcome9 {
    let start = Instant::now();
    let q = check_ordered_field_axioms(FieldContext::Rational, &SampleConfig { seed: 0, count: 200 });
    let ra = check_ordered_field_axioms(FieldContext::RealAlgebraic, &SampleConfig { seed: 0, count: 50 });
    if !q.all_passed() || !ra.all_passed() {
        return Err("a field law failed on a sound field".into());
    }
    let broken = check_ordered_field_laws(&BrokenMul, &sample_rational(&SampleConfig { seed: 0, count: 20 }));
    let caught = broken.failures().find(|v| v.witness.is_some()).ok_or("broken multiplication went unnoticed")?;
    within(Duration::from_secs(30), start)?;
    Ok(format!("rational 200 and real-algebraic 50 pass; fault caught by {}", caught.name))
}

fn real_closed() -> Outcome9 {
    let start = Instant::now();
    let r = check_real_closed(&RcfConfig::default());
    if !r.all_passed() {
        return Err(format!("failed: {:?}", r.failures().map(|v| &v.name).collect::<Vec<_>>()));
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!("{} verdicts, {} certificates", r.verdicts.len(), r.certificates.len()))
}

fn specrel_model() -> Outcome9 {
    let model = ModelSpec::standard(FieldContext::Rational, 3).build().map_err(|e| e.to_string())?;
    let r = check_axioms(&model, &Axiom::ALL, &AxiomSampling { seed: 0, samples: 500 });
    if !r.all_passed() {
        return Err(format!("failed: {:?}", r.failures().map(|v| &v.name).collect::<Vec<_>>()));
    }
    let ph = r.verdicts.iter().find(|v| v.name.contains("AxPh")).ok_or("no AxPh verdict")?;
    let note = ph.note.clone().unwrap_or_default();
    if note != "measured c_m^2: 1" {
        return Err(format!("unexpected light speed: {note}"));
    }
    if !r.verdicts.iter().any(|v| v.name == "worldview-transformations-poincare" && v.passed) {
        return Err("transformation verdict missing".into());
    }
    Ok(format!("{} verdicts, {note}", r.verdicts.len()))
}

fn boost_contexts() -> Outcome9 {
    let half = ratio(1, 2);
    match minkowski::boost_from_speed_sq(FieldContext::Rational, &half, 3, 1) {
        Err(Error::SqrtUnavailableInContext(..)) => {}
        other => return Err(format!("rational context gave {other:?}")),
    }
    let b = minkowski::boost_from_speed_sq(FieldContext::RealAlgebraic, &half, 3, 1).map_err(|e| e.to_string())?;
    if !minkowski::preserves_minkowski_form(b.linear()) {
        return Err("real-algebraic boost does not preserve the form".into());
    }
    Ok("rational refuses sqrt(1/2); real-algebraic boost is Lorentz".into())
}

fn hyperbola_well_parametrized() -> Outcome9 {
    let origin = SpacetimePoint::origin(FieldContext::Rational, 3);
    let gamma = accel::unif_lifecurve(&int(1), &origin).map_err(|e| e.to_string())?;
    let grid = analysis::uniform_grid(&int(-2), &int(2), 40);
    let sampled = SampledCurve::new(gamma.curve().clone(), grid).map_err(|e| e.to_string())?;
    let report = analysis::well_parametrized_check(&sampled, &rational::decimal_unit(6), &rational::decimal_unit(4))
        .map_err(|e| e.to_string())?;
    if !report.passed() {
        return Err(format!("worst deviation {} at t = {}", report.worst_deviation, report.worst_t));
    }
    Ok(format!("{} points, worst deviation {}", report.points, rational::to_scientific(&report.worst_deviation, 3)))
}

fn identities() -> Outcome9 {
    let grid = accel::default_grid();
    let hyp = accel::check_hyperbolic_identities(10, &grid);
    let exp = accel::check_exp_properties(10, &grid);
    for r in [&hyp, &exp] {
        if !r.all_passed() {
            return Err(format!("{}: {:?}", r.title, r.failures().map(|v| &v.name).collect::<Vec<_>>()));
        }
    }
    let width = rational::decimal_unit(10);
    for t in &grid {
        let (s, c) = certified::sinh_cosh(t, 11);
        let e = s.add(&c);
        let direct = certified::exp(t, 10).enclosure;
        if !e.overlaps(&direct) || e.width() > width || direct.width() > width {
            return Err(format!("enclosures disagree at t = {t}"));
        }
    }
    Ok(format!("{} + {} verdicts on {} points", hyp.verdicts.len(), exp.verdicts.len(), grid.len()))
}

fn witnesses() -> Outcome9 {
    let start = Instant::now();
    let e = transcendence_witness(&WitnessValue::euler(), &WitnessConfig::default()).map_err(|e| e.to_string())?;
    if e.outcome != Outcome::Certificate {
        return Err(format!("e: {:?}", e.outcome));
    }
    let sqrt2 = RealAlgebraic::from_int(2).sqrt().map_err(|e| e.to_string())?;
    let cases = [
        (WitnessValue::Algebraic(sqrt2), 2, 2, IntPolynomial::from_i64s(&[-2, 0, 1])),
        (WitnessValue::Algebraic(RealAlgebraic::from_rational(ratio(3, 2))), 1, 3, IntPolynomial::from_i64s(&[-3, 2])),
    ];
    for (value, max_degree, max_height, expected) in cases {
        let cfg = WitnessConfig { max_degree, max_height, ..WitnessConfig::default() };
        let c = transcendence_witness(&value, &cfg).map_err(|e| e.to_string())?;
        if c.outcome != Outcome::RootFound || c.root.as_ref() != Some(&expected) {
            return Err(format!("{}: {:?} {:?}", value.describe(), c.outcome, c.root));
        }
    }
    within(Duration::from_secs(600), start)?;
    Ok(format!(
        "e certified over {} candidates, pruning effectiveness {}, worst margin {}",
        e.candidates,
        rational::to_scientific(&e.pruning_effectiveness(), 6),
        rational::to_scientific(&e.worst_margin(), 6)
    ))
}

fn reparametrizations() -> Outcome9 {
    let origin = SpacetimePoint::origin(FieldContext::Rational, 3);
    let gamma = accel::unif_lifecurve(&int(1), &origin).map_err(|e| e.to_string())?;
    let grid = analysis::uniform_grid(&int(-1), &int(1), 8);
    let tol = rational::decimal_unit(6);
    let width = rational::decimal_unit(8);
    for (epsilon, c) in [(1, int(0)), (-1, int(0)), (1, int(1))] {
        let delta = gamma.reparametrized(epsilon, c.clone());
        let fit = accel::reparam_check(&gamma, &delta, &grid, &tol).map_err(|e| e.to_string())?;
        let off = fit.c.midpoint() - &c;
        let close = off <= width && -off <= width && fit.c.width() <= width;
        if fit.epsilon != epsilon || !close {
            return Err(format!("expected ({epsilon}, {c}), got ({}, {})", fit.epsilon, fit.c));
        }
    }
    Ok("(1, 0), (-1, 0) and (1, 1) recovered within 1e-8".into())
}

fn deterministic_reports() -> Outcome9 {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let commands: [&[&str]; 7] = [
        &["eval", "sqrt(2)*sqrt(2) - 2", "1/3 + 1/6"],
        &["verify-field", "--samples", "40"],
        &["verify-rcf"],
        &["verify-specrel", "--seed", "7"],
        &["verify-unifob"],
        &["witness-e"],
        &["reparam", "--shift", "1/2", "--reverse"],
    ];
    for args in commands {
        let mut bytes = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{}-{run}.json", args[0]));
            let mut argv = vec!["relnum"];
            argv.extend_from_slice(args);
            let path_text = path.to_string_lossy().into_owned();
            argv.extend(["--out", &path_text]);
            let (code, _) = relnum_cli::run_command(argv);
            if code != relnum_cli::EXIT_PASS {
                return Err(format!("{} exited with {code}", args[0]));
            }
            bytes.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        if bytes[0] != bytes[1] {
            return Err(format!("{} reports differ between runs", args[0]));
        }
    }
    Ok(format!("{} subcommands byte-identical across runs", commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome9); 9] = [
        ("ordered field laws and fault detection", field_laws),
        ("real closed field checks", real_closed),
        ("standard SpecRel model", specrel_model),
        ("boost needs square roots", boost_contexts),
        ("hyperbola is well parametrized", hyperbola_well_parametrized),
        ("hyperbolic and exponential identities", identities),
        ("transcendence witnesses", witnesses),
        ("reparametrization recovery", reparametrizations),
        ("deterministic reports", deterministic_reports),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
