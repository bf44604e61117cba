//! Falsifiable checks for derivatives, limits and well-parametrized curves.
//!
//! The `∀ε ∃δ` definitions cannot be decided mechanically, so each check runs
//! a finite schedule of `(ε, δ)` pairs over a grid inside the δ-neighbourhood.
//! Curve values are interval enclosures; a grid point counts as satisfying an
//! inequality only when the whole enclosure does, so numeric noise can make a
//! check fail but never pass.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::rational::{self, int, Rational};
use crate::report::Verdict;

pub type Evaluator = Arc<dyn Fn(&Rational) -> Vec<RationalInterval> + Send + Sync>;

/// `(t, h) ↦` a bound on every coordinate's third derivative over `[t-h, t+h]`.
pub type DerivativeBound = Arc<dyn Fn(&Rational, &Rational) -> Rational + Send + Sync>;

/// A function `H → Q^n` given by interval enclosures.
#[derive(Clone)]
pub struct Curve {
    dim: usize,
    domain: Option<RationalInterval>,
    eval: Evaluator,
    third_derivative: Option<DerivativeBound>,
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Curve").field("dim", &self.dim).field("domain", &self.domain).finish_non_exhaustive()
    }
}

impl Curve {
    /// A function with exact rational values.
    pub fn exact(dim: usize, f: impl Fn(&Rational) -> Vec<Rational> + Send + Sync + 'static) -> Self {
        Curve::enclosed(dim, move |t| f(t).into_iter().map(RationalInterval::point).collect())
    }

    /// A function known through enclosures of its values.
    pub fn enclosed(dim: usize, f: impl Fn(&Rational) -> Vec<RationalInterval> + Send + Sync + 'static) -> Self {
        Curve { dim, domain: None, eval: Arc::new(f), third_derivative: None }
    }

    /// Restrict to a domain; `None` means all of `Q`.
    pub fn with_domain(mut self, domain: RationalInterval) -> Self {
        self.domain = Some(domain);
        self
    }

    /// Supply a third-derivative bound, making finite-difference error certified.
    pub fn with_third_derivative_bound(
        mut self,
        bound: impl Fn(&Rational, &Rational) -> Rational + Send + Sync + 'static,
    ) -> Self {
        self.third_derivative = Some(Arc::new(bound));
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> Option<&RationalInterval> {
        self.domain.as_ref()
    }

    pub fn in_domain(&self, t: &Rational) -> bool {
        self.domain.as_ref().is_none_or(|d| d.contains(t))
    }

    pub fn eval(&self, t: &Rational) -> Result<Vec<RationalInterval>> {
        if !self.in_domain(t) {
            return Err(Error::OutOfDomain(rational::to_exact_string(t)));
        }
        let v = (self.eval)(t);
        debug_assert_eq!(v.len(), self.dim);
        Ok(v)
    }

    pub fn third_derivative_bound(&self, t: &Rational, h: &Rational) -> Option<Rational> {
        self.third_derivative.as_ref().map(|b| b(t, h))
    }
}

/// A curve together with the grid it is checked on.
#[derive(Clone, Debug)]
pub struct SampledCurve {
    pub curve: Curve,
    pub grid: Vec<Rational>,
}

impl SampledCurve {
    /// The grid must be strictly ascending, inside the domain, with at least two points.
    pub fn new(curve: Curve, grid: Vec<Rational>) -> Result<Self> {
        if grid.len() < 2 {
            return Err(Error::ParameterOutOfRange("grid needs at least two points".into()));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::ParameterOutOfRange("grid must be strictly ascending".into()));
        }
        if let Some(t) = grid.iter().find(|t| !curve.in_domain(t)) {
            return Err(Error::OutOfDomain(rational::to_exact_string(t)));
        }
        Ok(SampledCurve { curve, grid })
    }
}

/// `n + 1` evenly spaced points from `lo` to `hi`.
pub fn uniform_grid(lo: &Rational, hi: &Rational, n: usize) -> Vec<Rational> {
    let step = (hi - lo) / int(n as i64);
    (0..=n).map(|i| lo + &step * int(i as i64)).collect()
}

/// Central difference `(f(x₀+h) − f(x₀−h)) / 2h`.
pub fn finite_diff(f: &Curve, x0: &Rational, h: &Rational) -> Result<Vec<RationalInterval>> {
    if h.is_zero() {
        return Err(Error::ParameterOutOfRange("step h = 0".into()));
    }
    let plus = f.eval(&(x0 + h))?;
    let minus = f.eval(&(x0 - h))?;
    let inv = (h * int(2)).recip();
    Ok(plus.iter().zip(&minus).map(|(p, m)| p.sub(m).scale(&inv)).collect())
}

/// `v₁² − v₂² − … − v_d²` over interval components.
pub fn interval_minkowski_sq(v: &[RationalInterval]) -> RationalInterval {
    let mut acc = v[0].square();
    for c in &v[1..] {
        acc = acc.sub(&c.square());
    }
    acc
}

/// Upper bound of the squared Euclidean norm.
fn norm_sq_upper(v: &[RationalInterval]) -> Rational {
    v.iter().map(|c| {
        let m = c.mag();
        &m * &m
    }).fold(Rational::zero(), |a, b| a + b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleStep {
    pub epsilon: Rational,
    pub delta: Rational,
    pub points_per_side: usize,
}

/// `ε = 10⁻¹ … 10⁻⁶`, starting from `δ = ε/4`, 64 points on each side.
pub fn default_schedule() -> Vec<ScheduleStep> {
    (1..=6)
        .map(|k| {
            let epsilon = rational::decimal_unit(k);
            let delta = &epsilon / int(4);
            ScheduleStep { epsilon, delta, points_per_side: 64 }
        })
        .collect()
}

/// Worst grid point of one step: `ratio` bounds `lhs / rhs` from above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub t: Rational,
    pub ratio: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutcome {
    pub epsilon: Rational,
    pub delta: Rational,
    pub holds: bool,
    pub worst: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffVerdict {
    pub holds: bool,
    pub schedule: Vec<StepOutcome>,
}

impl DiffVerdict {
    /// The first step that failed, with its witness.
    pub fn first_failure(&self) -> Option<&StepOutcome> {
        self.schedule.iter().find(|s| !s.holds)
    }

    pub fn to_verdict(&self, name: &str) -> Verdict {
        let cases = self.schedule.len();
        match self.first_failure() {
            None => Verdict::pass(name, cases),
            Some(s) => {
                let mut w = vec![format!("epsilon = {}", rational::to_exact_string(&s.epsilon))];
                if let Some(x) = &s.worst {
                    w.push(format!("t = {}", rational::to_exact_string(&x.t)));
                }
                Verdict::fail(name, cases, w)
            }
        }
    }
}

impl Serialize for DiffVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let steps: Vec<serde_json::Value> = self
            .schedule
            .iter()
            .map(|st| {
                serde_json::json!({
                    "epsilon": rational::to_exact_string(&st.epsilon),
                    "delta": rational::to_exact_string(&st.delta),
                    "holds": st.holds,
                    "worst_t": st.worst.as_ref().map(|w| rational::to_exact_string(&w.t)),
                    "worst_ratio": st.worst.as_ref().map(|w| rational::to_decimal_string(&w.ratio, 6)),
                })
            })
            .collect();
        serde_json::json!({ "holds": self.holds, "schedule": steps }).serialize(s)
    }
}

fn neighbourhood(f: &Curve, x0: &Rational, step: &ScheduleStep) -> Vec<Rational> {
    let n = step.points_per_side.max(1);
    let unit = &step.delta / int(n as i64 + 1);
    let mut pts: Vec<Rational> = (1..=n as i64)
        .flat_map(|j| [x0 - &unit * int(j), x0 + &unit * int(j)])
        .filter(|x| f.in_domain(x))
        .collect();
    pts.sort();
    pts
}

/// How many times a step may halve its `δ` before the step fails.
pub const MAX_DELTA_HALVINGS: u32 = 24;

/// Evaluates one neighbourhood: whether every point passes, and the worst point.
fn run_step(
    f: &Curve,
    x0: &Rational,
    step: &ScheduleStep,
    ratio: &(impl Fn(&Rational, &ScheduleStep) -> Result<(Rational, Rational)> + Sync),
) -> (bool, Option<Witness>) {
    let pts = neighbourhood(f, x0, step);
    let rows: Vec<(Rational, Rational, bool)> = pts
        .par_iter()
        .map(|x| match ratio(x, step) {
            Ok((lhs, rhs)) => {
                let ok = lhs < rhs;
                let r = if rhs.is_zero() { lhs.clone() } else { &lhs / &rhs };
                (x.clone(), r, ok)
            }
            // an unevaluable point is a failure of the check, never a pass
            Err(_) => (x.clone(), int(i64::MAX), false),
        })
        .collect();
    let holds = rows.iter().all(|r| r.2);
    // points are ascending, so the first maximum is the smallest t
    let worst = rows.iter().fold(None::<&(Rational, Rational, bool)>, |best, r| match best {
        Some(b) if b.1 >= r.1 => Some(b),
        _ => Some(r),
    });
    (holds, worst.map(|w| Witness { t: w.0.clone(), ratio: w.1.clone() }))
}

fn passes(
    f: &Curve,
    x0: &Rational,
    step: &ScheduleStep,
    ratio: &(impl Fn(&Rational, &ScheduleStep) -> Result<(Rational, Rational)> + Sync),
) -> bool {
    neighbourhood(f, x0, step).par_iter().all(|x| ratio(x, step).is_ok_and(|(lhs, rhs)| lhs < rhs))
}

/// Runs one inequality `lhs(x) < rhs(x)` over every scheduled neighbourhood.
/// `ratio(x)` returns `(lhs upper bound, rhs)`. A step starts from its `δ`
/// and halves it until the neighbourhood passes or the halvings run out; the
/// outcome records the last `δ` tried.
fn run_schedule(
    f: &Curve,
    x0: &Rational,
    schedule: &[ScheduleStep],
    ratio: impl Fn(&Rational, &ScheduleStep) -> Result<(Rational, Rational)> + Sync,
) -> DiffVerdict {
    let mut outcomes = Vec::with_capacity(schedule.len());
    for step in schedule {
        let mut step = step.clone();
        let mut halvings = 0;
        // intermediate attempts stop at the first failing point; the witness
        // comes from a full pass over the final neighbourhood
        while halvings < MAX_DELTA_HALVINGS && !passes(f, x0, &step, &ratio) {
            step.delta /= int(2);
            halvings += 1;
        }
        let (holds, worst) = run_step(f, x0, &step, &ratio);
        outcomes.push(StepOutcome { epsilon: step.epsilon, delta: step.delta, holds, worst });
    }
    DiffVerdict { holds: outcomes.iter().all(|o| o.holds), schedule: outcomes }
}

/// Falsification check of `|f(x) − f(x₀) − A(x − x₀)| < ε|x − x₀|`.
pub fn diff_check(f: &Curve, x0: &Rational, a: &[Rational], schedule: &[ScheduleStep]) -> DiffVerdict {
    let base = match f.eval(x0) {
        Ok(v) => v,
        Err(_) => return DiffVerdict { holds: false, schedule: Vec::new() },
    };
    run_schedule(f, x0, schedule, |x, step| {
        let fx = f.eval(x)?;
        let dx = x - x0;
        let v: Vec<RationalInterval> = fx
            .iter()
            .zip(&base)
            .zip(a)
            .map(|((y, y0), ai)| y.sub(y0).sub(&RationalInterval::point(ai * &dx)))
            .collect();
        let rhs = &step.epsilon * &step.epsilon * &dx * &dx;
        Ok((norm_sq_upper(&v), rhs))
    })
}

/// Falsification check of `|f(x) − A| < ε` on the punctured neighbourhood.
pub fn limit_check(f: &Curve, x0: &Rational, a: &[Rational], schedule: &[ScheduleStep]) -> DiffVerdict {
    run_schedule(f, x0, schedule, |x, step| {
        let fx = f.eval(x)?;
        let v: Vec<RationalInterval> =
            fx.iter().zip(a).map(|(y, ai)| y.sub(&RationalInterval::point(ai.clone()))).collect();
        Ok((norm_sq_upper(&v), &step.epsilon * &step.epsilon))
    })
}

/// Outcome of the unit-speed test over a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellParamReport {
    pub points: usize,
    pub h: Rational,
    pub tolerance: Rational,
    /// Largest `|μ(γ′)² − 1|` bound over the grid.
    pub worst_deviation: Rational,
    pub worst_t: Rational,
    pub unit_speed: bool,
    pub future_directed: bool,
    /// Whether the truncation error came from a supplied derivative bound
    /// rather than a step-halving estimate.
    pub certified: bool,
    pub first_failure: Option<Rational>,
}

impl WellParamReport {
    /// Unit speed and future-directed.
    pub fn passed(&self) -> bool {
        self.unit_speed && self.future_directed
    }

    pub fn to_verdict(&self, name: &str) -> Verdict {
        let v = if self.passed() {
            Verdict::pass(name, self.points)
        } else {
            let t = self.first_failure.as_ref().unwrap_or(&self.worst_t);
            Verdict::fail(name, self.points, vec![format!("t = {}", rational::to_exact_string(t))])
        };
        v.with_note(format!(
            "worst |mu^2 - 1| = {} at t = {}",
            rational::to_decimal_string(&self.worst_deviation, 12),
            rational::to_exact_string(&self.worst_t)
        ))
    }
}

impl Serialize for WellParamReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({
            "points": self.points,
            "h": rational::to_exact_string(&self.h),
            "tolerance": rational::to_exact_string(&self.tolerance),
            "worst_deviation": rational::to_decimal_string(&self.worst_deviation, 12),
            "worst_t": rational::to_exact_string(&self.worst_t),
            "unit_speed": self.unit_speed,
            "future_directed": self.future_directed,
            "certified": self.certified,
            "passed": self.passed(),
        })
        .serialize(s)
    }
}

/// Enclosure of `γ′(t)` from a central difference of step `h`, widened by the
/// truncation error. Returns the enclosure and whether the widening was certified.
pub fn derivative_enclosure(f: &Curve, t: &Rational, h: &Rational) -> Result<(Vec<RationalInterval>, bool)> {
    let d = finite_diff(f, t, h)?;
    let h = h.abs();
    match f.third_derivative_bound(t, &h) {
        // |D_h − f′| ≤ M h² / 6
        Some(m) => {
            let e = m * &h * &h / int(6);
            Ok((d.iter().map(|c| c.widen(&e)).collect(), true))
        }
        None => {
            // Richardson: D_h − D_{h/2} ≈ (3/4) h² f‴/6, so the error of D_h is
            // about 4/3 of the gap; doubled for margin
            let half = &h / int(2);
            let d2 = finite_diff(f, t, &half)?;
            let w: Vec<RationalInterval> = d
                .iter()
                .zip(&d2)
                .map(|(a, b)| {
                    let gap = a.sub(b).mag() * rational::ratio(8, 3);
                    a.widen(&gap)
                })
                .collect();
            Ok((w, false))
        }
    }
}

/// Checks `μ(γ′(t)) = 1` and `γ′(t)₁ > 0` at every grid point, estimating
/// `γ′` with steps `h` and `h/2`.
pub fn well_parametrized_check(gamma: &SampledCurve, tolerance: &Rational, h: &Rational) -> Result<WellParamReport> {
    if gamma.curve.dim() < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: gamma.curve.dim() });
    }
    let one = int(1);
    let half = h / int(2);
    let rows: Vec<(Rational, Rational, bool, bool)> = gamma
        .grid
        .par_iter()
        .map(|t| {
            let mut dev = Rational::zero();
            let mut future = true;
            let mut certified = true;
            for step in [h, &half] {
                let (d, cert) = derivative_enclosure(&gamma.curve, t, step)?;
                certified &= cert;
                let m = interval_minkowski_sq(&d);
                let hi = (&m.hi - &one).abs();
                let lo = (&m.lo - &one).abs();
                dev = dev.max(hi).max(lo);
                future &= d[0].lo.is_positive();
            }
            Ok((t.clone(), dev, future, certified))
        })
        .collect::<Result<_>>()?;
    let mut worst = (Rational::zero(), gamma.grid[0].clone());
    for r in &rows {
        if r.1 > worst.0 {
            worst = (r.1.clone(), r.0.clone());
        }
    }
    let first_failure = rows.iter().find(|r| &r.1 > tolerance || !r.2).map(|r| r.0.clone());
    Ok(WellParamReport {
        points: rows.len(),
        h: h.clone(),
        tolerance: tolerance.clone(),
        unit_speed: &worst.0 <= tolerance,
        future_directed: rows.iter().all(|r| r.2),
        certified: rows.iter().all(|r| r.3),
        worst_deviation: worst.0,
        worst_t: worst.1,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certified;
    use crate::rational::ratio;

    fn scalar(f: impl Fn(&Rational) -> Rational + Send + Sync + 'static) -> Curve {
        Curve::exact(1, move |t| vec![f(t)])
    }

    fn short(epsilons: &[i64]) -> Vec<ScheduleStep> {
        epsilons
            .iter()
            .map(|&d| ScheduleStep { epsilon: ratio(1, d), delta: ratio(1, 4 * d), points_per_side: 16 })
            .collect()
    }

    #[test]
    fn central_differences() {
        let sq = scalar(|t| t * t);
        assert_eq!(finite_diff(&sq, &int(1), &ratio(1, 100)).unwrap(), vec![RationalInterval::point(int(2))]);
        let cube = scalar(|t| t * t * t);
        assert_eq!(finite_diff(&cube, &int(0), &ratio(1, 10)).unwrap(), vec![RationalInterval::point(ratio(1, 100))]);
        let c = scalar(|_| int(7));
        assert_eq!(finite_diff(&c, &int(3), &ratio(1, 2)).unwrap(), vec![RationalInterval::point(int(0))]);
    }

    #[test]
    fn domain_is_enforced() {
        let f = scalar(|t| t.clone()).with_domain(RationalInterval::closed(int(0), int(1)));
        assert!(matches!(finite_diff(&f, &int(0), &ratio(1, 10)), Err(Error::OutOfDomain(_))));
        assert!(matches!(finite_diff(&f, &int(0), &int(0)), Err(Error::ParameterOutOfRange(_))));
    }

    #[test]
    fn derivative_of_square() {
        let sq = scalar(|t| t * t);
        assert!(diff_check(&sq, &int(1), &[int(2)], &short(&[10, 100])).holds);
        assert!(diff_check(&sq, &int(1), &[int(2)], &default_schedule()).holds);
        // uniqueness: a wrong slope fails some scheduled epsilon
        let v = diff_check(&sq, &int(1), &[ratio(201, 100)], &default_schedule());
        assert!(!v.holds);
    }

    #[test]
    fn absolute_value_has_no_derivative() {
        let abs = scalar(|t| t.abs());
        let sched = vec![ScheduleStep { epsilon: ratio(1, 2), delta: ratio(1, 8), points_per_side: 8 }];
        let v = diff_check(&abs, &int(0), &[int(1)], &sched);
        assert!(!v.holds);
        assert!(v.schedule[0].worst.as_ref().unwrap().t.is_negative());
    }

    #[test]
    fn limits() {
        let id = scalar(|t| t.clone());
        assert!(limit_check(&id, &int(0), &[int(0)], &default_schedule()).holds);
        let step = scalar(|t| if t.is_positive() { int(1) } else { int(0) });
        let v = limit_check(&step, &int(0), &[int(0)], &short(&[10]));
        assert!(!v.holds);
        assert!(v.schedule[0].worst.as_ref().unwrap().t.is_positive());
    }

    #[test]
    fn certified_series_limit() {
        let s = Curve::enclosed(1, |t| vec![certified::sinh(t, 20).enclosure]);
        let at = certified::sinh(&ratio(1, 3), 20).midpoint();
        let x0 = ratio(1, 3);
        assert!(limit_check(&s, &x0, &[at], &short(&[10, 1000])).holds);
    }

    fn hyperbola() -> Curve {
        Curve::enclosed(3, |t| {
            let (s, c) = certified::sinh_cosh(t, 30);
            vec![s, c, RationalInterval::point(int(0))]
        })
        .with_third_derivative_bound(|t, h| {
            // |sinh‴|, |cosh‴| ≤ cosh(|t| + h) < 2^(|t|+h+1)
            let r = t.abs() + h;
            certified::cosh(&r, 4).enclosure.hi
        })
    }

    #[test]
    fn hyperbola_is_well_parametrized() {
        let grid = uniform_grid(&int(-2), &int(2), 20);
        let g = SampledCurve::new(hyperbola(), grid).unwrap();
        let r = well_parametrized_check(&g, &rational::decimal_unit(6), &rational::decimal_unit(4)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.certified);
    }

    #[test]
    fn speed_two_line_fails() {
        let g = SampledCurve::new(Curve::exact(3, |t| vec![t * int(2), int(0), int(0)]), vec![int(0), int(1)]).unwrap();
        let r = well_parametrized_check(&g, &rational::decimal_unit(6), &rational::decimal_unit(4)).unwrap();
        assert!(!r.unit_speed);
        assert_eq!(r.worst_deviation, int(3));
        let axis = SampledCurve::new(Curve::exact(3, |t| vec![t.clone(), int(0), int(0)]), vec![int(0), int(1)]).unwrap();
        let r = well_parametrized_check(&axis, &rational::decimal_unit(6), &rational::decimal_unit(4)).unwrap();
        assert!(r.passed());
        assert!(r.worst_deviation.is_zero());
    }

    #[test]
    fn truncation_error_is_quadratic() {
        // error of the central difference of sinh at 1, against cosh 1
        let s = Curve::enclosed(1, |t| vec![certified::sinh(t, 40).enclosure]);
        let truth = certified::cosh(&int(1), 40).midpoint();
        let err = |h: Rational| (finite_diff(&s, &int(1), &h).unwrap()[0].midpoint() - &truth).abs();
        let h = ratio(1, 100);
        let r = rational::to_f64(&(err(h.clone()) / err(&h / int(2))));
        assert!((3.5..=4.5).contains(&r), "ratio {r}");
    }

    #[test]
    fn grid_validation() {
        let c = Curve::exact(2, |t| vec![t.clone(), int(0)]);
        assert!(SampledCurve::new(c.clone(), vec![int(0)]).is_err());
        assert!(SampledCurve::new(c.clone(), vec![int(1), int(0)]).is_err());
        let bounded = c.with_domain(RationalInterval::closed(int(0), int(1)));
        assert!(matches!(SampledCurve::new(bounded, vec![int(0), int(2)]), Err(Error::OutOfDomain(_))));
    }
}
