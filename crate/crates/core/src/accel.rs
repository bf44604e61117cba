//! Uniformly accelerated observers.
//!
//! A uniformly accelerated observer with acceleration `a` moves along the
//! hyperbola `(x₂ − y₂)² − (x₁ − y₁)² = a²` around the centre `ȳ`, and its
//! life-curve parametrized by proper time is
//!
//! ```text
//! lc(t) = (y₁ + a·sinh(t/a), y₂ + a·cosh(t/a), y₃, …, y_d)
//! ```
//!
//! Coordinates are certified interval enclosures. This module also extracts
//! comoving inertial frames, runs the identity suites for `sinh`, `cosh` and
//! `exp = cosh + sinh`, and fits reparametrizations between two curves.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{self, Curve, SampledCurve};
use crate::certified;
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::interval::RationalInterval;
use crate::minkowski::{self, PoincareMap, SpacetimePoint};
use crate::rational::{self, int, ratio, Rational};
use crate::report::{AxiomReport, LawCheck, Verdict};

/// Decimal digits used for curve coordinates unless configured otherwise.
pub const DEFAULT_DIGITS: u32 = 30;

#[derive(Debug, Clone)]
pub enum CurveKind {
    UnifAccel { a: Rational, center: Vec<Rational> },
    Inertial(PoincareMap),
    Custom(String),
}

/// A life-curve `t ↦ lc(t)` over all rational `t`, given by enclosures.
#[derive(Debug, Clone)]
pub struct LifeCurve {
    kind: CurveKind,
    curve: Curve,
}

fn rational_coords(p: &SpacetimePoint) -> Result<Vec<Rational>> {
    p.coords()
        .iter()
        .map(|c| c.as_rational().cloned().ok_or_else(|| Error::NotInContext(c.to_string(), "rational".into())))
        .collect()
}

fn rational_matrix(m: &PoincareMap) -> Result<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let linear = m
        .linear()
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.as_rational().cloned().ok_or_else(|| Error::NotInContext(c.to_string(), "rational".into())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((linear, rational_coords(m.translation())?))
}

/// `L x + b` on an interval vector, for a map with rational entries.
pub fn apply_to_enclosure(map: &PoincareMap, x: &[RationalInterval]) -> Result<Vec<RationalInterval>> {
    let (l, b) = rational_matrix(map)?;
    Ok(l.iter()
        .zip(&b)
        .map(|(row, bi)| {
            row.iter()
                .zip(x)
                .fold(RationalInterval::point(bi.clone()), |acc, (lij, xj)| acc.add(&xj.scale(lij)))
        })
        .collect())
}

/// The uniformly accelerated life-curve with acceleration `a` around `center`.
pub fn unif_lifecurve(a: &Rational, center: &SpacetimePoint) -> Result<LifeCurve> {
    unif_lifecurve_with_digits(a, center, DEFAULT_DIGITS)
}

pub fn unif_lifecurve_with_digits(a: &Rational, center: &SpacetimePoint, digits: u32) -> Result<LifeCurve> {
    if !a.is_positive() {
        return Err(Error::NonpositiveAcceleration(rational::to_exact_string(a)));
    }
    let y = rational_coords(center)?;
    let dim = y.len();
    // scaling by a loses about log10(a) digits
    let extra = rational::to_f64(a).log10().max(0.0).ceil() as u32 + 1;
    let (a1, y1) = (a.clone(), y.clone());
    let curve = Curve::enclosed(dim, move |t| {
        let (s, c) = certified::sinh_cosh(&(t / &a1), digits + extra);
        let mut out: Vec<RationalInterval> = y1.iter().cloned().map(RationalInterval::point).collect();
        out[0] = s.scale(&a1).add(&out[0]);
        out[1] = c.scale(&a1).add(&out[1]);
        out
    });
    let a2 = a.clone();
    let curve = curve.with_third_derivative_bound(move |t, h| {
        // |d³/dt³ a·sinh(t/a)| = |sinh(t/a)| / a², same for cosh
        let r = (t.abs() + h) / &a2;
        certified::cosh(&r, 4).enclosure.hi / (&a2 * &a2)
    });
    Ok(LifeCurve { kind: CurveKind::UnifAccel { a: a.clone(), center: y }, curve })
}

/// The life-curve `t ↦ T(t, 0, …, 0)` of an inertial observer.
pub fn inertial_lifecurve(map: &PoincareMap) -> Result<LifeCurve> {
    let (l, b) = rational_matrix(map)?;
    let dim = b.len();
    let curve = Curve::exact(dim, move |t| (0..dim).map(|i| &b[i] + &l[i][0] * t).collect())
        .with_third_derivative_bound(|_, _| Rational::zero());
    Ok(LifeCurve { kind: CurveKind::Inertial(map.clone()), curve })
}

impl LifeCurve {
    pub fn custom(label: impl Into<String>, curve: Curve) -> Self {
        LifeCurve { kind: CurveKind::Custom(label.into()), curve }
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn dim(&self) -> usize {
        self.curve.dim()
    }

    pub fn eval(&self, t: &Rational) -> Vec<RationalInterval> {
        self.curve.eval(t).expect("life-curves are defined on all rationals")
    }

    pub fn sampled(&self, grid: Vec<Rational>) -> Result<SampledCurve> {
        SampledCurve::new(self.curve.clone(), grid)
    }

    /// Certified `lc(1)₁ > lc(0)₁`.
    pub fn is_future_directed(&self) -> bool {
        self.eval(&int(1))[0].lo > self.eval(&int(0))[0].hi
    }

    /// `t ↦ lc(εt + c)` with `ε = ±1`.
    pub fn reparametrized(&self, epsilon: i64, c: Rational) -> LifeCurve {
        assert!(epsilon == 1 || epsilon == -1, "epsilon must be 1 or -1");
        let inner = self.curve.clone();
        let e = int(epsilon);
        let (e1, c1) = (e.clone(), c.clone());
        let curve = Curve::enclosed(self.dim(), move |t| inner.eval(&(&e1 * t + &c1)).expect("total curve"));
        let bound_src = self.curve.clone();
        let curve = curve.with_third_derivative_bound(move |t, h| {
            bound_src.third_derivative_bound(&(&e * t + &c), h).unwrap_or_else(|| rational::dyadic_unit(64).recip())
        });
        LifeCurve { kind: CurveKind::Custom(format!("reparametrized (epsilon = {epsilon})")), curve }
    }
}

/// The range condition: `(x₂ − y₂)² − (x₁ − y₁)² ∋ a²` and `x_i = y_i` beyond.
pub fn on_hyperbola(point: &[RationalInterval], a: &Rational, center: &[Rational]) -> bool {
    let d0 = point[0].sub(&RationalInterval::point(center[0].clone()));
    let d1 = point[1].sub(&RationalInterval::point(center[1].clone()));
    let lhs = d1.square().sub(&d0.square());
    lhs.contains(&(a * a)) && point[2..].iter().zip(&center[2..]).all(|(x, y)| x.contains(y))
}

/// A comoving inertial frame at one parameter value, with its tangency check.
#[derive(Debug, Clone)]
pub struct ComovingFrame {
    pub t: Rational,
    pub map: PoincareMap,
    /// Enclosure of the spatial velocity components.
    pub velocity: Vec<RationalInterval>,
    /// `(h, upper bound of |γ(t+h) − T(h, 0, …, 0)|², allowed bound²)`.
    pub deviations: Vec<(Rational, Rational, Rational)>,
}

impl ComovingFrame {
    pub fn passed(&self) -> bool {
        self.deviations.iter().all(|(_, d, b)| d <= b)
    }
}

impl Serialize for ComovingFrame {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let dev: Vec<serde_json::Value> = self
            .deviations
            .iter()
            .map(|(h, d, b)| {
                serde_json::json!({
                    "h": rational::to_exact_string(h),
                    "deviation_sq": rational::to_decimal_string(d, 30),
                    "bound_sq": rational::to_decimal_string(b, 30),
                })
            })
            .collect();
        let vel: Vec<[String; 2]> = self
            .velocity
            .iter()
            .map(|v| [rational::to_decimal_string(&v.lo, 12), rational::to_decimal_string(&v.hi, 12)])
            .collect();
        serde_json::json!({
            "t": rational::to_exact_string(&self.t),
            "map": self.map,
            "velocity": vel,
            "deviations": dev,
            "passed": self.passed(),
        })
        .serialize(s)
    }
}

fn norm_sq_upper(v: &[RationalInterval]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, c| {
        let m = c.mag();
        acc + &m * &m
    })
}

const COMOVING_STEPS: [i64; 3] = [10, 100, 1000];

/// The inertial frame that momentarily moves with `γ` at `γ(t)`.
///
/// The map sends the time axis to a line through (an exact rational
/// approximation of) `γ(t)` whose direction approximates `γ′(t)`. It is
/// accepted when `|γ(t+h) − T(h, 0, …, 0)| ≤ C·h²` for `h = 1/10, 1/100,
/// 1/1000`, with `C` from a second-derivative bound plus the approximation
/// error.
pub fn comoving_inertial(gamma: &LifeCurve, t: &Rational) -> Result<ComovingFrame> {
    comoving_with_digits(gamma, t, DEFAULT_DIGITS)
}

pub fn comoving_with_digits(gamma: &LifeCurve, t: &Rational, digits: u32) -> Result<ComovingFrame> {
    let dim = gamma.dim();
    let bits = digits * 3322 / 1000 + 16;
    match &gamma.kind {
        CurveKind::Inertial(map) => {
            let at = map.apply(&SpacetimePoint::from_rationals(
                FieldContext::Rational,
                &std::iter::once(t.clone()).chain(std::iter::repeat_n(Rational::zero(), dim - 1)).collect::<Vec<_>>(),
            )?)?;
            let frame = PoincareMap::new(map.linear().clone(), at)?;
            let (l, _) = rational_matrix(map)?;
            let velocity = (1..dim).map(|i| RationalInterval::point(&l[i][0] / &l[0][0])).collect();
            let deviations = tangency(gamma, t, &frame, |_| Rational::zero())?;
            Ok(ComovingFrame { t: t.clone(), map: frame, velocity, deviations })
        }
        CurveKind::UnifAccel { a, .. } => {
            // boost parameter u = tanh(t / 2a) gives velocity tanh(t / a)
            let (sh, ch) = certified::sinh_cosh(&(t / (a * int(2))), digits + 4);
            let u_iv = sh.div(&ch)?;
            let u = rational::round_down(&u_iv.midpoint(), bits);
            let (s, c) = certified::sinh_cosh(&(t / a), digits + 4);
            let mut velocity = vec![RationalInterval::point(Rational::zero()); dim - 1];
            velocity[0] = s.div(&c)?;
            let u_err = u_iv.width() + rational::dyadic_unit(bits);
            build_frame(gamma, t, &u, 1, &u_err, bits, velocity, |h| {
                let r = (t.abs() + h) / a;
                certified::cosh(&r, 4).enclosure.hi / a
            })
        }
        CurveKind::Custom(_) => {
            let h = rational::decimal_unit(4);
            let (d, _) = analysis::derivative_enclosure(&gamma.curve, t, &h)?;
            if !analysis::interval_minkowski_sq(&d).lo.is_positive() {
                return Err(Error::NotTimelike(rational::to_exact_string(t)));
            }
            if !d[0].lo.is_positive() {
                return Err(Error::ParameterOutOfRange("past-directed tangent".into()));
            }
            let axis = (1..dim).max_by(|&i, &j| d[i].mag().cmp(&d[j].mag()).then(j.cmp(&i))).unwrap();
            let small = rational::decimal_unit(9);
            if (1..dim).any(|i| i != axis && d[i].mag() > small) {
                return Err(Error::ParameterOutOfRange("tangent is not along a coordinate axis".into()));
            }
            let v = d[axis].midpoint() / d[0].midpoint();
            let (root, _) = rational::sqrt_bounds(&(int(1) - &v * &v), bits);
            let u = rational::round_down(&(&v / (int(1) + root)), bits);
            let mut velocity = vec![RationalInterval::point(Rational::zero()); dim - 1];
            velocity[axis - 1] = d[axis].div(&d[0])?;
            let u_err = d.iter().map(|c| c.width()).fold(Rational::zero(), |a, b| a + b);
            // second difference estimate of |γ″|
            let probe = ratio(1, 10);
            let m2 = {
                let p = gamma.eval(&(t + &probe));
                let q = gamma.eval(t);
                let r = gamma.eval(&(t - &probe));
                let worst = (0..dim)
                    .map(|i| p[i].add(&r[i]).sub(&q[i].scale(&int(2))).mag())
                    .max()
                    .unwrap_or_else(Rational::zero);
                worst / (&probe * &probe) * int(2) + int(1)
            };
            build_frame(gamma, t, &u, axis, &u_err, bits, velocity, move |_| m2.clone())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn build_frame(
    gamma: &LifeCurve,
    t: &Rational,
    u: &Rational,
    axis: usize,
    u_err: &Rational,
    bits: u32,
    velocity: Vec<RationalInterval>,
    second_derivative: impl Fn(&Rational) -> Rational,
) -> Result<ComovingFrame> {
    let dim = gamma.dim();
    let boost = minkowski::rational_boost(FieldContext::Rational, dim, u, axis)?;
    let here = gamma.eval(t);
    let p: Vec<Rational> = here.iter().map(|c| rational::round_down(&c.midpoint(), bits)).collect();
    let p_err = here.iter().map(|c| c.width()).max().unwrap_or_else(Rational::zero) + rational::dyadic_unit(bits);
    let frame = PoincareMap::new(boost.linear().clone(), SpacetimePoint::from_rationals(FieldContext::Rational, &p)?)?;
    // the boost's time column moves by at most 4/(1−u²)² per unit change of u
    let one = int(1);
    let lever = int(4) / ((&one - u * u) * (&one - u * u));
    let deviations = tangency(gamma, t, &frame, |h| {
        let slack = &p_err * int(dim as i64) + h * u_err * &lever * int(dim as i64);
        second_derivative(h) * h * h + slack
    })?;
    Ok(ComovingFrame { t: t.clone(), map: frame, velocity, deviations })
}

fn tangency(
    gamma: &LifeCurve,
    t: &Rational,
    frame: &PoincareMap,
    bound: impl Fn(&Rational) -> Rational,
) -> Result<Vec<(Rational, Rational, Rational)>> {
    let dim = gamma.dim();
    COMOVING_STEPS
        .iter()
        .map(|&k| {
            let h = ratio(1, k);
            let mut probe = vec![RationalInterval::point(Rational::zero()); dim];
            probe[0] = RationalInterval::point(h.clone());
            let image = apply_to_enclosure(frame, &probe)?;
            let actual = gamma.eval(&(t + &h));
            let diff: Vec<RationalInterval> = actual.iter().zip(&image).map(|(x, y)| x.sub(y)).collect();
            let b = bound(&h);
            Ok((h, norm_sq_upper(&diff), &b * &b))
        })
        .collect()
}

/// 21 points from -2 to 2.
pub fn default_grid() -> Vec<Rational> {
    analysis::uniform_grid(&int(-2), &int(2), 20)
}

fn sinh_curve(digits: u32) -> Curve {
    Curve::enclosed(1, move |t| vec![certified::sinh(t, digits).enclosure])
        .with_third_derivative_bound(|t, h| certified::cosh(&(t.abs() + h), 4).enclosure.hi)
}

fn cosh_curve(digits: u32) -> Curve {
    Curve::enclosed(1, move |t| vec![certified::cosh(t, digits).enclosure])
        .with_third_derivative_bound(|t, h| certified::cosh(&(t.abs() + h), 4).enclosure.hi)
}

/// `E = C + S`, each summand one digit tighter so `E` keeps width `10^-digits`.
fn exp_via_pair(t: &Rational, digits: u32) -> RationalInterval {
    let (s, c) = certified::sinh_cosh(t, digits + 1);
    s.add(&c)
}

fn exp_curve(digits: u32) -> Curve {
    Curve::enclosed(1, move |t| vec![exp_via_pair(t, digits)])
        .with_third_derivative_bound(|t, h| certified::exp(&(t.abs() + h), 4).enclosure.hi)
}

/// Derivative step and tolerance used by the identity suites.
fn derivative_step() -> (Rational, Rational) {
    (rational::decimal_unit(4), rational::decimal_unit(6))
}

/// A certified bracket `[lo, hi]` with `f(lo) < y < f(hi)` for increasing `f`,
/// narrowed towards `width`. `None` if no bracket is found within `[-1024, 1024]`.
pub fn bracket_increasing(
    f: impl Fn(&Rational) -> RationalInterval,
    y: &Rational,
    width: &Rational,
) -> Option<RationalInterval> {
    let limit = int(1024);
    let mut lo = int(-1);
    while f(&lo).hi >= *y {
        lo *= int(2);
        if lo.abs() > limit {
            return None;
        }
    }
    let mut hi = int(1);
    while f(&hi).lo <= *y {
        hi *= int(2);
        if hi > limit {
            return None;
        }
    }
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / int(2);
        let v = f(&mid);
        if v.hi < *y {
            lo = mid;
        } else if v.lo > *y {
            hi = mid;
        } else {
            // y sits inside the enclosure at mid: close in from both sides
            let q = width / int(4);
            let (l2, h2) = (&mid - &q, &mid + &q);
            if f(&l2).hi < *y {
                lo = l2;
            }
            if f(&h2).lo > *y {
                hi = h2;
            }
            break;
        }
    }
    Some(RationalInterval::closed(lo, hi))
}

fn strictly_increasing(values: &[RationalInterval]) -> Option<usize> {
    values.windows(2).position(|w| w[0].hi >= w[1].lo)
}

fn exact(q: &Rational) -> String {
    rational::to_exact_string(q)
}

fn sorted(grid: &[Rational]) -> Vec<Rational> {
    let mut g = grid.to_vec();
    g.sort();
    g.dedup();
    g
}

/// Identities of `S = sinh` and `C = cosh` on a grid.
pub fn check_hyperbolic_identities(digits: u32, grid: &[Rational]) -> AxiomReport {
    let grid = sorted(grid);
    let fine = digits.max(10) + 8;
    let (h, tol) = derivative_step();
    let mut report = AxiomReport::new("hyperbolic-identities");
    let vals: Vec<(RationalInterval, RationalInterval)> = grid.par_iter().map(|t| certified::sinh_cosh(t, digits)).collect();
    let one = int(1);

    let mut law = LawCheck::new("pythagorean-identity");
    for (t, (s, c)) in grid.iter().zip(&vals) {
        law.record(c.square().sub(&s.square()).contains(&one), || vec![format!("t = {}", exact(t))]);
    }
    report.push(law.finish());

    let (s0, c0) = certified::sinh_cosh(&Rational::zero(), digits);
    let zero_ok = s0 == RationalInterval::point(Rational::zero()) && c0 == RationalInterval::point(one.clone());
    report.push(if zero_ok {
        Verdict::pass("values-at-zero", 1)
    } else {
        Verdict::fail("values-at-zero", 1, vec![format!("S(0) in {s0}"), format!("C(0) in {c0}")])
    });

    let s1 = certified::sinh(&one, digits).enclosure;
    report.push(if s1.lo.is_positive() {
        Verdict::pass("sinh-positive-at-one", 1)
    } else {
        Verdict::fail("sinh-positive-at-one", 1, vec![format!("S(1) in {s1}")])
    });

    let mut law = LawCheck::new("parity");
    for t in &grid {
        let (sp, cp) = certified::sinh_cosh(t, digits);
        let (sm, cm) = certified::sinh_cosh(&-t, digits);
        law.record(sm == sp.neg() && cm == cp, || vec![format!("t = {}", exact(t))]);
    }
    report.push(
        law.finish()
            .with_note("corrected-per-proof: checks S(-t) = -S(t) and C(-t) = C(t); the even variant S(-t) = S(t) fails for t != 0"),
    );

    let (sc, cc) = (sinh_curve(fine), cosh_curve(fine));
    let derivs: Vec<Result<(Rational, RationalInterval, RationalInterval, RationalInterval, RationalInterval)>> = grid
        .par_iter()
        .map(|t| {
            let (ds, _) = analysis::derivative_enclosure(&sc, t, &h)?;
            let (dc, _) = analysis::derivative_enclosure(&cc, t, &h)?;
            let (s, c) = certified::sinh_cosh(t, fine);
            Ok((t.clone(), ds[0].clone(), dc[0].clone(), s, c))
        })
        .collect();
    let mut ident = LawCheck::new("derivative-identity");
    let mut pair = LawCheck::new("derivatives");
    for row in &derivs {
        match row {
            Ok((t, ds, dc, s, c)) => {
                let lhs = ds.square().sub(&dc.square());
                let dev = (&lhs.hi - &one).abs().max((&lhs.lo - &one).abs());
                ident.record(dev <= tol, || vec![format!("t = {}", exact(t))]);
                let ok = dc.sub(s).mag() <= tol && ds.sub(c).mag() <= tol;
                pair.record(ok, || vec![format!("t = {}", exact(t))]);
            }
            Err(e) => {
                ident.record(false, || vec![e.to_string()]);
                pair.record(false, || vec![e.to_string()]);
            }
        }
    }
    report.push(ident.finish().with_note("central differences at h = 1/10000 with truncation bound, tolerance 1/1000000"));
    report.push(pair.finish());

    let s_vals: Vec<RationalInterval> = vals.iter().map(|v| v.0.clone()).collect();
    let pos: Vec<RationalInterval> = grid.iter().zip(&vals).filter(|(t, _)| !t.is_negative()).map(|v| v.1 .1.clone()).collect();
    let neg: Vec<RationalInterval> = grid.iter().zip(&vals).filter(|(t, _)| !t.is_positive()).map(|v| v.1 .1.neg()).collect();
    let mono = [("S", strictly_increasing(&s_vals)), ("C on [0, oo)", strictly_increasing(&pos)), ("-C on (-oo, 0]", strictly_increasing(&neg))];
    let bad: Vec<String> = mono.iter().filter_map(|(n, p)| p.map(|i| format!("{n} not increasing after grid index {i}"))).collect();
    report.push(if bad.is_empty() { Verdict::pass("monotonicity", grid.len()) } else { Verdict::fail("monotonicity", grid.len(), bad) });

    let w = rational::decimal_unit(6);
    let s_targets = [int(-1_000_000), int(-1000), int(-10), ratio(-1, 2), int(0), ratio(3, 2), int(10), int(1000), int(1_000_000)];
    let c_targets = [int(1), ratio(101, 100), ratio(3, 2), int(10), int(1000), int(1_000_000)];
    let mut range = LawCheck::new("range");
    for y in &s_targets {
        let hit = bracket_increasing(|t| certified::sinh(t, digits).enclosure, y, &w);
        range.record(hit.is_some(), || vec![format!("S misses {}", exact(y))]);
    }
    for y in &c_targets {
        // C is increasing on [0, oo); C(0) = 1 exactly
        let hit = if y.is_one() {
            true
        } else {
            bracket_increasing(|t| certified::cosh(&t.clone().max(Rational::zero()), digits).enclosure, y, &w).is_some_and(|b| b.hi.is_positive())
        };
        range.record(hit, || vec![format!("C misses {}", exact(y))]);
    }
    for (t, (_, c)) in grid.iter().zip(&vals) {
        range.record(c.hi >= one, || vec![format!("C({}) below 1", exact(t))]);
    }
    report.push(range.finish());
    report
}

/// Properties of `E = C + S`, compared with an independent `exp` series.
pub fn check_exp_properties(digits: u32, grid: &[Rational]) -> AxiomReport {
    let grid = sorted(grid);
    let fine = digits.max(10) + 8;
    let (h, tol) = derivative_step();
    let mut report = AxiomReport::new("exp-properties");
    let one = int(1);
    let e = |t: &Rational| exp_via_pair(t, digits);

    let e0 = e(&Rational::zero());
    report.push(if e0 == RationalInterval::point(one.clone()) {
        Verdict::pass("value-at-zero", 1)
    } else {
        Verdict::fail("value-at-zero", 1, vec![format!("E(0) in {e0}")])
    });

    let e1 = e(&one);
    report.push(if e1.lo.is_positive() {
        Verdict::pass("positive-at-one", 1)
    } else {
        Verdict::fail("positive-at-one", 1, vec![format!("E(1) in {e1}")])
    });

    let vals: Vec<RationalInterval> = grid.par_iter().map(&e).collect();
    let mut law = LawCheck::new("reciprocal");
    for (t, v) in grid.iter().zip(&vals) {
        law.record(e(&-t).mul(v).contains(&one), || vec![format!("t = {}", exact(t))]);
    }
    report.push(law.finish());

    let ec = exp_curve(fine);
    let rows: Vec<(Rational, bool)> = grid
        .par_iter()
        .map(|t| {
            let ok = analysis::derivative_enclosure(&ec, t, &h)
                .map(|(d, _)| d[0].sub(&exp_via_pair(t, fine)).mag() <= tol)
                .unwrap_or(false);
            (t.clone(), ok)
        })
        .collect();
    let mut law = LawCheck::new("derivative");
    for (t, ok) in &rows {
        law.record(*ok, || vec![format!("t = {}", exact(t))]);
    }
    report.push(law.finish());

    report.push(match strictly_increasing(&vals) {
        None => Verdict::pass("monotonicity", grid.len()),
        Some(i) => Verdict::fail("monotonicity", grid.len(), vec![format!("not increasing after grid index {i}")]),
    });

    let w = rational::decimal_unit(6);
    let mut range = LawCheck::new("range");
    for y in [ratio(1, 1000), ratio(1, 2), int(1), int(2), int(1000), int(1_000_000)] {
        let hit = y.is_one() || bracket_increasing(|t| e(t), &y, &w).is_some();
        range.record(hit, || vec![format!("E misses {}", exact(&y))]);
    }
    for (t, v) in grid.iter().zip(&vals) {
        range.record(v.lo.is_positive(), || vec![format!("E({}) not positive", exact(t))]);
    }
    report.push(range.finish());

    let mut law = LawCheck::new("matches-exp-series");
    for (t, v) in grid.iter().zip(&vals) {
        let series = certified::exp(t, digits).enclosure;
        law.record(v.overlaps(&series), || vec![format!("t = {}", exact(t))]);
    }
    report.push(law.finish());
    report
}

/// Result of fitting `δ(t) = γ(εt + c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReparamFit {
    pub epsilon: i64,
    pub c: RationalInterval,
    pub checked: usize,
    /// Both curves pass through the same point at 0 and are future-directed,
    /// in which case the fit is forced to `ε = 1, c = 0`.
    pub same_start_future_directed: bool,
}

impl Serialize for ReparamFit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({
            "epsilon": self.epsilon,
            "c": self.c,
            "c_approx": rational::to_decimal_string(&self.c.midpoint(), 12),
            "checked": self.checked,
            "same_start_future_directed": self.same_start_future_directed,
        })
        .serialize(s)
    }
}

/// Parameter `s` with `γ(s)₁` inside the target time range, as an enclosure.
fn solve_time(gamma: &LifeCurve, target: &RationalInterval, increasing: bool, width: &Rational) -> Option<RationalInterval> {
    let sign = if increasing { int(1) } else { int(-1) };
    let f = |s: &Rational| gamma.eval(s)[0].scale(&sign);
    let ends = [&target.lo * &sign, &target.hi * &sign];
    let a = bracket_increasing(f, &ends[0].clone().min(ends[1].clone()), width)?;
    let b = bracket_increasing(f, &ends[0].clone().max(ends[1].clone()), width)?;
    Some(a.join(&b))
}

/// Fits `δ(t) = γ(εt + c)` from the first and last grid points, then
/// verifies it on the whole grid within `tol`.
pub fn reparam_check(gamma: &LifeCurve, delta: &LifeCurve, grid: &[Rational], tol: &Rational) -> Result<ReparamFit> {
    let grid = sorted(grid);
    let h = rational::decimal_unit(4);
    for (name, c) in [("gamma", gamma), ("delta", delta)] {
        let r = analysis::well_parametrized_check(&c.sampled(grid.clone())?, tol, &h)?;
        if !r.unit_speed {
            let t = r.first_failure.unwrap_or(r.worst_t);
            return Err(Error::NotWellParametrized(format!("{name} at t = {}", exact(&t))));
        }
    }
    let increasing = gamma.eval(&int(1))[0].midpoint() > gamma.eval(&int(0))[0].midpoint();
    let (t0, t1) = (&grid[0], &grid[grid.len() - 1]);
    let width = rational::decimal_unit(12);
    let s0 = solve_time(gamma, &delta.eval(t0)[0], increasing, &width).ok_or_else(|| Error::Mismatch(exact(t0)))?;
    let s1 = solve_time(gamma, &delta.eval(t1)[0], increasing, &width).ok_or_else(|| Error::Mismatch(exact(t1)))?;
    let ds = s1.midpoint() - s0.midpoint();
    let dt = t1 - t0;
    let epsilon = if ds.is_negative() { -1 } else { 1 };
    if (ds.abs() - &dt).abs() > tol * (int(1) + &dt) {
        return Err(Error::Mismatch(exact(t1)));
    }
    let c = s0.sub(&RationalInterval::point(int(epsilon) * t0));
    let cm = c.midpoint();
    for t in &grid {
        let expected = gamma.eval(&(int(epsilon) * t + &cm));
        let got = delta.eval(t);
        if expected.iter().zip(&got).any(|(x, y)| x.sub(y).mag() > *tol) {
            return Err(Error::Mismatch(exact(t)));
        }
    }
    let same_start = gamma.eval(&Rational::zero()).iter().zip(&delta.eval(&Rational::zero())).all(|(x, y)| x.sub(y).mag() <= *tol);
    let same_start_future_directed = same_start && gamma.is_future_directed() && delta.is_future_directed();
    if same_start_future_directed && (epsilon != 1 || c.mag() > *tol) {
        return Err(Error::Mismatch(exact(&Rational::zero())));
    }
    Ok(ReparamFit { epsilon, c, checked: grid.len(), same_start_future_directed })
}

/// Configuration of the uniformly-accelerated-observer check.
#[derive(Debug, Clone)]
pub struct UnifObConfig {
    pub a: Rational,
    pub center: Vec<Rational>,
    pub grid: Vec<Rational>,
    pub digits: u32,
}

impl UnifObConfig {
    pub fn unit(dim: usize) -> Self {
        UnifObConfig { a: int(1), center: vec![Rational::zero(); dim], grid: default_grid(), digits: DEFAULT_DIGITS }
    }
}

/// Existence, range, parametrization and local inertial behaviour of one
/// uniformly accelerated observer.
pub fn check_unif_observer(cfg: &UnifObConfig) -> Result<AxiomReport> {
    let dim = cfg.center.len();
    if dim < 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: dim });
    }
    let center = SpacetimePoint::from_rationals(FieldContext::Rational, &cfg.center)?;
    let lc = unif_lifecurve_with_digits(&cfg.a, &center, cfg.digits)?;
    let grid = sorted(&cfg.grid);
    let mut report = AxiomReport::new("uniformly-accelerated-observer");

    let mut law = LawCheck::new("hyperbola-range");
    let points: Vec<Vec<RationalInterval>> = grid.par_iter().map(|t| lc.eval(t)).collect();
    for (t, p) in grid.iter().zip(&points) {
        law.record(on_hyperbola(p, &cfg.a, &cfg.center), || vec![format!("t = {}", exact(t))]);
    }
    let mut apex = cfg.center.clone();
    apex[1] += &cfg.a;
    let at0 = lc.eval(&Rational::zero());
    law.record(at0.iter().zip(&apex).all(|(x, y)| x.contains(y)), || vec!["lc(0) is not the apex".into()]);
    report.push(law.finish());

    report.push(if lc.is_future_directed() {
        Verdict::pass("future-directed", 1)
    } else {
        Verdict::fail("future-directed", 1, vec!["lc(1) time not above lc(0) time".into()])
    });

    let wp = analysis::well_parametrized_check(&lc.sampled(grid.clone())?, &rational::decimal_unit(6), &rational::decimal_unit(4))?;
    report.push(wp.to_verdict("well-parametrized"));

    let frames: Vec<(Rational, Result<ComovingFrame>)> =
        grid.par_iter().map(|t| (t.clone(), comoving_with_digits(&lc, t, cfg.digits))).collect();
    let mut cmv = LawCheck::new("comoving-frames");
    let mut selfl = LawCheck::new("AxSelf-");
    let mut ev = LawCheck::new("AxEv-");
    let near = rational::decimal_unit(cfg.digits.saturating_sub(6));
    for (t, f) in &frames {
        let f = match f {
            Ok(f) => f,
            Err(e) => {
                cmv.record(false, || vec![format!("t = {}: {e}", exact(t))]);
                continue;
            }
        };
        cmv.record(f.passed(), || vec![format!("t = {}", exact(t))]);
        // the observer's own chart near t is x ↦ T(x − (t, 0, …)); its
        // worldline point lc(t) must map to (t, 0, …, 0)
        let inv = f.map.invert();
        let own = apply_to_enclosure(&inv, &lc.eval(t))?;
        selfl.record(own.iter().all(|c| c.mag() <= near), || vec![format!("t = {}", exact(t))]);
        // every nearby event m sees has coordinates in the chart, and the
        // chart maps them back to the same event exactly
        let mut offset = cfg.center.clone();
        for (i, o) in offset.iter_mut().enumerate() {
            *o = ratio(1 + i as i64, 1000);
        }
        let w: Vec<Rational> = lc.eval(t).iter().zip(&offset).map(|(c, o)| c.midpoint() + o).collect();
        let wp = SpacetimePoint::from_rationals(FieldContext::Rational, &w)?;
        let back = f.map.apply(&inv.apply(&wp)?)?;
        ev.record(back == wp, || vec![format!("t = {}", exact(t))]);
    }
    report.push(cmv.finish());
    report.push(selfl.finish().with_note("the observer's chart is assembled from its comoving frames"));
    report.push(ev.finish().with_note("the observer's chart is assembled from its comoving frames"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_hyperbola() -> LifeCurve {
        unif_lifecurve(&int(1), &SpacetimePoint::origin(FieldContext::Rational, 3)).unwrap()
    }

    fn approx(iv: &RationalInterval, x: f64, tol: f64) -> bool {
        (rational::to_f64(&iv.midpoint()) - x).abs() < tol
    }

    #[test]
    fn unit_hyperbola_points() {
        let lc = unit_hyperbola();
        let p0 = lc.eval(&int(0));
        assert_eq!(p0, vec![RationalInterval::point(int(0)), RationalInterval::point(int(1)), RationalInterval::point(int(0))]);
        let p1 = lc.eval(&int(1));
        assert!(approx(&p1[0], 1.1752, 1e-4) && approx(&p1[1], 1.5431, 1e-4));
        for t in default_grid() {
            assert!(on_hyperbola(&lc.eval(&t), &int(1), &[int(0), int(0), int(0)]));
        }
        assert!(lc.is_future_directed());
    }

    #[test]
    fn acceleration_must_be_positive() {
        let o = SpacetimePoint::origin(FieldContext::Rational, 3);
        assert!(matches!(unif_lifecurve(&int(0), &o), Err(Error::NonpositiveAcceleration(_))));
        assert!(matches!(unif_lifecurve(&int(-2), &o), Err(Error::NonpositiveAcceleration(_))));
    }

    #[test]
    fn shifted_hyperbola_range() {
        let center = SpacetimePoint::from_i64s(FieldContext::Rational, &[1, -2, 3]).unwrap();
        let a = ratio(5, 2);
        let lc = unif_lifecurve(&a, &center).unwrap();
        for t in default_grid() {
            assert!(on_hyperbola(&lc.eval(&t), &a, &[int(1), int(-2), int(3)]));
        }
    }

    #[test]
    fn comoving_at_apex_is_translation() {
        let f = comoving_inertial(&unit_hyperbola(), &int(0)).unwrap();
        assert!(f.passed());
        let expected = PoincareMap::translation_by(SpacetimePoint::from_i64s(FieldContext::Rational, &[0, 1, 0]).unwrap());
        assert_eq!(f.map, expected);
    }

    #[test]
    fn comoving_velocity_is_tanh() {
        let f = comoving_inertial(&unit_hyperbola(), &int(1)).unwrap();
        assert!(f.passed(), "{:?}", f.deviations);
        assert!(approx(&f.velocity[0], 1f64.tanh(), 1e-12));
        assert!(f.velocity[0].contains(&rational::parse_rational("0.76159415595576488811945828").unwrap()) || f.velocity[0].width() < rational::decimal_unit(20));
    }

    #[test]
    fn comoving_inertial_curve_is_itself() {
        let b = minkowski::rational_boost(FieldContext::Rational, 3, &ratio(1, 3), 1).unwrap();
        let lc = inertial_lifecurve(&b).unwrap();
        let f = comoving_inertial(&lc, &int(0)).unwrap();
        assert_eq!(f.map, b);
        assert!(f.deviations.iter().all(|(_, d, _)| d.is_zero()));
        let f2 = comoving_inertial(&lc, &int(2)).unwrap();
        assert!(f2.passed());
    }

    #[test]
    fn spacelike_custom_curve_is_rejected() {
        let c = LifeCurve::custom("spacelike", Curve::exact(3, |t| vec![Rational::zero(), t.clone(), Rational::zero()]));
        assert!(matches!(comoving_inertial(&c, &int(0)), Err(Error::NotTimelike(_))));
    }

    #[test]
    fn custom_unit_speed_line_has_frame() {
        // t ↦ (5t/4, 3t/4, 0) is a unit-speed timelike line
        let c = LifeCurve::custom("line", Curve::exact(3, |t| vec![t * ratio(5, 4), t * ratio(3, 4), Rational::zero()]));
        let f = comoving_inertial(&c, &int(0)).unwrap();
        assert!(f.passed(), "{:?}", f.deviations);
        assert!(approx(&f.velocity[0], 0.6, 1e-9));
    }

    #[test]
    fn identity_suites_pass() {
        let grid = default_grid();
        let r = check_hyperbolic_identities(10, &grid);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.verdicts.len(), 8);
        let e = check_exp_properties(10, &grid);
        assert!(e.all_passed(), "{:?}", e.failures().collect::<Vec<_>>());
    }

    #[test]
    fn exp_pair_matches_series_at_one() {
        let a = exp_via_pair(&int(1), 10);
        let b = certified::exp(&int(1), 10).enclosure;
        assert!(a.overlaps(&b));
        assert!(a.width() <= rational::decimal_unit(10));
        assert!(b.width() <= rational::decimal_unit(10));
    }

    #[test]
    fn reparametrizations() {
        let g = unit_hyperbola();
        let grid = analysis::uniform_grid(&int(-1), &int(1), 8);
        let tol = rational::decimal_unit(6);
        let id = reparam_check(&g, &g, &grid, &tol).unwrap();
        assert_eq!(id.epsilon, 1);
        assert!(id.c.contains(&Rational::zero()) || id.c.mag() < rational::decimal_unit(9));
        assert!(id.same_start_future_directed);

        let rev = reparam_check(&g, &g.reparametrized(-1, Rational::zero()), &grid, &tol).unwrap();
        assert_eq!(rev.epsilon, -1);
        assert!(rev.c.mag() < rational::decimal_unit(8));

        let shift = reparam_check(&g, &g.reparametrized(1, int(1)), &grid, &tol).unwrap();
        assert_eq!(shift.epsilon, 1);
        assert!((shift.c.midpoint() - int(1)).abs() < rational::decimal_unit(8));
        assert!(shift.c.width() <= rational::decimal_unit(8));
    }

    #[test]
    fn reparam_rejects_different_curves() {
        let g = unit_hyperbola();
        let other = unif_lifecurve(&int(2), &SpacetimePoint::origin(FieldContext::Rational, 3)).unwrap();
        let grid = analysis::uniform_grid(&int(-1), &int(1), 8);
        assert!(matches!(reparam_check(&g, &other, &grid, &rational::decimal_unit(6)), Err(Error::Mismatch(_))));
        let fast = LifeCurve::custom("fast", Curve::exact(3, |t| vec![t * int(2), int(0), int(0)]));
        assert!(matches!(
            reparam_check(&g, &fast, &grid, &rational::decimal_unit(6)),
            Err(Error::NotWellParametrized(_))
        ));
    }

    #[test]
    fn unif_observer_report() {
        let mut cfg = UnifObConfig::unit(3);
        cfg.grid = analysis::uniform_grid(&int(-2), &int(2), 8);
        let r = check_unif_observer(&cfg).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        cfg.center = vec![int(0), int(0)];
        assert!(matches!(check_unif_observer(&cfg), Err(Error::DimensionMismatch { .. })));
    }
}
