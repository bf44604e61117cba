//! Real algebraic numbers: the real closure of the rationals, represented
//! exactly by a square-free integer polynomial and an isolating interval.
//!
//! Arithmetic goes through resultants; the right root of the resultant is
//! selected by interval arithmetic on ever finer isolating intervals. A
//! value that happens to be rational is detected and kept in rational form,
//! so comparisons and further arithmetic stay cheap.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::poly::{
    bisect_to_width, count_real_roots, isolate_real_roots, product_polynomial, sturm_sequence,
    sum_polynomial, IntPolynomial, Refined,
};
use crate::rational::{self, Rational};
use crate::report::{AxiomReport, LawCheck};
use crate::sample::{self, SampleConfig};

/// Leading coefficients above this many bits skip rational-root detection.
const RATIONAL_DETECT_BITS: u64 = 256;

#[derive(Clone)]
pub struct RealAlgebraic {
    /// Square-free, primitive, positive leading coefficient. Nonzero at 0
    /// unless the value itself is 0.
    defining: IntPolynomial,
    /// Open interval with non-root endpoints holding exactly one root.
    isolator: RationalInterval,
    /// Set when the value is known to be rational.
    exact: Option<Rational>,
}

impl RealAlgebraic {
    pub fn from_rational(q: Rational) -> Self {
        let defining = IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()]);
        let half = rational::ratio(1, 2);
        let isolator = RationalInterval::open(&q - &half, &q + &half);
        RealAlgebraic { defining, isolator, exact: Some(q) }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rational::int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The unique root of `defining` inside the open interval `isolator`.
    ///
    /// Fails if the polynomial is zero, an endpoint is a root, or the interval
    /// does not contain exactly one distinct root.
    pub fn new(defining: &IntPolynomial, isolator: &RationalInterval) -> Result<Self> {
        defining.require_nonzero()?;
        let q = defining.squarefree_part();
        for end in [&isolator.lo, &isolator.hi] {
            if q.sign_at(end) == Ordering::Equal {
                return Err(Error::EndpointIsRoot(rational::to_exact_string(end)));
            }
        }
        if q.degree() == Some(0) {
            return Err(Error::NotIsolating);
        }
        let seq = sturm_sequence(&q)?;
        let open = RationalInterval::open(isolator.lo.clone(), isolator.hi.clone());
        if count_real_roots(&seq, &open) != 1 {
            return Err(Error::NotIsolating);
        }
        Ok(Self::from_isolated(q, open.lo, open.hi))
    }

    /// The `index`-th smallest distinct real root of `p` (0-based).
    pub fn root_of(p: &IntPolynomial, index: usize) -> Result<Self> {
        let roots = isolate_real_roots(p)?;
        let iv = roots
            .get(index)
            .ok_or(Error::IndexOutOfRange { index, count: roots.len() })?;
        Ok(Self::from_isolated(p.squarefree_part(), iv.lo.clone(), iv.hi.clone()))
    }

    /// Like [`root_of`](Self::root_of) but only for odd-degree polynomials,
    /// which always have at least one real root.
    pub fn odd_root(p: &IntPolynomial, index: usize) -> Result<Self> {
        p.require_nonzero()?;
        let d = p.degree().unwrap_or(0);
        if d.is_multiple_of(2) {
            return Err(Error::EvenDegree(d));
        }
        Self::root_of(p, index)
    }

    /// `q` square-free with exactly one root in `(lo, hi)`, endpoints not roots.
    fn from_isolated(q: IntPolynomial, lo: Rational, hi: Rational) -> Self {
        let mut q = q.primitive_part();
        if q.coeff(0).is_zero() {
            if lo.is_negative() && hi.is_positive() {
                return Self::zero();
            }
            q = IntPolynomial::new(q.coeffs()[1..].to_vec());
        }
        if q.degree() == Some(1) {
            return Self::from_rational(Rational::new(-q.coeff(0), q.coeff(1)));
        }
        let mut out = RealAlgebraic {
            defining: q,
            isolator: RationalInterval::open(lo, hi),
            exact: None,
        };
        out.detect_rational();
        out
    }

    /// A rational root `a/b` of `q` has `b | lc(q)`, and two distinct
    /// rationals with denominators at most `L` are `1/L²` apart; so on an
    /// isolator narrower than that, the simplest rational inside is the only
    /// candidate.
    fn detect_rational(&mut self) {
        let lc = self.defining.leading_coeff();
        if lc.bits() > RATIONAL_DETECT_BITS {
            return;
        }
        let l = Rational::from_integer(lc.clone());
        let target = Rational::one() / (rational::int(2) * &l * &l);
        let (lo, hi) = match bisect_to_width(&self.defining, &self.isolator.lo, &self.isolator.hi, &target) {
            Refined::Exact(r) => {
                *self = Self::from_rational(r);
                return;
            }
            Refined::Interval(lo, hi) => (lo, hi),
        };
        let s = rational::simplest_between(&lo, &hi);
        if s.denom() <= &lc && self.defining.sign_at(&s) == Ordering::Equal {
            *self = Self::from_rational(s);
        } else {
            self.isolator = RationalInterval::open(lo, hi);
        }
    }

    pub fn defining(&self) -> &IntPolynomial {
        &self.defining
    }

    pub fn isolator(&self) -> &RationalInterval {
        &self.isolator
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn is_rational(&self) -> bool {
        self.exact.is_some()
    }

    pub fn degree(&self) -> usize {
        self.defining.degree().unwrap_or(0)
    }

    /// Closed enclosure: the point for rationals, else the isolator's hull.
    pub fn enclosure(&self) -> RationalInterval {
        match &self.exact {
            Some(q) => RationalInterval::point(q.clone()),
            None => self.isolator.hull(),
        }
    }

    /// Same number with an isolator of width at most `width`.
    pub fn refine(&self, width: &Rational) -> Self {
        if self.exact.is_some() || &self.isolator.width() <= width {
            return self.clone();
        }
        match bisect_to_width(&self.defining, &self.isolator.lo, &self.isolator.hi, width) {
            Refined::Exact(r) => Self::from_rational(r),
            Refined::Interval(lo, hi) => RealAlgebraic {
                defining: self.defining.clone(),
                isolator: RationalInterval::open(lo, hi),
                exact: None,
            },
        }
    }

    fn refine_step(&self) -> Self {
        self.refine(&(self.isolator.width() / rational::int(16)))
    }

    /// Enclosure of width at most `10^-digits`; a point for rationals.
    pub fn approx(&self, digits: u32) -> RationalInterval {
        match &self.exact {
            Some(q) => RationalInterval::point(q.clone()),
            None => self.refine(&rational::decimal_unit(digits)).isolator,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.exact {
            Some(q) => rational::to_f64(q),
            None => rational::to_f64(&self.refine(&rational::dyadic_unit(60)).isolator.midpoint()),
        }
    }

    /// Decimal digits of a point inside the isolator refined to `10^-places`.
    pub fn to_decimal_string(&self, places: u32) -> String {
        match &self.exact {
            Some(q) => rational::to_decimal_string(q, places as usize),
            None => {
                let iv = self.approx(places + 2);
                rational::to_decimal_string(&iv.midpoint(), places as usize)
            }
        }
    }

    pub fn signum(&self) -> Ordering {
        self.cmp_rational(&Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.exact.as_ref().is_some_and(Zero::is_zero)
    }

    /// Compare with a rational exactly.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        if let Some(e) = &self.exact {
            return e.cmp(q);
        }
        let mut a = self.clone();
        loop {
            if let Some(e) = &a.exact {
                return e.cmp(q);
            }
            if q <= &a.isolator.lo {
                return Ordering::Greater;
            }
            if q >= &a.isolator.hi {
                return Ordering::Less;
            }
            if a.defining.sign_at(q) == Ordering::Equal {
                return Ordering::Equal;
            }
            a = a.refine_step();
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        match (&self.exact, &other.exact) {
            (Some(p), Some(q)) => return p.cmp(q),
            (_, Some(q)) => return self.cmp_rational(q),
            (Some(p), _) => return other.cmp_rational(p).reverse(),
            _ => {}
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut equality_checked = false;
        loop {
            match (&a.exact, &b.exact) {
                (None, None) => {}
                _ => return a.cmp_exact(&b),
            }
            if a.isolator.hi <= b.isolator.lo {
                return Ordering::Less;
            }
            if b.isolator.hi <= a.isolator.lo {
                return Ordering::Greater;
            }
            if !equality_checked {
                equality_checked = true;
                // equal iff the common factor has a root in the overlap
                let g = a.defining.gcd(&b.defining);
                if g.degree().unwrap_or(0) > 0 {
                    let lo = a.isolator.lo.clone().max(b.isolator.lo.clone());
                    let hi = a.isolator.hi.clone().min(b.isolator.hi.clone());
                    let seq = sturm_sequence(&g).expect("gcd is nonzero");
                    if count_real_roots(&seq, &RationalInterval::open(lo, hi)) > 0 {
                        return Ordering::Equal;
                    }
                }
            }
            a = a.refine_step();
            b = b.refine_step();
        }
    }

    /// Pick the root of `r` that the operands' enclosures single out,
    /// refining the operands until exactly one root remains.
    fn select<F>(r: IntPolynomial, operands: &[&Self], enclose: F) -> Self
    where
        F: Fn(&[RationalInterval], u32) -> RationalInterval,
    {
        let r = r.squarefree_part();
        let seq = sturm_sequence(&r).expect("resultant is nonzero");
        let mut ops: Vec<Self> = operands.iter().map(|&a| a.clone()).collect();
        for round in 0u32.. {
            let encl: Vec<RationalInterval> = ops.iter().map(Self::enclosure).collect();
            let iv = enclose(&encl, round);
            if count_real_roots(&seq, &iv) == 1 {
                for end in [&iv.lo, &iv.hi] {
                    if r.sign_at(end) == Ordering::Equal {
                        return Self::from_rational(end.clone());
                    }
                }
                return Self::from_isolated(r, iv.lo, iv.hi);
            }
            ops = ops.iter().map(Self::refine_step).collect();
        }
        unreachable!()
    }

    pub fn neg(&self) -> Self {
        match &self.exact {
            Some(q) => Self::from_rational(-q),
            None => RealAlgebraic {
                defining: self.defining.compose_neg().primitive_part(),
                isolator: self.isolator.neg(),
                exact: None,
            },
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (&self.exact, &other.exact) {
            (Some(p), Some(q)) => Self::from_rational(p + q),
            (Some(q), None) => other.shift(q),
            (None, Some(q)) => self.shift(q),
            (None, None) => {
                let r = sum_polynomial(&self.defining, &other.defining);
                Self::select(r, &[self, other], |e, _| e[0].add(&e[1]))
            }
        }
    }

    fn shift(&self, q: &Rational) -> Self {
        let iso = &self.isolator;
        Self::from_isolated(self.defining.shift(q), &iso.lo + q, &iso.hi + q)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.exact, &other.exact) {
            (Some(p), Some(q)) => Self::from_rational(p * q),
            (Some(q), None) => other.scale(q),
            (None, Some(q)) => self.scale(q),
            (None, None) => {
                if self.defining == other.defining && self.isolator.overlaps(&other.isolator) {
                    // same polynomial, and isolators of one root overlap only
                    // around that root
                    if self.cmp_exact(other) == Ordering::Equal {
                        return self.square();
                    }
                }
                let r = product_polynomial(&self.defining, &other.defining);
                Self::select(r, &[self, other], |e, _| e[0].mul(&e[1]))
            }
        }
    }

    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let iv = self.isolator.scale(q);
        Self::from_isolated(self.defining.scale_var(q), iv.lo, iv.hi)
    }

    pub fn square(&self) -> Self {
        if let Some(q) = &self.exact {
            return Self::from_rational(q * q);
        }
        let mut a = self.clone();
        while a.exact.is_none() && a.isolator.hull().contains_zero() {
            a = a.refine_step();
        }
        if a.exact.is_some() {
            return a.square();
        }
        Self::select(a.defining.graeffe(), &[&a], |e, _| e[0].square())
    }

    pub fn inv(&self) -> Result<Self> {
        if let Some(q) = &self.exact {
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::from_rational(q.recip()));
        }
        let mut a = self.clone();
        while a.exact.is_none() && a.isolator.hull().contains_zero() {
            a = a.refine_step();
        }
        if a.exact.is_some() {
            return a.inv();
        }
        let (lo, hi) = (a.isolator.hi.recip(), a.isolator.lo.recip());
        Ok(Self::from_isolated(a.defining.reverse(), lo, hi))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// The nonnegative square root. Fails for negative arguments.
    pub fn sqrt(&self) -> Result<Self> {
        match self.signum() {
            Ordering::Less => return Err(Error::NegativeArgument(self.to_string())),
            Ordering::Equal => return Ok(Self::zero()),
            Ordering::Greater => {}
        }
        if let Some(q) = &self.exact {
            if let Some(r) = rational::exact_sqrt(q) {
                return Ok(Self::from_rational(r));
            }
        }
        let mut a = self.clone();
        while a.exact.is_none() && a.isolator.lo.is_negative() {
            a = a.refine_step();
        }
        Ok(Self::select(a.defining.compose_square(), &[&a], |e, round| {
            // precision grows with the operand's refinement and the round
            let w = e[0].width();
            let wbits = if w.is_zero() { 0 } else { w.denom().bits().saturating_sub(w.numer().bits()) };
            let bits = 16 + 4 * round + wbits as u32;
            let (lo, _) = rational::sqrt_bounds(&e[0].lo, bits);
            let (_, hi) = rational::sqrt_bounds(&e[0].hi, bits);
            RationalInterval::closed(lo, hi)
        }))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact description: the rational itself, or the defining polynomial
    /// together with the isolator.
    pub fn to_exact_string(&self) -> String {
        self.to_string()
    }
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl Eq for RealAlgebraic {}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlgebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(q) => write!(f, "{}", rational::to_exact_string(q)),
            None => write!(
                f,
                "root of {} in ({}, {})",
                self.defining,
                rational::to_exact_string(&self.isolator.lo),
                rational::to_exact_string(&self.isolator.hi)
            ),
        }
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealAlgebraic({self})")
    }
}

impl Serialize for RealAlgebraic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        let coeffs: Vec<String> = self.defining.coeffs().iter().map(BigInt::to_string).collect();
        m.serialize_entry("defining", &coeffs)?;
        m.serialize_entry("isolator", &self.isolator)?;
        if let Some(q) = &self.exact {
            m.serialize_entry("rational", &rational::to_exact_string(q))?;
        }
        m.end()
    }
}

impl std::ops::Add for &RealAlgebraic {
    type Output = RealAlgebraic;
    fn add(self, rhs: Self) -> RealAlgebraic {
        RealAlgebraic::add(self, rhs)
    }
}

impl std::ops::Sub for &RealAlgebraic {
    type Output = RealAlgebraic;
    fn sub(self, rhs: Self) -> RealAlgebraic {
        RealAlgebraic::sub(self, rhs)
    }
}

impl std::ops::Mul for &RealAlgebraic {
    type Output = RealAlgebraic;
    fn mul(self, rhs: Self) -> RealAlgebraic {
        RealAlgebraic::mul(self, rhs)
    }
}

impl std::ops::Neg for &RealAlgebraic {
    type Output = RealAlgebraic;
    fn neg(self) -> RealAlgebraic {
        RealAlgebraic::neg(self)
    }
}

pub fn ra_from_rational(q: Rational) -> RealAlgebraic {
    RealAlgebraic::from_rational(q)
}

pub fn ra_sqrt(a: &RealAlgebraic) -> Result<RealAlgebraic> {
    a.sqrt()
}

pub fn ra_odd_root(p: &IntPolynomial, index: usize) -> Result<RealAlgebraic> {
    RealAlgebraic::odd_root(p, index)
}

pub fn ra_approx(a: &RealAlgebraic, digits: u32) -> RationalInterval {
    a.approx(digits)
}

/// Parameters for the real-closedness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RcfConfig {
    pub seed: u64,
    pub sqrt_samples: usize,
    pub odd_samples: usize,
    pub max_degree: usize,
    pub max_coeff: i64,
}

impl Default for RcfConfig {
    fn default() -> Self {
        RcfConfig { seed: 0, sqrt_samples: 50, odd_samples: 30, max_degree: 5, max_coeff: 10 }
    }
}

/// Random polynomial of odd degree `≤ max_degree` with coefficients in
/// `[-max_coeff, max_coeff]` and a nonzero leading coefficient.
pub fn random_odd_polynomial(rng: &mut ChaCha8Rng, max_degree: usize, max_coeff: i64) -> IntPolynomial {
    let odd_degrees: Vec<usize> = (1..=max_degree.max(1)).filter(|d| d % 2 == 1).collect();
    let d = odd_degrees[rng.gen_range(0..odd_degrees.len())];
    let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-max_coeff..=max_coeff)).collect();
    let mut lead = 0;
    while lead == 0 {
        lead = rng.gen_range(-max_coeff..=max_coeff);
    }
    c.push(lead);
    IntPolynomial::from_i64s(&c)
}

/// Check the two real-closedness properties on random instances: every
/// nonnegative element has a square root, and every odd-degree polynomial
/// has a root. Each instance carries a certificate: the Sturm count of the
/// result's isolator, and a sign change across it.
pub fn check_real_closed(cfg: &RcfConfig) -> AxiomReport {
    let mut report = AxiomReport::new("real-closed-field");
    let samples = sample::sample_algebraic(&SampleConfig { seed: cfg.seed, count: cfg.sqrt_samples });

    let mut sqrt_law = LawCheck::new("sqrt-of-nonnegative");
    for a in samples {
        let a = if a.signum() == Ordering::Less { a.neg() } else { a };
        let result = a.sqrt();
        let (ok, cert) = match &result {
            Ok(r) => {
                let (count, change) = isolation_certificate(r.defining(), r);
                let squares_back = r.square() == a;
                let ok = r.signum() != Ordering::Less && squares_back && count == 1 && change;
                let cert = serde_json::json!({
                    "kind": "sqrt",
                    "input": a.to_string(),
                    "root": r.to_string(),
                    "sturm_count": count,
                    "sign_change": change,
                    "squares_back": squares_back,
                });
                (ok, cert)
            }
            Err(e) => (false, serde_json::json!({"kind": "sqrt", "input": a.to_string(), "error": e.to_string()})),
        };
        sqrt_law.record(ok, || vec![a.to_string()]);
        report.certificates.push(cert);
    }
    report.push(sqrt_law.finish());

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6f64_6472_6f6f_7473);
    let mut odd_law = LawCheck::new("odd-degree-root");
    for _ in 0..cfg.odd_samples {
        let p = random_odd_polynomial(&mut rng, cfg.max_degree, cfg.max_coeff);
        let (ok, cert) = match RealAlgebraic::odd_root(&p, 0) {
            Ok(r) => {
                let (count, change) = isolation_certificate(&p.squarefree_part(), &r);
                let cert = serde_json::json!({
                    "kind": "odd-root",
                    "polynomial": p.to_string(),
                    "root": r.to_string(),
                    "sturm_count": count,
                    "sign_change": change,
                });
                (count == 1 && change, cert)
            }
            Err(e) => (false, serde_json::json!({"kind": "odd-root", "polynomial": p.to_string(), "error": e.to_string()})),
        };
        odd_law.record(ok, || vec![p.to_string()]);
        report.certificates.push(cert);
    }
    report.push(odd_law.finish());
    report
}

/// Sturm count of `q` on the value's isolator, and whether `q` changes sign
/// across it. A rational value is certified on a small interval around it.
fn isolation_certificate(q: &IntPolynomial, r: &RealAlgebraic) -> (usize, bool) {
    let iv = match r.as_rational() {
        Some(x) => {
            let q_sf = q.squarefree_part();
            if q_sf.sign_at(x) != Ordering::Equal {
                return (0, false);
            }
            // shrink until the interval isolates x
            let seq = sturm_sequence(&q_sf).expect("nonzero");
            let mut h = Rational::one();
            loop {
                let iv = RationalInterval::open(x - &h, x + &h);
                if count_real_roots(&seq, &iv.hull()) == 1 {
                    break iv;
                }
                h /= rational::int(2);
            }
        }
        None => r.isolator().clone(),
    };
    let q = q.squarefree_part();
    let seq = sturm_sequence(&q).expect("nonzero");
    let count = count_real_roots(&seq, &iv);
    let change = q.sign_at(&iv.lo) != Ordering::Equal && q.sign_at(&iv.lo) == q.sign_at(&iv.hi).reverse();
    (count, change)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn sqrt_of(n: i64) -> RealAlgebraic {
        RealAlgebraic::from_int(n).sqrt().unwrap()
    }

    #[test]
    fn sqrt_two_representation() {
        let r = sqrt_of(2);
        assert_eq!(r.defining(), &p(&[-2, 0, 1]));
        assert!(r.isolator().lo >= int(1) && r.isolator().hi <= int(2));
        assert!(!r.is_rational());
    }

    #[test]
    fn perfect_square_roots_are_rational() {
        assert_eq!(RealAlgebraic::from_rational(ratio(9, 4)).sqrt().unwrap().as_rational(), Some(&ratio(3, 2)));
        assert!(RealAlgebraic::from_int(-1).sqrt().is_err());
    }

    #[test]
    fn sqrt2_plus_sqrt3() {
        let s = sqrt_of(2).add(&sqrt_of(3));
        assert_eq!(s.defining(), &p(&[1, 0, -10, 0, 1]));
        let f = s.to_f64();
        assert!((f - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn cancellation_becomes_rational() {
        let r2 = sqrt_of(2);
        assert!(r2.sub(&r2).is_zero());
        assert_eq!(r2.mul(&r2).as_rational(), Some(&int(2)));
        let r6 = sqrt_of(2).mul(&sqrt_of(3));
        assert_eq!(r6, sqrt_of(6));
        // (1 + √2)(√2 − 1) = 1
        let one = RealAlgebraic::one();
        let prod = one.add(&r2).mul(&r2.sub(&one));
        assert_eq!(prod.as_rational(), Some(&int(1)));
    }

    #[test]
    fn inverse_and_division() {
        let r2 = sqrt_of(2);
        let inv = r2.inv().unwrap();
        assert_eq!(inv.mul(&r2).as_rational(), Some(&int(1)));
        assert_eq!(inv, sqrt_of(2).mul(&RealAlgebraic::from_rational(ratio(1, 2))));
        assert!(RealAlgebraic::zero().inv().is_err());
    }

    #[test]
    fn ordering() {
        assert!(sqrt_of(2) < sqrt_of(3));
        assert!(sqrt_of(2).neg() < RealAlgebraic::zero());
        assert_eq!(sqrt_of(2).cmp_rational(&ratio(7, 5)), Ordering::Greater);
        assert_eq!(sqrt_of(2).cmp_rational(&ratio(3, 2)), Ordering::Less);
        assert_eq!(sqrt_of(8), sqrt_of(2).add(&sqrt_of(2)));
    }

    #[test]
    fn odd_root_errors_and_values() {
        let cube = RealAlgebraic::odd_root(&p(&[-2, 0, 0, 1]), 0).unwrap();
        assert!((cube.to_f64() - 2f64.cbrt()).abs() < 1e-12);
        assert_eq!(cube.pow(3).as_rational(), Some(&int(2)));
        assert_eq!(RealAlgebraic::odd_root(&p(&[-2, 0, 1]), 0).unwrap_err(), Error::EvenDegree(2));
        assert_eq!(
            RealAlgebraic::odd_root(&p(&[-2, 0, 0, 1]), 1).unwrap_err(),
            Error::IndexOutOfRange { index: 1, count: 1 }
        );
    }

    #[test]
    fn reducible_defining_polynomial_detects_rational_root() {
        // (x − 1)(x² − 2)
        let q = p(&[2, -2, -1, 1]);
        let r = RealAlgebraic::new(&q, &RationalInterval::open(ratio(1, 2), ratio(5, 4))).unwrap();
        assert_eq!(r.as_rational(), Some(&int(1)));
        assert_eq!(
            RealAlgebraic::new(&q, &RationalInterval::open(int(0), int(1))).unwrap_err(),
            Error::EndpointIsRoot("1".into())
        );
        assert_eq!(
            RealAlgebraic::new(&q, &RationalInterval::open(int(-2), int(2))).unwrap_err(),
            Error::NotIsolating
        );
    }

    #[test]
    fn approx_width() {
        let iv = sqrt_of(2).approx(20);
        assert!(iv.width() <= rational::decimal_unit(20));
        let (lo, hi) = iv.to_f64_pair();
        assert!(lo <= 2f64.sqrt() + 1e-15 && 2f64.sqrt() - 1e-15 <= hi);
        assert!(RealAlgebraic::from_int(3).approx(5).is_point());
    }

    #[test]
    fn real_closed_small_run() {
        let r = check_real_closed(&RcfConfig { seed: 7, sqrt_samples: 8, odd_samples: 6, ..Default::default() });
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(r.certificates.len(), 14);
    }
}
