//! Certified enclosures of `exp`, `sinh` and `cosh` at rational arguments.
//!
//! Every value is a closed rational interval guaranteed to contain the true
//! real number. Arguments are halved until they are at most 1/2, a Taylor
//! partial sum is taken exactly with an explicit Lagrange remainder, and the
//! result is rebuilt by squaring (`exp`) or double-angle steps (`sinh`,
//! `cosh`). Intermediate enclosures are rounded outward onto a dyadic grid so
//! that denominators stay bounded.
//!
//! `sinh` and `cosh` are evaluated on `|t|` and then reflected, so
//! `sinh(-t) = -sinh(t)` and `cosh(-t) = cosh(t)` hold as exact equalities of
//! enclosures, and `sinh(0)` is exactly zero.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::interval::RationalInterval;
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpFamily {
    Exp,
    Sinh,
    Cosh,
}

impl ExpFamily {
    pub fn name(self) -> &'static str {
        match self {
            ExpFamily::Exp => "exp",
            ExpFamily::Sinh => "sinh",
            ExpFamily::Cosh => "cosh",
        }
    }
}

impl fmt::Display for ExpFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A certified real value: the true value lies in `enclosure`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedValue {
    pub enclosure: RationalInterval,
    /// Taylor terms summed for the reduced argument.
    pub terms: usize,
    /// Lagrange bound on the truncated tail of the reduced series.
    pub remainder_bound: Rational,
}

impl CertifiedValue {
    pub fn exact(q: Rational) -> Self {
        CertifiedValue { enclosure: RationalInterval::point(q), terms: 0, remainder_bound: Rational::zero() }
    }

    pub fn width(&self) -> Rational {
        self.enclosure.width()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.enclosure.contains(q)
    }

    pub fn midpoint(&self) -> Rational {
        self.enclosure.midpoint()
    }
}

impl Serialize for CertifiedValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CertifiedValue", 3)?;
        st.serialize_field("enclosure", &self.enclosure)?;
        st.serialize_field("terms", &self.terms)?;
        st.serialize_field("remainder_bound", &rational::to_exact_string(&self.remainder_bound))?;
        st.end()
    }
}

/// Enclosure of `f(t)` of width at most `10^-digits`.
pub fn certified_exp_family(f: ExpFamily, t: &Rational, digits: u32) -> CertifiedValue {
    if t.is_zero() {
        return CertifiedValue::exact(match f {
            ExpFamily::Sinh => Rational::zero(),
            _ => Rational::one(),
        });
    }
    let target = rational::decimal_unit(digits);
    let s = t.abs();
    let k = halvings(&s);
    // bits for the answer, the k squarings and the size of the value
    let growth = (rational::to_f64(&s) * 1.45).ceil() as u32;
    let mut bits = digits * 3322 / 1000 + 1 + k + growth + 20;
    loop {
        let v = evaluate(f, &s, t.is_negative(), k, bits);
        if v.enclosure.width() <= target {
            return v;
        }
        bits += 32;
    }
}

pub fn exp(t: &Rational, digits: u32) -> CertifiedValue {
    certified_exp_family(ExpFamily::Exp, t, digits)
}

pub fn sinh(t: &Rational, digits: u32) -> CertifiedValue {
    certified_exp_family(ExpFamily::Sinh, t, digits)
}

pub fn cosh(t: &Rational, digits: u32) -> CertifiedValue {
    certified_exp_family(ExpFamily::Cosh, t, digits)
}

/// Enclosures of `(sinh t, cosh t)` sharing one series evaluation.
pub fn sinh_cosh(t: &Rational, digits: u32) -> (RationalInterval, RationalInterval) {
    if t.is_zero() {
        return (RationalInterval::point(Rational::zero()), RationalInterval::point(Rational::one()));
    }
    let target = rational::decimal_unit(digits);
    let s = t.abs();
    let k = halvings(&s);
    let growth = (rational::to_f64(&s) * 1.45).ceil() as u32;
    let mut bits = digits * 3322 / 1000 + 1 + k + growth + 20;
    loop {
        let (sh, ch, _, _) = sinh_cosh_abs(&s, k, bits);
        if sh.width() <= target && ch.width() <= target {
            let sh = if t.is_negative() { sh.neg() } else { sh };
            return (sh, ch);
        }
        bits += 32;
    }
}

/// Smallest `k` with `s / 2^k ≤ 1/2`.
fn halvings(s: &Rational) -> u32 {
    let half = rational::ratio(1, 2);
    let mut k = 0;
    let mut r = s.clone();
    while r > half {
        r /= int(2);
        k += 1;
    }
    k
}

fn evaluate(f: ExpFamily, s: &Rational, negative: bool, k: u32, bits: u32) -> CertifiedValue {
    match f {
        ExpFamily::Exp => {
            let (mut e, terms, rem) = exp_abs(s, k, bits);
            if negative {
                e = e.recip().expect("exp is positive").round_out(bits);
            }
            CertifiedValue { enclosure: e, terms, remainder_bound: rem }
        }
        ExpFamily::Sinh | ExpFamily::Cosh => {
            let (sh, ch, terms, rem) = sinh_cosh_abs(s, k, bits);
            let enclosure = match f {
                ExpFamily::Sinh if negative => sh.neg(),
                ExpFamily::Sinh => sh,
                _ => ch,
            };
            CertifiedValue { enclosure, terms, remainder_bound: rem }
        }
    }
}

fn reduce(s: &Rational, k: u32) -> Rational {
    s / Rational::from_integer(BigInt::one() << k as usize)
}

/// `exp(s)` for `s > 0`: series at `s/2^k`, then `k` squarings.
fn exp_abs(s: &Rational, k: u32, bits: u32) -> (RationalInterval, usize, Rational) {
    let r = reduce(s, k);
    let tol = rational::dyadic_unit(bits + 4);
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut n = 0usize;
    // tail after the r^n/n! term is at most 3 r^(n+1)/(n+1)! since r ≤ 1/2
    let rem = loop {
        sum += &term;
        n += 1;
        term = term * &r / int(n as i64);
        let bound = &term * int(3);
        if bound <= tol {
            break bound;
        }
    };
    let mut e = RationalInterval::closed(sum.clone(), &sum + &rem).round_out(bits + 4);
    for _ in 0..k {
        e = e.square().round_out(bits);
    }
    (e, n, rem)
}

/// `(sinh s, cosh s)` for `s > 0` via double-angle steps.
fn sinh_cosh_abs(s: &Rational, k: u32, bits: u32) -> (RationalInterval, RationalInterval, usize, Rational) {
    let r = reduce(s, k);
    let tol = rational::dyadic_unit(bits + 4);
    let mut sh = Rational::zero();
    let mut ch = Rational::zero();
    let mut even = Rational::one(); // r^(2i)/(2i)!
    let mut odd = r.clone(); // r^(2i+1)/(2i+1)!
    let mut i = 0i64;
    // cosh(ξ) and sinh(ξ) stay below 2 on [0, 1/2], so twice the next term
    // bounds each tail
    let rem = loop {
        ch += &even;
        sh += &odd;
        i += 1;
        even = &odd * &r / int(2 * i);
        odd = &even * &r / int(2 * i + 1);
        let bound = even.clone().max(odd.clone()) * int(2);
        if bound <= tol {
            break bound;
        }
    };
    let mut s_iv = RationalInterval::closed(sh.clone(), &sh + &rem).round_out(bits + 4);
    let mut c_iv = RationalInterval::closed(ch.clone(), &ch + &rem).round_out(bits + 4);
    let one = RationalInterval::point(Rational::one());
    let two = int(2);
    for _ in 0..k {
        let next_s = s_iv.mul(&c_iv).scale(&two).round_out(bits);
        let next_c = one.add(&s_iv.square().scale(&two)).round_out(bits);
        s_iv = next_s;
        c_iv = next_c;
    }
    (s_iv, c_iv, 2 * i as usize, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn contains_f64(iv: &RationalInterval, x: f64) -> bool {
        let (lo, hi) = iv.to_f64_pair();
        lo <= x + 1e-12 && x - 1e-12 <= hi
    }

    #[test]
    fn euler_number() {
        let e = exp(&int(1), 10);
        assert!(e.width() <= rational::decimal_unit(10));
        // e lies strictly between these two 17-digit truncations
        assert!(e.enclosure.lo <= rational::parse_rational("2.7182818284590453").unwrap());
        assert!(e.enclosure.hi >= rational::parse_rational("2.7182818284590452").unwrap());
        assert!(e.contains(&rational::parse_rational("2.7182818284").unwrap()) || e.enclosure.lo > rational::parse_rational("2.7182818284").unwrap());
    }

    #[test]
    fn odd_and_even() {
        let t = ratio(3, 4);
        assert_eq!(sinh(&-&t, 12).enclosure, sinh(&t, 12).enclosure.neg());
        assert_eq!(cosh(&-&t, 12).enclosure, cosh(&t, 12).enclosure);
        assert_eq!(sinh(&int(0), 5).enclosure, RationalInterval::point(int(0)));
        assert_eq!(cosh(&int(0), 5).enclosure, RationalInterval::point(int(1)));
    }

    #[test]
    fn pythagorean_identity() {
        let c = cosh(&int(1), 6).enclosure;
        let s = sinh(&int(1), 6).enclosure;
        assert!(c.square().sub(&s.square()).contains(&int(1)));
    }

    #[test]
    fn large_and_negative_arguments() {
        let e = exp(&int(-5), 15);
        assert!(contains_f64(&e.enclosure, (-5f64).exp()));
        let c = cosh(&ratio(37, 3), 8);
        assert!(c.width() <= rational::decimal_unit(8));
        let rel = (rational::to_f64(&c.midpoint()) / (37f64 / 3.0).cosh() - 1.0).abs();
        assert!(rel < 1e-12);
    }

    #[test]
    fn pair_matches_single() {
        let t = ratio(-7, 5);
        let (s, c) = sinh_cosh(&t, 20);
        assert!(s.overlaps(&sinh(&t, 20).enclosure));
        assert!(c.overlaps(&cosh(&t, 20).enclosure));
    }

    #[test]
    fn serializes_exactly() {
        let v = serde_json::to_value(sinh(&int(0), 3)).unwrap();
        assert_eq!(v["enclosure"], serde_json::json!(["0", "0"]));
        assert_eq!(v["remainder_bound"], "0");
    }
}
