//! Exact rationals and the handful of helpers the rest of the crate needs on
//! top of `num-rational`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `2^-bits`.
pub fn dyadic_unit(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// `10^-digits`.
pub fn decimal_unit(digits: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize))
}

/// Canonical exact text: `"n"` for integers, `"n/d"` otherwise.
pub fn to_exact_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"n"`, `"n/d"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Syntax { position: 0, expected: vec![format!("rational literal, got `{t}`")] };
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(n, d));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}

/// Round down onto the grid `2^-bits`.
pub fn round_down(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    Rational::new(floor(&(q * Rational::from_integer(scale.clone()))), scale)
}

/// Round up onto the grid `2^-bits`.
pub fn round_up(q: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    Rational::new(ceil(&(q * Rational::from_integer(scale.clone()))), scale)
}

/// Exact square root, when `q` is the square of a rational.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Lower and upper rational bounds on `sqrt(q)` on the grid `2^-bits`.
pub fn sqrt_bounds(q: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!q.is_negative(), "sqrt_bounds of a negative value");
    // floor(sqrt(q) * 2^bits) = isqrt(floor(q * 4^bits))
    let scale = BigInt::one() << bits as usize;
    let scaled = q * Rational::from_integer(&scale * &scale);
    let lo = floor(&scaled).sqrt();
    let hi_sq = ceil(&scaled);
    let mut hi = hi_sq.sqrt();
    if &hi * &hi < hi_sq {
        hi += 1;
    }
    (Rational::new(lo, scale.clone()), Rational::new(hi, scale))
}

pub fn to_f64(q: &Rational) -> f64 {
    // Shift both parts down so huge numerators do not overflow to inf/inf.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = (nb.max(db) - 1000).max(0) as usize;
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    if d == 0.0 {
        return if q.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    n / d
}

/// Decimal rendering truncated toward zero after `places` digits.
pub fn to_decimal_string(q: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = (q.numer().abs() * &scale) / q.denom();
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let sign = if q.numer().sign() == Sign::Minus { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places)
}

/// Scientific notation with `sig` significant digits, truncated toward zero,
/// e.g. `"1.234e-9"`. Zero prints as `"0"`.
pub fn to_scientific(q: &Rational, sig: usize) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let sig = sig.max(1);
    let a = q.abs();
    let ten = int(10);
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let scaled = |e: i64| if e >= 0 { &a / num_traits::pow(ten.clone(), e as usize) } else { &a * num_traits::pow(ten.clone(), (-e) as usize) };
    while scaled(e) >= ten {
        e += 1;
    }
    while scaled(e) < int(1) {
        e -= 1;
    }
    let m = floor(&(scaled(e) * num_traits::pow(ten.clone(), sig - 1))).to_string();
    let sign = if q.is_negative() { "-" } else { "" };
    let (head, tail) = m.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

/// The rational with the smallest denominator in the open interval `(lo, hi)`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo < hi);
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !hi.is_positive() {
        return -simplest_between(&-hi, &-lo);
    }
    // 0 <= lo < hi: continued-fraction descent
    let fl = floor(lo);
    let candidate = Rational::from_integer(&fl + 1);
    if &candidate < hi {
        return candidate;
    }
    let base = Rational::from_integer(fl);
    let lo_frac = lo - &base;
    let hi_frac = hi - &base;
    if lo_frac.is_zero() {
        // (0, hi_frac): simplest is 1/ceil(1/hi_frac) unless that equals hi_frac
        let mut k: BigInt = floor(&hi_frac.recip()) + 1;
        if Rational::new(BigInt::one(), k.clone()) >= hi_frac {
            k += 1;
        }
        return base + Rational::new(BigInt::one(), k);
    }
    base + simplest_between(&hi_frac.recip(), &lo_frac.recip()).recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn exact_strings() {
        assert_eq!(to_exact_string(&ratio(-10, 4)), "-5/2");
        assert_eq!(to_exact_string(&int(3)), "3");
    }

    #[test]
    fn sqrt_helpers() {
        assert_eq!(exact_sqrt(&ratio(9, 4)), Some(ratio(3, 2)));
        assert_eq!(exact_sqrt(&int(2)), None);
        let (lo, hi) = sqrt_bounds(&int(2), 20);
        assert!(&lo * &lo <= int(2) && int(2) <= &hi * &hi);
        assert!(hi - lo <= dyadic_unit(20));
    }

    #[test]
    fn simplest() {
        assert_eq!(simplest_between(&ratio(1, 3), &ratio(1, 2)), ratio(2, 5));
        assert_eq!(simplest_between(&ratio(14, 10), &ratio(15, 10)), ratio(10, 7));
        assert_eq!(simplest_between(&ratio(-1, 2), &ratio(1, 2)), int(0));
        assert_eq!(simplest_between(&ratio(-3, 2), &ratio(-4, 3)), ratio(-7, 5));
        assert_eq!(simplest_between(&int(2), &ratio(5, 2)), ratio(7, 3));
    }

    #[test]
    fn scientific() {
        assert_eq!(to_scientific(&ratio(1, 3), 3), "3.33e-1");
        assert_eq!(to_scientific(&int(-12345), 2), "-1.2e4");
        assert_eq!(to_scientific(&ratio(1, 1000), 1), "1e-3");
        assert_eq!(to_scientific(&int(0), 4), "0");
    }

    #[test]
    fn decimals() {
        assert_eq!(to_decimal_string(&ratio(-1, 3), 4), "-0.3333");
        assert_eq!(to_decimal_string(&ratio(5, 2), 0), "2");
    }
}
