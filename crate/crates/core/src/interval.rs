//! Rational intervals: isolating intervals for roots and outward-safe
//! enclosures for certified evaluation.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl RationalInterval {
    /// Closed interval `[lo, hi]`. Panics if `lo > hi`.
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi, lo_open: false, hi_open: false }
    }

    /// Open interval `(lo, hi)`.
    pub fn open(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi, lo_open: true, hi_open: true }
    }

    pub fn point(q: Rational) -> Self {
        RationalInterval::closed(q.clone(), q)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &Rational) -> bool {
        let above = if self.lo_open { q > &self.lo } else { q >= &self.lo };
        let below = if self.hi_open { q < &self.hi } else { q <= &self.hi };
        above && below
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rational::zero())
    }

    /// Whether the closures of the two intervals share a point.
    pub fn overlaps(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Closed hull `[lo, hi]` regardless of the openness flags.
    pub fn hull(&self) -> RationalInterval {
        RationalInterval::closed(self.lo.clone(), self.hi.clone())
    }

    /// Smallest closed interval containing both.
    pub fn join(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval::closed(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    /// Closed intersection, if the closures meet.
    pub fn intersect(&self, other: &RationalInterval) -> Option<RationalInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| RationalInterval::closed(lo, hi))
    }

    pub fn add(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval::closed(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval::closed(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> RationalInterval {
        RationalInterval {
            lo: -&self.hi,
            hi: -&self.lo,
            lo_open: self.hi_open,
            hi_open: self.lo_open,
        }
    }

    pub fn mul(&self, other: &RationalInterval) -> RationalInterval {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RationalInterval::closed(lo, hi)
    }

    pub fn scale(&self, k: &Rational) -> RationalInterval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            RationalInterval::closed(a, b)
        } else {
            RationalInterval::closed(b, a)
        }
    }

    /// Tight enclosure of `{x² : x ∈ self}` (not `self · self`).
    pub fn square(&self) -> RationalInterval {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        if self.lo.is_negative() && self.hi.is_positive() {
            RationalInterval::closed(Rational::zero(), a.max(b))
        } else if a <= b {
            RationalInterval::closed(a, b)
        } else {
            RationalInterval::closed(b, a)
        }
    }

    pub fn recip(&self) -> Result<RationalInterval> {
        if self.hull().contains_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalInterval::closed(self.hi.recip(), self.lo.recip()))
    }

    pub fn div(&self, other: &RationalInterval) -> Result<RationalInterval> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, k: u32) -> RationalInterval {
        if k.is_multiple_of(2) {
            let mut acc = RationalInterval::point(rational::int(1));
            let sq = self.square();
            for _ in 0..k / 2 {
                acc = acc.mul(&sq);
            }
            acc
        } else {
            // odd powers are monotone
            RationalInterval::closed(
                num_traits::pow(self.lo.clone(), k as usize),
                num_traits::pow(self.hi.clone(), k as usize),
            )
        }
    }

    /// Upper bound of `|x|` over the interval.
    pub fn mag(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Lower bound of `|x|` over the interval (0 when it straddles zero).
    pub fn mig(&self) -> Rational {
        if self.hull().contains_zero() {
            Rational::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    /// Outward rounding onto the dyadic grid `2^-bits`.
    pub fn round_out(&self, bits: u32) -> RationalInterval {
        RationalInterval::closed(
            rational::round_down(&self.lo, bits),
            rational::round_up(&self.hi, bits),
        )
    }

    /// Widen symmetrically by `r ≥ 0`.
    pub fn widen(&self, r: &Rational) -> RationalInterval {
        RationalInterval::closed(&self.lo - r, &self.hi + r)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational::to_f64(&self.lo), rational::to_f64(&self.hi))
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            rational::to_exact_string(&self.lo),
            rational::to_exact_string(&self.hi),
            if self.hi_open { ')' } else { ']' },
        )
    }
}

impl Serialize for RationalInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [rational::to_exact_string(&self.lo), rational::to_exact_string(&self.hi)].serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn arithmetic_encloses() {
        let a = RationalInterval::closed(int(-1), int(2));
        let b = RationalInterval::closed(int(3), int(4));
        assert_eq!(a.mul(&b), RationalInterval::closed(int(-4), int(8)));
        assert_eq!(a.square(), RationalInterval::closed(int(0), int(4)));
        assert_eq!(a.sub(&b), RationalInterval::closed(int(-5), int(-1)));
        assert_eq!(b.recip().unwrap(), RationalInterval::closed(ratio(1, 4), ratio(1, 3)));
        assert_eq!(a.recip(), Err(Error::DivisionByZero));
    }

    #[test]
    fn openness() {
        let iv = RationalInterval::open(int(0), int(1));
        assert!(!iv.contains(&int(0)));
        assert!(iv.contains(&ratio(1, 2)));
        assert!(RationalInterval::closed(int(0), int(1)).contains(&int(1)));
    }

    #[test]
    fn rounding_is_outward_and_symmetric() {
        let iv = RationalInterval::closed(ratio(1, 3), ratio(2, 3));
        let r = iv.round_out(8);
        assert!(r.lo <= iv.lo && r.hi >= iv.hi);
        assert_eq!(iv.neg().round_out(8), r.neg());
    }

    #[test]
    fn odd_power_monotone() {
        let iv = RationalInterval::closed(int(-2), int(1));
        assert_eq!(iv.pow(3), RationalInterval::closed(int(-8), int(1)));
        assert_eq!(iv.pow(2), RationalInterval::closed(int(0), int(4)));
    }
}
