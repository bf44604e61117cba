//! Subresultant polynomial remainder sequences over an integral domain with
//! exact division. Instantiated for `Z` (gcd, univariate resultants) and for
//! `Z[y]` (eliminating `x` from bivariate polynomials).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntPolynomial;

pub(crate) trait PrsRing: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient; the caller guarantees divisibility.
    fn exact_div(&self, other: &Self) -> Self;

    fn pow(&self, mut k: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }
}

impl PrsRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(Zero::is_zero(&r), "inexact integer division");
        q
    }
}

impl PrsRing for IntPolynomial {
    fn zero() -> Self {
        IntPolynomial::zero()
    }
    fn one() -> Self {
        IntPolynomial::one()
    }
    fn is_zero(&self) -> bool {
        IntPolynomial::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        IntPolynomial::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        IntPolynomial::mul(self, o)
    }
    fn neg(&self) -> Self {
        IntPolynomial::neg(self)
    }
    fn exact_div(&self, o: &Self) -> Self {
        self.div_exact(o).expect("inexact polynomial division")
    }
}

/// Dense polynomial over `R`, lowest degree first, no trailing zeros.
pub(crate) type Dense<R> = Vec<R>;

pub(crate) fn trim<R: PrsRing>(p: &mut Dense<R>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg<R>(p: &Dense<R>) -> usize {
    p.len() - 1
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) · a  mod  b`.
pub(crate) fn prem<R: PrsRing>(a: &Dense<R>, b: &Dense<R>) -> Dense<R> {
    let db = deg(b);
    let lcb = b[db].clone();
    let mut r = a.clone();
    let mut e = a.len() as isize - b.len() as isize + 1;
    while !r.is_empty() && r.len() >= b.len() {
        let lcr = r.last().unwrap().clone();
        let shift = deg(&r) - db;
        let mut next: Dense<R> = r.iter().map(|c| c.mul(&lcb)).collect();
        for (i, bc) in b.iter().enumerate() {
            next[i + shift] = next[i + shift].sub(&lcr.mul(bc));
        }
        next.pop();
        trim(&mut next);
        r = next;
        e -= 1;
    }
    if e > 0 && !r.is_empty() {
        let f = lcb.pow(e as usize);
        r = r.iter().map(|c| c.mul(&f)).collect();
    }
    r
}

fn div_scalar<R: PrsRing>(p: &Dense<R>, d: &R) -> Dense<R> {
    p.iter().map(|c| c.exact_div(d)).collect()
}

/// Resultant of `a` and `b` by the subresultant algorithm (Collins/Brown,
/// contents not extracted).
pub(crate) fn resultant<R: PrsRing>(a: &Dense<R>, b: &Dense<R>) -> R {
    if a.is_empty() || b.is_empty() {
        return R::zero();
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut negate = false;
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            negate = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        let r = b[0].pow(deg(&a));
        return if negate { r.neg() } else { r };
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            negate = !negate;
        }
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            return R::zero();
        }
        b = div_scalar(&r, &g.mul(&h.pow(delta)));
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).exact_div(&h.pow(delta - 1)),
        };
        if deg(&b) == 0 {
            break;
        }
    }
    let da = deg(&a);
    let lcb = b[0].clone();
    let r = if da == 1 { lcb } else { lcb.pow(da).exact_div(&h.pow(da - 1)) };
    if negate {
        r.neg()
    } else {
        r
    }
}

/// Last nonzero element of the subresultant PRS of `a` and `b` over `Z`;
/// an associate of `gcd(a, b)` up to content.
pub(crate) fn subresultant_gcd(a: &Dense<BigInt>, b: &Dense<BigInt>) -> Dense<BigInt> {
    let (mut a, mut b) = (a.clone(), b.clone());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_empty() {
        return a;
    }
    let mut g = <BigInt as One>::one();
    let mut h = <BigInt as One>::one();
    loop {
        let delta = deg(&a) - deg(&b);
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![<BigInt as One>::one()];
        }
        a = b;
        b = div_scalar(&r, &(&g * PrsRing::pow(&h, delta)));
        g = a.last().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => PrsRing::pow(&g, delta).exact_div(&PrsRing::pow(&h, delta - 1)),
        };
    }
}
