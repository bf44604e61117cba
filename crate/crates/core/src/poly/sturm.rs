use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{IntPolynomial, RationalPolynomial};
use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::rational::{self, Rational};

/// Sturm sequence `p, p′, −rem(p, p′), …` of a square-free polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct SturmSequence {
    polys: Vec<RationalPolynomial>,
    /// The square-free polynomial the sequence was built from.
    source: IntPolynomial,
    /// Set when the input had repeated factors and its square-free part was
    /// used instead.
    squarefree_taken: bool,
}

impl SturmSequence {
    pub fn polys(&self) -> &[RationalPolynomial] {
        &self.polys
    }

    pub fn source(&self) -> &IntPolynomial {
        &self.source
    }

    pub fn squarefree_taken(&self) -> bool {
        self.squarefree_taken
    }

    fn variations<F: Fn(&RationalPolynomial) -> Ordering>(&self, sign: F) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.polys {
            let s = sign(p);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        self.variations(|p| p.sign_at(x))
    }

    /// Number of distinct real roots in `(a, b]`, `a ≤ b`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    /// Total number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations(|p| p.sign_at_neg_infinity()) - self.variations(|p| p.sign_at_pos_infinity())
    }
}

/// Build the Sturm sequence of `p` (of its square-free part when `p` has
/// repeated factors).
pub fn sturm_sequence(p: &IntPolynomial) -> Result<SturmSequence> {
    p.require_nonzero()?;
    let sf = p.squarefree_part();
    let squarefree_taken = sf.degree() != p.degree();
    let source = if squarefree_taken { sf } else { p.clone() };
    let first = source.to_rational();
    let mut polys = vec![first.clone()];
    let d = first.derivative();
    if !d.is_zero() {
        polys.push(d);
        loop {
            let n = polys.len();
            let r = polys[n - 2].rem(&polys[n - 1]);
            if r.is_zero() {
                break;
            }
            polys.push(r.neg());
        }
    }
    Ok(SturmSequence { polys, source, squarefree_taken })
}

/// Exact number of distinct real roots of the sequence's polynomial in `iv`,
/// honouring the openness flags.
pub fn count_real_roots(seq: &SturmSequence, iv: &RationalInterval) -> usize {
    let p = &seq.polys[0];
    let is_root = |x: &Rational| p.sign_at(x) == Ordering::Equal;
    if iv.lo == iv.hi {
        return usize::from(!iv.lo_open && !iv.hi_open && is_root(&iv.lo));
    }
    let mut n = seq.count_half_open(&iv.lo, &iv.hi);
    if !iv.lo_open && is_root(&iv.lo) {
        n += 1;
    }
    if iv.hi_open && is_root(&iv.hi) {
        n -= 1;
    }
    n
}

/// Integer `B` with every real root of `p` strictly inside `(−B, B)`.
pub fn cauchy_bound(p: &IntPolynomial) -> BigInt {
    let lc = p.leading_coeff().abs();
    let n = p.degree().unwrap_or(0);
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| Rational::new(c.abs(), lc.clone()))
        .max()
        .unwrap_or_else(Rational::zero);
    rational::ceil(&max) + 2
}

/// A point strictly inside `(lo, hi)` that is not a root of `p`, preferring
/// the midpoint and nudging deterministically when the midpoint is a root.
pub(crate) fn split_point(p: &IntPolynomial, lo: &Rational, hi: &Rational) -> Rational {
    let mid = (lo + hi) / rational::int(2);
    if p.sign_at(&mid) != Ordering::Equal {
        return mid;
    }
    let mut step = (hi - lo) / rational::int(4);
    loop {
        for cand in [&mid + &step, &mid - &step] {
            if p.sign_at(&cand) != Ordering::Equal {
                return cand;
            }
        }
        step /= rational::int(2);
    }
}

/// Isolating intervals for the distinct real roots of `p`, ascending.
///
/// Every interval is open, has non-root endpoints and contains exactly one
/// root of the square-free part of `p`.
pub fn isolate_real_roots(p: &IntPolynomial) -> Result<Vec<RationalInterval>> {
    p.require_nonzero()?;
    let seq = sturm_sequence(p)?;
    let q = seq.source().clone();
    if q.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let b = Rational::from_integer(cauchy_bound(&q));
    let mut out = Vec::new();
    // explicit stack, right half pushed first so output is ascending
    let mut stack = vec![(-b.clone(), b.clone(), seq.count_half_open(&-b.clone(), &b))];
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(RationalInterval::open(lo, hi)),
            _ => {
                let m = split_point(&q, &lo, &hi);
                let left = seq.count_half_open(&lo, &m);
                stack.push((m.clone(), hi, n - left));
                stack.push((lo, m, left));
            }
        }
    }
    Ok(out)
}

/// Outcome of one refinement pass over an isolating interval.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Refined {
    Interval(Rational, Rational),
    /// The root was hit exactly by a bisection point.
    Exact(Rational),
}

/// Bisect `(lo, hi)` until its width is at most `target`. The interval must
/// hold exactly one simple root of the square-free `q`, and its endpoints
/// must not be roots.
pub(crate) fn bisect_to_width(
    q: &IntPolynomial,
    lo: &Rational,
    hi: &Rational,
    target: &Rational,
) -> Refined {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let s_lo = q.sign_at(&lo);
    debug_assert!(s_lo != Ordering::Equal && q.sign_at(&hi) == s_lo.reverse());
    while &(&hi - &lo) > target {
        let mid = (&lo + &hi) / rational::int(2);
        match q.sign_at(&mid) {
            Ordering::Equal => return Refined::Exact(mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Refined::Interval(lo, hi)
}

/// Shrink an isolating interval of `p` to width at most `target_width`.
///
/// The result is an open sub-interval that still isolates the same root; its
/// endpoints are never roots.
pub fn refine_interval(
    p: &IntPolynomial,
    iv: &RationalInterval,
    target_width: &Rational,
) -> Result<RationalInterval> {
    let seq = sturm_sequence(p)?;
    let q = seq.source();
    for end in [&iv.lo, &iv.hi] {
        if q.sign_at(end) == Ordering::Equal {
            return Err(Error::EndpointIsRoot(rational::to_exact_string(end)));
        }
    }
    if count_real_roots(&seq, iv) != 1 {
        return Err(Error::NotIsolating);
    }
    if target_width >= &iv.width() {
        return Ok(iv.clone());
    }
    Ok(match bisect_to_width(q, &iv.lo, &iv.hi, target_width) {
        Refined::Interval(lo, hi) => RationalInterval::open(lo, hi),
        Refined::Exact(r) => {
            // any sub-interval around the exact root isolates it
            let half = target_width.clone().min(iv.width()) / rational::int(4);
            RationalInterval::open(&r - &half, &r + &half)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn sturm_of_x2_minus_2() {
        let s = sturm_sequence(&p(&[-2, 0, 1])).unwrap();
        let expect: Vec<RationalPolynomial> =
            [p(&[-2, 0, 1]), p(&[0, 2]), p(&[2])].iter().map(|q| q.to_rational()).collect();
        assert_eq!(s.polys(), expect.as_slice());
    }

    #[test]
    fn sturm_linear() {
        let s = sturm_sequence(&p(&[-1, 1])).unwrap();
        assert_eq!(s.polys().len(), 2);
        assert_eq!(s.polys()[1], RationalPolynomial::constant(int(1)));
    }

    #[test]
    fn sturm_of_cube_minus_2() {
        // x³ − 2, 3x², then −rem(x³ − 2, 3x²) = 2; 3x² is divisible by 2.
        let s = sturm_sequence(&p(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(s.polys().len(), 3);
        assert_eq!(s.polys()[2], RationalPolynomial::constant(int(2)));
        let iv = RationalInterval::open(int(-8), int(8));
        assert_eq!(count_real_roots(&s, &iv), 1);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(sturm_sequence(&IntPolynomial::zero()), Err(Error::ZeroPolynomial));
        assert_eq!(isolate_real_roots(&IntPolynomial::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn counts() {
        let s = sturm_sequence(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(s.variations_at(&int(0)), 1);
        assert_eq!(s.variations_at(&int(2)), 0);
        assert_eq!(s.variations_at(&int(-2)), 2);
        assert_eq!(count_real_roots(&s, &RationalInterval::open(int(0), int(2))), 1);
        assert_eq!(count_real_roots(&s, &RationalInterval::open(int(-2), int(2))), 2);
        let none = sturm_sequence(&p(&[1, 0, 1])).unwrap();
        assert_eq!(count_real_roots(&none, &RationalInterval::open(int(-10), int(10))), 0);
    }

    #[test]
    fn endpoint_roots_respect_openness() {
        let s = sturm_sequence(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(count_real_roots(&s, &RationalInterval::open(int(-1), int(1))), 0);
        assert_eq!(count_real_roots(&s, &RationalInterval::closed(int(-1), int(1))), 2);
        assert_eq!(count_real_roots(&s, &RationalInterval::closed(int(1), int(1))), 1);
    }

    #[test]
    fn isolation_examples() {
        let roots = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        // the roots lie in (−2, −1) and (1, 2)
        assert!(roots[0].contains(&ratio(-14142, 10000)) && roots[0].hi <= roots[1].lo);
        assert!(roots[1].contains(&ratio(14142, 10000)));
        let cube = isolate_real_roots(&p(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(cube.len(), 1);
        assert!(cube[0].contains(&ratio(12599, 10000)));
        assert!(isolate_real_roots(&p(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn isolation_with_rational_roots_on_midpoints() {
        // roots −1, 0, 1: midpoints of symmetric bisection hit 0
        let roots = isolate_real_roots(&p(&[0, -1, 0, 1])).unwrap();
        assert_eq!(roots.len(), 3);
        for (iv, r) in roots.iter().zip([-1, 0, 1]) {
            assert!(iv.contains(&int(r)), "{iv} should contain {r}");
        }
    }

    #[test]
    fn refinement() {
        let q = p(&[-2, 0, 1]);
        let iv = RationalInterval::open(int(1), int(2));
        let r = refine_interval(&q, &iv, &ratio(1, 100)).unwrap();
        assert!(r.width() <= ratio(1, 100));
        let sqrt2 = 2f64.sqrt();
        let (lo, hi) = r.to_f64_pair();
        assert!(lo < sqrt2 && sqrt2 < hi);
        assert_eq!(refine_interval(&q, &iv, &int(5)).unwrap(), iv);
        let cube = refine_interval(&p(&[-2, 0, 0, 1]), &iv, &ratio(1, 1000)).unwrap();
        let (lo, hi) = cube.to_f64_pair();
        assert!(lo < 2f64.cbrt() && 2f64.cbrt() < hi && hi - lo <= 1e-3);
    }

    #[test]
    fn refinement_errors() {
        let q = p(&[-2, 0, 1]);
        assert_eq!(
            refine_interval(&q, &RationalInterval::open(int(-2), int(2)), &ratio(1, 10)),
            Err(Error::NotIsolating)
        );
        assert!(matches!(
            refine_interval(&p(&[-1, 1]), &RationalInterval::open(int(1), int(2)), &ratio(1, 10)),
            Err(Error::EndpointIsRoot(_))
        ));
    }

    #[test]
    fn refinement_hitting_rational_root() {
        // root 3/2 is the first midpoint of (1, 2)
        let r = refine_interval(&p(&[-3, 2]), &RationalInterval::open(int(1), int(2)), &ratio(1, 10))
            .unwrap();
        assert!(r.contains(&ratio(3, 2)) && r.width() <= ratio(1, 10));
    }
}
