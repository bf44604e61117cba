//! Exact univariate polynomials with integer coefficients, and the machinery
//! built on them: subresultant gcd and resultants, Sturm sequences, real-root
//! isolation and refinement.

mod bivariate;
mod prs;
mod ratpoly;
mod sturm;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::RationalInterval;
use crate::rational::Rational;

pub use bivariate::{resultant_x, Bivariate};
pub use ratpoly::RationalPolynomial;
pub use sturm::{
    cauchy_bound, count_real_roots, isolate_real_roots, refine_interval, sturm_sequence,
    SturmSequence,
};
pub(crate) use bivariate::{product_polynomial, sum_polynomial};
pub(crate) use sturm::{bisect_to_width, Refined};

/// Univariate polynomial over `Z`, coefficients stored lowest degree first.
///
/// The zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// From small coefficients, lowest degree first: `[-2, 0, 1]` is `x² − 2`.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact quotient `self / divisor` over `Z`, or `None` if it does not
    /// divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let d = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.degree().unwrap();
        if n < d {
            return None;
        }
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - d + 1];
        for k in (0..=n - d).rev() {
            let (q, r) = rem[k + d].div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }

    /// Primitive gcd with positive leading coefficient (subresultant PRS).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let g = prs::subresultant_gcd(&self.coeffs, &other.coeffs);
        Self::new(g).primitive_part()
    }

    /// `p / gcd(p, p′)`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g)
            .expect("gcd divides its argument")
            .primitive_part()
    }

    /// Resultant with `other` as univariate polynomials over `Z`.
    pub fn resultant(&self, other: &Self) -> BigInt {
        prs::resultant(&self.coeffs, &other.coeffs)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    /// Sign of `p(n/d)` via the homogenized integer form `Σ cᵢ nⁱ dⁿ⁻ⁱ`.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        acc.sign_ordering()
    }

    /// Horner evaluation over an interval; a valid enclosure of the range.
    pub fn eval_interval(&self, x: &RationalInterval) -> RationalInterval {
        let zero = RationalInterval::point(Rational::zero());
        self.coeffs.iter().rev().fold(zero, |acc, c| {
            acc.mul(x).add(&RationalInterval::point(Rational::from_integer(c.clone())))
        })
    }

    /// `p(−x)`.
    pub fn compose_neg(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `xⁿ p(1/x)` where `n = deg p`.
    pub fn reverse(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `p(x²)`.
    pub fn compose_square(&self) -> Self {
        let mut out = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        Self::new(out)
    }

    /// Integer multiple of `p(x − q)` (denominators cleared, primitive).
    pub fn shift(&self, q: &Rational) -> Self {
        // p(x - n/d) · dⁿ = Σ cᵢ (d x − n)ⁱ dⁿ⁻ⁱ
        let Some(deg) = self.degree() else { return Self::zero() };
        let lin = Self::new(vec![-q.numer().clone(), q.denom().clone()]);
        let mut acc = Self::zero();
        let mut lin_pow = Self::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            let dpow = num_traits::pow(q.denom().clone(), deg - i);
            acc = acc.add(&lin_pow.scale(&(c * dpow)));
            lin_pow = lin_pow.mul(&lin);
        }
        acc.primitive_part()
    }

    /// Integer multiple of `p(x / q)` for `q ≠ 0` (primitive).
    pub fn scale_var(&self, q: &Rational) -> Self {
        // p(x d / n) · nⁿ = Σ cᵢ dⁱ nⁿ⁻ⁱ xⁱ
        let Some(deg) = self.degree() else { return Self::zero() };
        let (n, d) = (q.numer(), q.denom());
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * num_traits::pow(d.clone(), i) * num_traits::pow(n.clone(), deg - i))
                .collect(),
        )
        .primitive_part()
    }

    /// Polynomial whose roots are the squares of the roots of `p`:
    /// `E(y)² − y·O(y)²` for `p(x) = E(x²) + x·O(x²)`.
    pub fn graeffe(&self) -> Self {
        let even = Self::new(self.coeffs.iter().step_by(2).cloned().collect());
        let odd = Self::new(self.coeffs.iter().skip(1).step_by(2).cloned().collect());
        even.mul(&even).sub(&Self::x().mul(&odd.mul(&odd)))
    }

    pub fn to_rational(&self) -> RationalPolynomial {
        RationalPolynomial::new(
            self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect(),
        )
    }

    /// Largest coefficient magnitude.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Parse polynomial text in the variable `x`, e.g. `"x^4 - 10*x^2 + 1"`.
    /// Rational coefficients are cleared to an integer multiple.
    pub fn parse(text: &str) -> Result<Self> {
        let expr = crate::expr::parse_expression(text)?;
        let p = crate::expr::eval_polynomial(&expr, "x")?;
        Ok(p.clear_denominators())
    }

    pub(crate) fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroPolynomial)
        } else {
            Ok(())
        }
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn gcd_by_hand() {
        // gcd(x² − 1, x² − 2x + 1) = x − 1
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[1, -2, 1])), p(&[-1, 1]));
        assert_eq!(p(&[-2, 0, 1]).gcd(&p(&[-3, 0, 1])), p(&[1]));
    }

    #[test]
    fn derivative_power_rule() {
        assert_eq!(p(&[-2, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert_eq!(p(&[5]).derivative(), IntPolynomial::zero());
    }

    #[test]
    fn squarefree_part_by_hand() {
        // (x − 1)²(x + 2) = x³ − 3x + 2
        assert_eq!(p(&[2, -3, 0, 1]).squarefree_part(), p(&[-2, 1, 1]));
        assert_eq!(p(&[4, -4, 1]).scale(&BigInt::from(-3)).squarefree_part(), p(&[-2, 1]));
    }

    #[test]
    fn linear_resultant_is_evaluation() {
        // res(x − 3, x² − 2) = ±(9 − 2)
        let r = p(&[-3, 1]).resultant(&p(&[-2, 0, 1]));
        assert_eq!(r.abs(), BigInt::from(7));
        // res(x² − 2, x² − 3) = (2 − 3)² = 1
        assert_eq!(p(&[-2, 0, 1]).resultant(&p(&[-3, 0, 1])), BigInt::from(1));
        // common root → 0
        assert!(p(&[-1, 0, 1]).resultant(&p(&[1, -2, 1])).is_zero());
    }

    #[test]
    fn sign_and_eval_agree() {
        let q = p(&[-2, 0, 1]);
        for x in [ratio(7, 5), ratio(3, 2), int(-2), ratio(-141, 100)] {
            assert_eq!(q.sign_at(&x), q.eval_rational(&x).cmp(&Rational::zero()));
        }
        assert_eq!(q.sign_at(&int(0)), Ordering::Less);
    }

    #[test]
    fn transformations() {
        let q = p(&[-2, 0, 1]);
        assert_eq!(q.compose_square(), p(&[-2, 0, 0, 0, 1]));
        // (x − 1/2)² − 2 → 4x² − 4x − 7
        assert_eq!(q.shift(&ratio(1, 2)), p(&[-7, -4, 4]));
        // (x/2)² − 2 → x² − 8
        assert_eq!(q.scale_var(&int(2)), p(&[-8, 0, 1]));
        // roots ±√2 squared → (y − 2)²
        assert_eq!(q.graeffe(), p(&[4, -4, 1]));
        assert_eq!(p(&[1, 2, 3]).reverse(), p(&[3, 2, 1]));
    }

    #[test]
    fn display_and_parse() {
        let q = p(&[1, 0, -10, 0, 1]);
        assert_eq!(q.to_string(), "x^4 - 10*x^2 + 1");
        assert_eq!(IntPolynomial::parse("x^4 - 10*x^2 + 1").unwrap(), q);
        assert_eq!(IntPolynomial::parse("x^2/2 - 1").unwrap(), p(&[-2, 0, 1]));
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
    }
}
