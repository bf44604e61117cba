use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use super::prs::{self, trim};
use super::IntPolynomial;
use crate::error::Result;

/// Polynomial in `x` whose coefficients are polynomials in `y`, i.e. an
/// element of `Z[y][x]`. Index `i` holds the coefficient of `xⁱ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bivariate {
    coeffs: Vec<IntPolynomial>,
}

impl Bivariate {
    pub fn new(coeffs: Vec<IntPolynomial>) -> Self {
        let mut coeffs = coeffs;
        trim(&mut coeffs);
        Bivariate { coeffs }
    }

    /// From terms `(i, j, c)` meaning `c · xⁱ yʲ`.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let n = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let mut coeffs = vec![IntPolynomial::zero(); n];
        for &(i, j, c) in terms {
            coeffs[i] = coeffs[i].add(&IntPolynomial::monomial(BigInt::from(c), j));
        }
        Self::new(coeffs)
    }

    /// `p(x)` with constant coefficients in `y`.
    pub fn from_x(p: &IntPolynomial) -> Self {
        Self::new(p.coeffs().iter().map(|c| IntPolynomial::constant(c.clone())).collect())
    }

    /// `q(y − x)`.
    pub fn shifted(q: &IntPolynomial) -> Self {
        let n = q.degree().map_or(0, |d| d + 1);
        let mut coeffs = vec![IntPolynomial::zero(); n];
        for (k, qk) in q.coeffs().iter().enumerate() {
            if qk.is_zero() {
                continue;
            }
            // (y − x)^k = Σ_j C(k, j) y^(k−j) (−x)^j
            for (j, slot) in coeffs.iter_mut().enumerate().take(k + 1) {
                let mut c = qk * binomial(BigInt::from(k), BigInt::from(j));
                if j % 2 == 1 {
                    c = -c;
                }
                *slot = slot.add(&IntPolynomial::monomial(c, k - j));
            }
        }
        Self::new(coeffs)
    }

    /// `xⁿ q(y/x)` with `n = deg q`.
    pub fn homogenized(q: &IntPolynomial) -> Self {
        let n = q.degree().unwrap_or(0);
        let mut coeffs = vec![IntPolynomial::zero(); n + 1];
        for (k, qk) in q.coeffs().iter().enumerate() {
            coeffs[n - k] = IntPolynomial::monomial(qk.clone(), k);
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[IntPolynomial] {
        &self.coeffs
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
}

/// `res_x(p, q)`: eliminate `x`, leaving a polynomial in `y`.
pub fn resultant_x(p: &Bivariate, q: &Bivariate) -> Result<IntPolynomial> {
    if p.coeffs.is_empty() || q.coeffs.is_empty() {
        return Err(crate::error::Error::ZeroPolynomial);
    }
    Ok(prs::resultant(&p.coeffs, &q.coeffs))
}

/// Polynomial vanishing at every `α + β` with `p(α) = 0`, `q(β) = 0`.
pub(crate) fn sum_polynomial(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    prs::resultant(&Bivariate::from_x(p).coeffs, &Bivariate::shifted(q).coeffs)
}

/// Polynomial vanishing at every `α · β` (requires `p(0) ≠ 0`).
pub(crate) fn product_polynomial(p: &IntPolynomial, q: &IntPolynomial) -> IntPolynomial {
    prs::resultant(&Bivariate::from_x(p).coeffs, &Bivariate::homogenized(q).coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn roots_vanish(r: &IntPolynomial, values: &[f64]) {
        let f: Vec<f64> = r.coeffs().iter().map(|c| c.to_string().parse().unwrap()).collect();
        for &v in values {
            let y = f.iter().rev().fold(0.0, |acc, c| acc * v + c);
            let scale: f64 = f.iter().enumerate().map(|(i, c)| c.abs() * v.abs().powi(i as i32)).sum();
            assert!(y.abs() <= 1e-9 * scale.max(1.0), "r({v}) = {y}");
        }
    }

    #[test]
    fn sqrt2_plus_sqrt3() {
        // res_x(x² − 2, (y − x)² − 3) = y⁴ − 10y² + 1
        let r = resultant_x(&Bivariate::from_x(&p(&[-2, 0, 1])), &Bivariate::shifted(&p(&[-3, 0, 1])))
            .unwrap();
        assert_eq!(r.primitive_part(), p(&[1, 0, -10, 0, 1]));
        roots_vanish(&r, &[2f64.sqrt() + 3f64.sqrt()]);
        // sanity of the numeric oracle: 3.1462643699…
        assert!((2f64.sqrt() + 3f64.sqrt() - 3.146_264_369_9).abs() < 1e-9);
    }

    #[test]
    fn two_sqrt2() {
        // res_x(x² − 2, y − 2x) = y² − 8 up to sign
        let line = Bivariate::from_terms(&[(0, 1, 1), (1, 0, -2)]);
        let r = resultant_x(&Bivariate::from_x(&p(&[-2, 0, 1])), &line).unwrap();
        assert_eq!(r.primitive_part(), p(&[-8, 0, 1]));
        assert!((2.0 * 2f64.sqrt()).powi(2) - 8.0 < 1e-12);
    }

    #[test]
    fn linear_specialisation() {
        // res_x(x − 3, x² + x + 1) = ±13
        let r = resultant_x(&Bivariate::from_x(&p(&[-3, 1])), &Bivariate::from_x(&p(&[1, 1, 1])))
            .unwrap();
        assert_eq!(r, IntPolynomial::constant(BigInt::from(13)));
    }

    #[test]
    fn sum_and_product_vanish_at_float_oracles() {
        let a = p(&[-2, 0, 0, 1]); // ∛2
        let b = p(&[-1, -1, 1]); // golden ratio and its conjugate
        let c2 = 2f64.cbrt();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let psi = (1.0 - 5f64.sqrt()) / 2.0;
        roots_vanish(&sum_polynomial(&a, &b), &[c2 + phi, c2 + psi]);
        roots_vanish(&product_polynomial(&a, &b), &[c2 * phi, c2 * psi]);
    }
}
