//! Ordinary integer polynomials, the input type for root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::LaurentPoly;
use crate::error::{Error, Result};

/// Dense integer polynomial in ascending degree; the leading (last)
/// coefficient is nonzero unless the polynomial is zero (empty).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Exact sign of the value at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> std::cmp::Ordering {
        self.eval_rational(x).cmp(&BigRational::zero())
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// GCD of coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut content = self.content();
        if self.leading().unwrap().is_negative() {
            content = -content;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &content).collect(),
        }
    }

    pub fn to_rational_coeffs(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// Clears denominators of a rational polynomial (ascending coefficients).
    pub fn from_rational_coeffs(coeffs: &[BigRational]) -> IntPoly {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly::new(
            coeffs
                .iter()
                .map(|c| c.numer() * &lcm / c.denom())
                .collect(),
        )
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone())),
        )
    }

    /// True iff `self` divides `g` exactly over the rationals.
    pub fn divides(&self, g: &IntPoly) -> bool {
        assert!(!self.is_zero(), "division by the zero polynomial");
        if g.is_zero() {
            return true;
        }
        if g.degree() < self.degree() {
            return false;
        }
        let d = self.to_rational_coeffs();
        let mut r = g.to_rational_coeffs();
        let dn = d.len();
        let lead = d[dn - 1].clone();
        while r.len() >= dn {
            let q = r.last().unwrap() / &lead;
            let shift = r.len() - dn;
            for i in 0..dn {
                let v = &d[i] * &q;
                r[shift + i] -= v;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            if r.is_empty() {
                return true;
            }
        }
        r.is_empty()
    }

    /// Exact synthetic division by `(x - r)`; the caller guarantees `r` is a
    /// root. Returns the quotient cleared to integer coefficients.
    pub fn deflate_rational_root(&self, r: &BigRational) -> IntPoly {
        debug_assert!(self.eval_rational(r).is_zero());
        let mut q: Vec<BigRational> = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut carry = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            carry = BigRational::from_integer(c.clone()) + r * &carry;
            q.push(carry.clone());
        }
        q.pop(); // remainder, zero by assumption
        q.reverse();
        IntPoly::from_rational_coeffs(&q).primitive()
    }
}

/// Writes a Laurent polynomial as `q(t) * t^shift` with `q` an ordinary
/// polynomial with nonzero constant term. Integer content is preserved.
pub fn normalize_to_intpoly(p: &LaurentPoly) -> Result<(IntPoly, i64)> {
    let (lo, hi) = p.degree_bounds().ok_or(Error::ZeroPolynomial)?;
    let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
    for deg in lo..=hi {
        coeffs.push(p.coeff(deg));
    }
    Ok((IntPoly::new(coeffs), lo))
}

/// Prints densely in ascending degree, e.g. `[-1, 1, -2, 1]`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        // t^-1 - 2 + t  ->  (1 - 2t + t^2, shift -1)
        let p = LaurentPoly::from_dense(-1, &[1, -2, 1]);
        let (q, shift) = normalize_to_intpoly(&p).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[1, -2, 1]));
        assert_eq!(shift, -1);

        let (q, shift) = normalize_to_intpoly(&LaurentPoly::term(1, 3)).unwrap();
        assert_eq!(q, IntPoly::one());
        assert_eq!(shift, 3);

        assert!(matches!(
            normalize_to_intpoly(&LaurentPoly::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn divisibility() {
        let f = IntPoly::from_i64(&[-1, 1]); // t - 1
        let g = IntPoly::from_i64(&[-1, 0, 1]); // t^2 - 1
        assert!(f.divides(&g));
        let f = IntPoly::from_i64(&[1, 1]); // t + 1
        let g = IntPoly::from_i64(&[1, 0, 1]); // t^2 + 1
        assert!(!f.divides(&g));
        // non-monic divisor with rational quotient: 2t-2 divides t^2-1
        let f = IntPoly::from_i64(&[-2, 2]);
        let g = IntPoly::from_i64(&[-1, 0, 1]);
        assert!(f.divides(&g));
    }

    #[test]
    fn deflation_removes_a_root() {
        // (t - 1)(t^2 + 3) deflated at 1
        let p = IntPoly::from_i64(&[-3, 3, -1, 1]);
        let one = BigRational::one();
        assert_eq!(p.eval_rational(&one), BigRational::zero());
        let q = p.deflate_rational_root(&one);
        assert_eq!(q, IntPoly::from_i64(&[3, 0, 1]));
    }

    #[test]
    fn display_dense_ascending() {
        assert_eq!(
            IntPoly::from_i64(&[-1, 1, -2, 1]).to_string(),
            "[-1, 1, -2, 1]"
        );
    }
}
