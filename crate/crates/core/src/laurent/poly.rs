//! Integer Laurent polynomials in one variable.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial with arbitrary-precision integer coefficients,
/// stored as a sparse map degree -> nonzero coefficient. The empty map is
/// the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(BigInt::one(), 0)
    }

    /// The variable itself, `t`.
    pub fn var() -> Self {
        Self::term(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c.into(), 0)
    }

    /// A single term `c * t^deg`.
    pub fn term(c: impl Into<BigInt>, deg: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(deg, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (deg, c) in terms {
            p.add_term(&c, deg);
        }
        p
    }

    /// Dense constructor from `i64` coefficients starting at `low` degree.
    pub fn from_dense(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (low + i as i64, BigInt::from(c))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    pub fn coeff(&self, deg: i64) -> BigInt {
        self.coeffs.get(&deg).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    /// Lowest and highest degree of the support; `None` for the zero polynomial.
    pub fn degree_bounds(&self) -> Option<(i64, i64)> {
        let lo = self.coeffs.keys().next()?;
        let hi = self.coeffs.keys().next_back()?;
        Some((*lo, *hi))
    }

    pub fn add_term(&mut self, c: &BigInt, deg: i64) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(deg).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (deg, c) in other.terms() {
            out.add_term(c, deg);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (d1, c1) in self.terms() {
            for (d2, c2) in other.terms() {
                out.add_term(&(c1 * c2), d1 + d2);
            }
        }
        out
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..exponent {
            out = out.mul(self);
        }
        out
    }

    /// Substitution `t -> t^-1`: negates every degree.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (-*d, c.clone())).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d + k, c.clone())).collect(),
        }
    }

    /// Substitution `t -> s^2`: doubles every degree. Used to embed
    /// polynomials in `t` into the auxiliary ring in `s`.
    pub fn subst_square(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(d, c)| (2 * *d, c.clone())).collect(),
        }
    }

    /// Splits into even and odd parts: `p(s) = e(s^2) + s * o(s^2)`.
    pub fn even_odd_parts(&self) -> (LaurentPoly, LaurentPoly) {
        let mut even = Self::zero();
        let mut odd = Self::zero();
        for (d, c) in self.terms() {
            if d.rem_euclid(2) == 0 {
                even.add_term(c, d / 2);
            } else {
                odd.add_term(c, (d - 1) / 2);
            }
        }
        (even, odd)
    }

    /// `Some((sign, k))` when the polynomial is the unit `sign * t^k`.
    pub fn as_unit_monomial(&self) -> Option<(i8, i64)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (deg, c) = self.coeffs.iter().next()?;
        if c.magnitude().is_one() {
            Some((if c.is_negative() { -1 } else { 1 }, *deg))
        } else {
            None
        }
    }

    /// GCD of all coefficients (nonnegative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn eval_f64(&self, t0: f64) -> f64 {
        self.terms()
            .map(|(d, c)| {
                let c = c.to_string().parse::<f64>().unwrap_or(f64::NAN);
                c * t0.powi(d as i32)
            })
            .sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

/// Prints as a sparse sum, e.g. `-1*t^-1 + 1 - 1*t^2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.terms() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if deg == 0 {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{mag}*t^{deg}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_product_cancels_degrees() {
        let t = LaurentPoly::var();
        let tinv = LaurentPoly::term(1, -1);
        assert!(t.mul(&tinv).is_one());
    }

    #[test]
    fn difference_of_squares() {
        // (-t+1)(-t-1) = t^2 - 1
        let p = LaurentPoly::from_dense(0, &[1, -1]);
        let q = LaurentPoly::from_dense(0, &[-1, -1]);
        assert_eq!(p.mul(&q), LaurentPoly::from_dense(0, &[-1, 0, 1]));
    }

    #[test]
    fn cube_of_binomial() {
        let p = LaurentPoly::from_dense(0, &[-1, 1]); // t - 1
        assert_eq!(p.pow(3), LaurentPoly::from_dense(0, &[-1, 3, -3, 1]));
    }

    #[test]
    fn bar_negates_degrees() {
        assert_eq!(LaurentPoly::term(1, 3).bar(), LaurentPoly::term(1, -3));
        // -t + 1 - t^-1 is bar-invariant
        let p = LaurentPoly::from_dense(-1, &[-1, 1, -1]);
        assert_eq!(p.bar(), p);
    }

    #[test]
    fn even_odd_split_reassembles() {
        let p = LaurentPoly::from_dense(-2, &[3, 1, -4, 0, 7, 2]);
        let (e, o) = p.even_odd_parts();
        let back = e.subst_square().add(&o.subst_square().shifted(1));
        assert_eq!(back, p);
    }

    #[test]
    fn display_format() {
        let p = LaurentPoly::from_dense(-1, &[-1, 1, 0, -1]);
        assert_eq!(p.to_string(), "-1*t^-1 + 1 - 1*t^2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn unit_monomials() {
        assert_eq!(LaurentPoly::term(-1, 2).as_unit_monomial(), Some((-1, 2)));
        assert_eq!(LaurentPoly::term(2, 1).as_unit_monomial(), None);
        assert_eq!(
            LaurentPoly::from_dense(0, &[1, 1]).as_unit_monomial(),
            None
        );
    }
}
