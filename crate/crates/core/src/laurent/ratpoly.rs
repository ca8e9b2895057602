//! Crate-internal dense rational polynomials (ascending coefficients),
//! shared by root isolation and the Squier-form solver.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub(crate) type RatPoly = Vec<BigRational>;

pub(crate) fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn derivative(p: &[BigRational]) -> RatPoly {
    if p.len() <= 1 {
        return Vec::new();
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// Remainder of polynomial division.
pub(crate) fn rem(num: &[BigRational], den: &[BigRational]) -> RatPoly {
    assert!(!den.is_empty());
    let mut r: RatPoly = num.to_vec();
    trim(&mut r);
    let dn = den.len();
    let lead = &den[dn - 1];
    while r.len() >= dn {
        let q = r.last().unwrap() / lead;
        let shift = r.len() - dn;
        for i in 0..dn {
            let v = &den[i] * &q;
            r[shift + i] -= v;
        }
        trim(&mut r);
    }
    r
}

/// Monic GCD by the Euclidean algorithm.
pub(crate) fn gcd_poly(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let mut a: RatPoly = a.to_vec();
    let mut b: RatPoly = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        for c in &mut a {
            *c /= &lead;
        }
    }
    a
}

/// Exact quotient; panics in debug builds if the division is not exact.
pub(crate) fn div_exact(num: &[BigRational], den: &[BigRational]) -> RatPoly {
    let mut r: RatPoly = num.to_vec();
    trim(&mut r);
    let dn = den.len();
    let lead = &den[dn - 1];
    if r.is_empty() {
        return Vec::new();
    }
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(dn) + 1];
    while r.len() >= dn {
        let c = r.last().unwrap() / lead;
        let shift = r.len() - dn;
        q[shift] = c.clone();
        for i in 0..dn {
            let v = &den[i] * &c;
            r[shift + i] -= v;
        }
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "division was not exact");
    q
}
