//! Real-root isolation for integer polynomials via Sturm sequences.
//!
//! Rational roots are found exactly (divisor enumeration plus deflation) and
//! reported as degenerate intervals; the remaining simple irrational roots
//! are bracketed by sign-change intervals refinable to any rational width.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::ratpoly::{derivative, div_exact, eval, gcd_poly, rem, RatPoly};
use crate::error::{Error, Result};

/// An isolating interval for a single real root of `polynomial`.
///
/// Degenerate intervals (`lo == hi`) are exact rational roots. For proper
/// intervals the polynomial changes sign between the endpoints and has
/// exactly one root strictly inside.
#[derive(Debug, Clone, PartialEq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub polynomial: IntPoly,
}

impl RootInterval {
    pub fn is_exact_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        ((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Shrinks the interval by bisection until its width is at most `width`.
    /// If a bisection point happens to be an exact root, the interval
    /// degenerates to that point.
    pub fn refine(&self, width: &BigRational) -> RootInterval {
        let mut out = self.clone();
        let two = BigRational::from_integer(BigInt::from(2));
        while !out.is_exact_point() && out.width() > *width {
            let mid = (&out.lo + &out.hi) / &two;
            match out.polynomial.sign_at(&mid) {
                Ordering::Equal => {
                    out.lo = mid.clone();
                    out.hi = mid;
                }
                s => {
                    if s == out.polynomial.sign_at(&out.lo) {
                        out.lo = mid;
                    } else {
                        out.hi = mid;
                    }
                }
            }
        }
        out
    }

    /// Refines until `predicate` holds for both endpoints (degenerate
    /// intervals test the single point). Bails out after `max_steps`
    /// bisections, which indicates the root does not satisfy the predicate.
    pub fn refine_until(
        &self,
        width: &BigRational,
        max_steps: usize,
        predicate: impl Fn(&BigRational) -> bool,
    ) -> Result<RootInterval> {
        let mut out = self.refine(width);
        let two = BigRational::from_integer(BigInt::from(2));
        for _ in 0..max_steps {
            if out.is_exact_point() {
                if predicate(&out.lo) {
                    return Ok(out);
                }
                return Err(Error::Internal(
                    "exact root fails the required endpoint predicate".into(),
                ));
            }
            if predicate(&out.lo) && predicate(&out.hi) {
                return Ok(out);
            }
            let mid = (&out.lo + &out.hi) / &two;
            match out.polynomial.sign_at(&mid) {
                Ordering::Equal => {
                    out.lo = mid.clone();
                    out.hi = mid;
                }
                s => {
                    if s == out.polynomial.sign_at(&out.lo) {
                        out.lo = mid;
                    } else {
                        out.hi = mid;
                    }
                }
            }
        }
        Err(Error::Internal(
            "root interval refinement exceeded the step budget".into(),
        ))
    }
}

/// The squarefree part `p / gcd(p, p')` as a primitive integer polynomial.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    let rp = p.to_rational_coeffs();
    let g = gcd_poly(&rp, &derivative(&rp));
    if g.len() <= 1 {
        return p.primitive();
    }
    let q = div_exact(&rp, &g);
    IntPoly::from_rational_coeffs(&q).primitive()
}

struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    fn new(p: &IntPoly) -> Self {
        let p0 = p.to_rational_coeffs();
        let p1 = derivative(&p0);
        let mut chain = vec![p0, p1];
        loop {
            let n = chain.len();
            if chain[n - 1].is_empty() {
                chain.pop();
                break;
            }
            let mut r = rem(&chain[n - 2], &chain[n - 1]);
            for c in &mut r {
                *c = -c.clone();
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = eval(p, x);
            if v.is_zero() {
                continue;
            }
            let neg = v.is_negative();
            if let Some(prev) = last {
                if prev != neg {
                    count += 1;
                }
            }
            last = Some(neg);
        }
        count
    }

    /// Number of distinct roots in the open interval `(lo, hi)`;
    /// neither endpoint may be a root.
    fn count_open(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }
}

/// `1 + max |a_i| / |a_n|`: every real root lies strictly inside `(-B, B)`.
fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lead = p.leading().expect("nonzero polynomial").magnitude().clone();
    let max = p
        .coeffs()
        .iter()
        .take(p.coeffs().len() - 1)
        .map(|c| c.magnitude().clone())
        .max()
        .unwrap_or_default();
    BigRational::one()
        + BigRational::new(BigInt::from(max), BigInt::from(lead))
}

fn divisors_up_to_cap(n: &BigInt, cap: u64) -> Option<Vec<BigInt>> {
    let n = n.magnitude();
    if n.is_zero() {
        return Some(vec![]);
    }
    let n_u64: u64 = u64::try_from(n).ok().filter(|&v| v <= cap)?;
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= n_u64 {
        if n_u64 % d == 0 {
            divs.push(BigInt::from(d));
            if d != n_u64 / d {
                divs.push(BigInt::from(n_u64 / d));
            }
        }
        d += 1;
    }
    Some(divs)
}

/// Exact rational roots of `p` by divisor enumeration. Returns `None` when
/// the coefficients are too large to enumerate; isolation still handles any
/// missed rational root through midpoint hits.
fn rational_roots(p: &IntPoly) -> Option<Vec<BigRational>> {
    const CAP: u64 = 1_000_000_000_000;
    let c0 = p.constant_term();
    debug_assert!(!c0.is_zero(), "zero roots must be deflated first");
    let lead = p.leading()?.clone();
    let nums = divisors_up_to_cap(&c0, CAP)?;
    let dens = divisors_up_to_cap(&lead, CAP)?;
    let mut roots = Vec::new();
    for num in &nums {
        for den in &dens {
            for sign in [1, -1] {
                let cand = BigRational::new(num * BigInt::from(sign), den.clone());
                if p.eval_rational(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    Some(roots)
}

/// Isolates every distinct real root of `q`. Intervals are pairwise
/// disjoint, sorted in increasing order, and never straddle zero.
pub fn isolate_real_roots(q: &IntPoly) -> Result<Vec<RootInterval>> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if q.degree() == Some(0) {
        return Ok(vec![]);
    }

    let mut sf = squarefree_part(q);
    let mut exact_roots: Vec<BigRational> = Vec::new();

    // roots at zero
    if sf.constant_term().is_zero() {
        exact_roots.push(BigRational::zero());
        let mut coeffs = sf.coeffs().to_vec();
        while coeffs.first().is_some_and(Zero::is_zero) {
            coeffs.remove(0);
        }
        sf = IntPoly::new(coeffs);
    }

    // rational roots, deflated so the remainder has only irrational roots
    if sf.degree() > Some(0) {
        if let Some(roots) = rational_roots(&sf) {
            for r in roots {
                exact_roots.push(r.clone());
                sf = sf.deflate_rational_root(&r);
            }
        }
    }

    let mut intervals: Vec<RootInterval> = Vec::new();
    'restart: loop {
        intervals.clear();
        if sf.degree() <= Some(0) {
            break;
        }
        let chain = SturmChain::new(&sf);
        let bound = cauchy_bound(&sf);
        let zero = BigRational::zero();
        // never bisect across zero so every interval is sign-definite
        let mut stack = vec![(-bound.clone(), zero.clone()), (zero, bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = chain.count_open(&lo, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 && sf.sign_at(&lo) != sf.sign_at(&hi) {
                intervals.push(RootInterval {
                    lo,
                    hi,
                    polynomial: sf.clone(),
                });
                continue;
            }
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            if sf.eval_rational(&mid).is_zero() {
                // a rational root the enumeration missed: deflate and redo
                exact_roots.push(mid.clone());
                sf = sf.deflate_rational_root(&mid);
                continue 'restart;
            }
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        break;
    }

    // shrink intervals until they exclude every exact rational root, so the
    // returned intervals are pairwise disjoint
    let two = BigRational::from_integer(BigInt::from(2));
    for interval in &mut intervals {
        for r in &exact_roots {
            while interval.lo < *r && *r < interval.hi {
                let mid = (&interval.lo + &interval.hi) / &two;
                match interval.polynomial.sign_at(&mid) {
                    Ordering::Equal => {
                        interval.lo = mid.clone();
                        interval.hi = mid;
                    }
                    s if s == interval.polynomial.sign_at(&interval.lo) => interval.lo = mid,
                    _ => interval.hi = mid,
                }
            }
        }
    }

    for r in exact_roots {
        // minimal polynomial q*t - p of the rational root p/q
        let linear = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
        intervals.push(RootInterval {
            lo: r.clone(),
            hi: r,
            polynomial: linear,
        });
    }
    intervals.sort_by(|a, b| (&a.lo + &a.hi).cmp(&(&b.lo + &b.hi)));
    Ok(intervals)
}

/// Total number of distinct real roots (Sturm count over the whole line).
pub fn real_root_count(q: &IntPoly) -> Result<usize> {
    Ok(isolate_real_roots(q)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn example_cubic_has_one_real_root() {
        // f_w = -1 + t - 2t^2 + t^3; its single real root is near 1.7549
        let f = IntPoly::from_i64(&[-1, 1, -2, 1]);
        let roots = isolate_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 1);
        let r = roots[0].refine(&rat(1, 100));
        assert!(r.lo > rat(175, 100) && r.hi < rat(176, 100), "{r:?}");
        // exact sign change across (1.75, 1.76)
        assert_ne!(f.sign_at(&rat(175, 100)), f.sign_at(&rat(176, 100)));
    }

    #[test]
    fn sqrt_two_roots() {
        let f = IntPoly::from_i64(&[-2, 0, 1]);
        let roots = isolate_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        let neg = roots[0].refine(&rat(1, 1000));
        let pos = roots[1].refine(&rat(1, 1000));
        assert!(neg.lo > rat(-2, 1) && neg.hi < rat(-1, 1));
        assert!(pos.lo > rat(1, 1) && pos.hi < rat(2, 1));
    }

    #[test]
    fn rational_roots_become_exact_points() {
        // (t - 1)(t + 2)(3t - 1)(t^2 + 1)
        let f = IntPoly::from_i64(&[-1, 1])
            .mul(&IntPoly::from_i64(&[2, 1]))
            .mul(&IntPoly::from_i64(&[-1, 3]))
            .mul(&IntPoly::from_i64(&[1, 0, 1]));
        let roots = isolate_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(RootInterval::is_exact_point));
        let values: Vec<_> = roots.iter().map(|r| r.lo.clone()).collect();
        assert_eq!(values, vec![rat(-2, 1), rat(1, 3), rat(1, 1)]);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (t - 1)^2 (t^2 - 2)
        let f = IntPoly::from_i64(&[-1, 1])
            .mul(&IntPoly::from_i64(&[-1, 1]))
            .mul(&IntPoly::from_i64(&[-2, 0, 1]));
        let roots = isolate_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn root_at_zero() {
        let f = IntPoly::from_i64(&[0, 0, -2, 1]); // t^2 (t - 2)
        let roots = isolate_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].is_exact_point() && roots[0].lo.is_zero());
        assert!(roots[1].is_exact_point() && roots[1].lo == rat(2, 1));
    }

    #[test]
    fn no_real_roots() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(isolate_real_roots(&f).unwrap().len(), 0);
    }

    #[test]
    fn intervals_keep_sign_change_under_refinement() {
        let f = IntPoly::from_i64(&[-1, 1, -2, 1]);
        let r = isolate_real_roots(&f).unwrap()[0].refine(&rat(1, 1_000_000));
        assert!(r.width() <= rat(1, 1_000_000));
        assert_ne!(f.sign_at(&r.lo), f.sign_at(&r.hi));
    }
}
