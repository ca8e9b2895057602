//! The scalar tower for specialization: exact rationals, exact real
//! quadratic-field numbers `a + b*sqrt(d)`, and double-precision floats.
//!
//! Exact kinds never silently degrade to floats, and quadratic numbers over
//! different `d` never mix inside one arithmetic expression.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::laurent::IntPoly;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Largest radicand we are willing to factor when checking squarefree-ness
/// or extracting square parts (trial division up to the cube-compatible
/// bound 10^6 covers every d <= 10^12).
const FACTOR_CAP: u64 = 1_000_000_000_000;

fn is_squarefree(d: u64) -> bool {
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n && p <= 1_000_000 {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Splits `n > 0` as `square * sf` with `sf` squarefree.
/// `None` when `n` is too large to factor by trial division.
fn square_part(n: &BigInt) -> Option<(BigInt, u64)> {
    let n_u64: u64 = u64::try_from(n.magnitude()).ok()?;
    if n_u64 > FACTOR_CAP {
        return None;
    }
    let mut sf = 1u64;
    let mut sq = 1u64;
    let mut m = n_u64;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            sq *= p.pow(e / 2);
            if e % 2 == 1 {
                sf *= p;
            }
        }
        p += 1;
    }
    sf *= m;
    Some((BigInt::from(sq), sf))
}

/// An element `a + b*sqrt(d)` of the real quadratic field Q(sqrt d),
/// with `d >= 2` squarefree. `b = 0` embeds the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadNum {
    pub a: Rat,
    pub b: Rat,
    pub d: u64,
}

impl QuadNum {
    pub fn new(a: Rat, b: Rat, d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::ScalarParse(format!(
                "quadratic radicand must be >= 2, got {d}"
            )));
        }
        if d > FACTOR_CAP {
            return Err(Error::RadicandTooLarge(d));
        }
        if !is_squarefree(d) {
            return Err(Error::NotSquarefree(d));
        }
        Ok(QuadNum { a, b, d })
    }

    pub fn from_rational(a: Rat, d: u64) -> Result<Self> {
        Self::new(a, Rat::zero(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        Ok(QuadNum {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.d,
        })
    }

    pub fn neg(&self) -> Self {
        QuadNum {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let d = Rat::from_integer(BigInt::from(self.d));
        Ok(QuadNum {
            a: &self.a * &other.a + &self.b * &other.b * &d,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d,
        })
    }

    /// The Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        QuadNum {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm `x * conj(x) = a^2 - b^2 d`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from_integer(BigInt::from(self.d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadNum {
            a: &self.a / &n,
            b: -&self.b / &n,
            d: self.d,
        })
    }

    /// Exact sign by case analysis on the signs of `a`, `b` and the
    /// comparison of `a^2` with `b^2 d`; no floating point involved.
    pub fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&Rat::zero());
        if self.b.is_zero() {
            return sa;
        }
        let sb = self.b.cmp(&Rat::zero());
        if sa == sb || sa == Ordering::Equal {
            return sb;
        }
        // a and b have strictly opposite signs: compare a^2 with b^2 d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rat::from_integer(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        self.check_field(other)?;
        let diff = QuadNum {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d: self.d,
        };
        Ok(diff.sign())
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::MixedField(self.d, other.d));
        }
        Ok(())
    }

    /// Rational lower/upper bounds with error below `2^-bits`.
    pub fn approx_interval(&self, bits: u32) -> (Rat, Rat) {
        // sqrt(d) in [s, s+1] / 2^bits via the integer square root
        let scale = BigInt::one() << bits;
        let scaled = BigInt::from(self.d) * &scale * &scale;
        let s = scaled.sqrt();
        let lo_sqrt = Rat::new(s.clone(), scale.clone());
        let hi_sqrt = Rat::new(s + 1, scale);
        let (blo, bhi) = if self.b.is_negative() {
            (&self.b * &hi_sqrt, &self.b * &lo_sqrt)
        } else {
            (&self.b * &lo_sqrt, &self.b * &hi_sqrt)
        };
        (&self.a + blo, &self.a + bhi)
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.approx_interval(80);
        ((lo + hi) / rat(2, 1)).to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q({},{},{})", self.a, self.b, self.d)
    }
}

/// Classification of a quadratic number against the "unit quadratic
/// algebraic integer" hypothesis (monic integer quadratic, norm 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadIntegerClass {
    /// Monic integer minimal polynomial and `x * conj(x) = 1`.
    UnitNormOne,
    /// Algebraic integer with norm -1: outside the proof's hypothesis.
    NormMinusOne,
    /// Algebraic integer with |norm| != 1.
    NonUnit,
    /// Not an algebraic integer.
    NotAlgebraicInteger,
    /// Rational input; not a quadratic irrationality.
    Rational,
}

#[derive(Debug, Clone)]
pub struct QuadIntegerCheck {
    pub class: QuadIntegerClass,
    pub norm: Rat,
    /// `t^2 - tr*t + norm` when x is a genuine quadratic irrationality.
    pub minimal_poly: Option<IntPoly>,
}

impl QuadIntegerCheck {
    pub fn is_unit_norm_one(&self) -> bool {
        self.class == QuadIntegerClass::UnitNormOne
    }
}

/// Decides whether `x` is a unit quadratic algebraic integer in the sense
/// used by the discreteness certificate: monic integer quadratic with
/// `x * conj(x) = 1`. Norm -1 is reported separately.
pub fn is_unit_quadratic_integer(x: &QuadNum) -> QuadIntegerCheck {
    let norm = x.norm();
    if x.b.is_zero() {
        return QuadIntegerCheck {
            class: QuadIntegerClass::Rational,
            norm,
            minimal_poly: None,
        };
    }
    let trace = &x.a + &x.a;
    let monic = trace.is_integer() && norm.is_integer();
    let minimal_poly = IntPoly::from_rational_coeffs(&[norm.clone(), -trace, Rat::one()]);
    if !monic {
        return QuadIntegerCheck {
            class: QuadIntegerClass::NotAlgebraicInteger,
            norm,
            minimal_poly: Some(minimal_poly),
        };
    }
    let class = if norm == Rat::one() {
        QuadIntegerClass::UnitNormOne
    } else if norm == -Rat::one() {
        QuadIntegerClass::NormMinusOne
    } else {
        QuadIntegerClass::NonUnit
    };
    QuadIntegerCheck {
        class,
        norm,
        minimal_poly: Some(minimal_poly),
    }
}

/// A real scalar: exact rational, exact quadratic, or floating point.
#[derive(Debug, Clone, PartialEq)]
pub enum RealScalar {
    Rational(Rat),
    Quadratic(QuadNum),
    Float(f64),
}

impl RealScalar {
    pub fn zero() -> Self {
        RealScalar::Rational(Rat::zero())
    }

    pub fn one() -> Self {
        RealScalar::Rational(Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        RealScalar::Rational(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(r: Rat) -> Self {
        RealScalar::Rational(r)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, RealScalar::Float(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RealScalar::Rational(r) => r.is_zero(),
            RealScalar::Quadratic(q) => q.is_zero(),
            RealScalar::Float(f) => *f == 0.0,
        }
    }

    /// The quadratic radicand when this scalar (or expression kind) lives in
    /// a genuine quadratic field.
    pub fn field_d(&self) -> Option<u64> {
        match self {
            RealScalar::Quadratic(q) => Some(q.d),
            _ => None,
        }
    }

    fn promote(&self, d: u64) -> Result<QuadNum> {
        match self {
            RealScalar::Rational(r) => QuadNum::from_rational(r.clone(), d),
            RealScalar::Quadratic(q) => {
                if q.d == d {
                    Ok(q.clone())
                } else if q.b.is_zero() {
                    QuadNum::from_rational(q.a.clone(), d)
                } else {
                    Err(Error::MixedField(q.d, d))
                }
            }
            RealScalar::Float(_) => Err(Error::ExactFloatMix("field promotion")),
        }
    }

    /// Drops a quadratic wrapper whose irrational part vanished.
    fn normalize(self) -> Self {
        match self {
            RealScalar::Quadratic(q) if q.b.is_zero() => RealScalar::Rational(q.a),
            other => other,
        }
    }

    fn binop(
        &self,
        other: &Self,
        rational: impl Fn(&Rat, &Rat) -> Rat,
        quadratic: impl Fn(&QuadNum, &QuadNum) -> Result<QuadNum>,
        float: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        match (self, other) {
            (RealScalar::Float(x), RealScalar::Float(y)) => Ok(RealScalar::Float(float(*x, *y))),
            (RealScalar::Float(x), y) => Ok(RealScalar::Float(float(*x, y.to_f64()))),
            (x, RealScalar::Float(y)) => Ok(RealScalar::Float(float(x.to_f64(), *y))),
            (RealScalar::Rational(x), RealScalar::Rational(y)) => {
                Ok(RealScalar::Rational(rational(x, y)))
            }
            (x, y) => {
                let d = x
                    .field_d()
                    .or_else(|| y.field_d())
                    .expect("at least one quadratic operand");
                let qx = x.promote(d)?;
                let qy = y.promote(d)?;
                Ok(quadratic(&qx, &qy)?.into_scalar())
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binop(other, |x, y| x + y, QuadNum::add, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            RealScalar::Rational(r) => RealScalar::Rational(-r.clone()),
            RealScalar::Quadratic(q) => RealScalar::Quadratic(q.neg()),
            RealScalar::Float(f) => RealScalar::Float(-f),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binop(other, |x, y| x * y, QuadNum::mul, |x, y| x * y)
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            RealScalar::Rational(r) => {
                if r.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(RealScalar::Rational(r.recip()))
            }
            RealScalar::Quadratic(q) => Ok(q.inv()?.into_scalar()),
            RealScalar::Float(f) => {
                if *f == 0.0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(RealScalar::Float(1.0 / f))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// Exact total order for compatible exact kinds; floats compare as IEEE
    /// values. Mixing exact and float operands is rejected.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        match (self, other) {
            (RealScalar::Float(x), RealScalar::Float(y)) => x
                .partial_cmp(y)
                .ok_or_else(|| Error::Internal("NaN in comparison".into())),
            (RealScalar::Float(_), _) | (_, RealScalar::Float(_)) => {
                Err(Error::ExactFloatMix("compare"))
            }
            (RealScalar::Rational(x), RealScalar::Rational(y)) => Ok(x.cmp(y)),
            (x, y) => {
                let d = x.field_d().or_else(|| y.field_d()).unwrap();
                x.promote(d)?.cmp_exact(&y.promote(d)?)
            }
        }
    }

    pub fn sign(&self) -> Result<Ordering> {
        match self {
            RealScalar::Rational(r) => Ok(r.cmp(&Rat::zero())),
            RealScalar::Quadratic(q) => Ok(q.sign()),
            RealScalar::Float(f) => f
                .partial_cmp(&0.0)
                .ok_or_else(|| Error::Internal("NaN sign".into())),
        }
    }

    /// Equality across different quadratic fields, decided structurally:
    /// `a + b*sqrt(d1) = c + e*sqrt(d2)` with `d1 != d2` squarefree forces
    /// `b = e = 0`.
    pub fn eq_cross_field(&self, other: &Self) -> Result<bool> {
        match self.compare(other) {
            Ok(ord) => Ok(ord == Ordering::Equal),
            Err(Error::MixedField(_, _)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Total order that also handles operands from different quadratic
    /// fields by exact structural equality plus interval refinement.
    pub fn compare_cross_field(&self, other: &Self) -> Result<Ordering> {
        match self.compare(other) {
            Ok(ord) => Ok(ord),
            Err(Error::MixedField(_, _)) => {
                // distinct fields: the values are provably unequal, so
                // interval refinement terminates
                for bits in [64u32, 128, 256, 512, 1024, 2048, 4096] {
                    let (alo, ahi) = self.approx_interval(bits)?;
                    let (blo, bhi) = other.approx_interval(bits)?;
                    if ahi < blo {
                        return Ok(Ordering::Less);
                    }
                    if bhi < alo {
                        return Ok(Ordering::Greater);
                    }
                }
                Err(Error::Internal(
                    "cross-field comparison did not separate".into(),
                ))
            }
            Err(e) => Err(e),
        }
    }

    pub fn approx_interval(&self, bits: u32) -> Result<(Rat, Rat)> {
        match self {
            RealScalar::Rational(r) => Ok((r.clone(), r.clone())),
            RealScalar::Quadratic(q) => Ok(q.approx_interval(bits)),
            RealScalar::Float(_) => Err(Error::ExactFloatMix("interval approximation")),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealScalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            RealScalar::Quadratic(q) => q.to_f64(),
            RealScalar::Float(f) => *f,
        }
    }

    /// Galois conjugation: identity on rationals, `sqrt(d) -> -sqrt(d)` on
    /// quadratics. Floats carry no field structure.
    pub fn galois_conjugate(&self) -> Result<Self> {
        match self {
            RealScalar::Rational(r) => Ok(RealScalar::Rational(r.clone())),
            RealScalar::Quadratic(q) => Ok(RealScalar::Quadratic(q.conjugate())),
            RealScalar::Float(_) => Err(Error::ExactFloatMix("galois conjugation")),
        }
    }

    /// Exact square root within the scalar tower, when one exists:
    /// rationals may lift into a quadratic field, quadratics may have square
    /// roots in their own field. `None` when the root lives in a bigger field
    /// (or the radicand is too large to factor).
    pub fn sqrt_exact(&self) -> Option<RealScalar> {
        match self {
            RealScalar::Rational(r) => sqrt_of_rational(r),
            RealScalar::Quadratic(q) => {
                if q.sign() == Ordering::Less {
                    return None;
                }
                if q.b.is_zero() {
                    // rational value: try rational/quadratic lift, then sqrt(d)-multiples
                    if let Some(s) = sqrt_of_rational(&q.a) {
                        return Some(s);
                    }
                }
                // solve (u + v sqrt d)^2 = a + b sqrt d
                let norm = q.norm();
                if norm.is_negative() {
                    return None;
                }
                let n = exact_rational_sqrt(&norm)?;
                let two = rat(2, 1);
                for sign in [1i64, -1] {
                    let u2 = (&q.a + Rat::from_integer(BigInt::from(sign)) * &n) / &two;
                    if u2.is_negative() {
                        continue;
                    }
                    if u2.is_zero() {
                        // pure sqrt(d)-multiple: v^2 d = a
                        let v2 = &q.a / Rat::from_integer(BigInt::from(q.d));
                        if let Some(v) = exact_rational_sqrt(&v2) {
                            let cand = QuadNum::new(Rat::zero(), v, q.d).ok()?;
                            let cand = if cand.sign() == Ordering::Less {
                                cand.neg()
                            } else {
                                cand
                            };
                            if cand.mul(&cand).ok()? == *q {
                                return Some(RealScalar::Quadratic(cand).normalize());
                            }
                        }
                        continue;
                    }
                    if let Some(u) = exact_rational_sqrt(&u2) {
                        if u.is_zero() {
                            continue;
                        }
                        let v = &q.b / (&two * &u);
                        let cand = QuadNum::new(u, v, q.d).ok()?;
                        let cand = if cand.sign() == Ordering::Less {
                            cand.neg()
                        } else {
                            cand
                        };
                        if cand.mul(&cand).ok()? == *q {
                            return Some(RealScalar::Quadratic(cand).normalize());
                        }
                    }
                }
                None
            }
            RealScalar::Float(f) => {
                if *f < 0.0 {
                    None
                } else {
                    Some(RealScalar::Float(f.sqrt()))
                }
            }
        }
    }
}

impl QuadNum {
    fn into_scalar(self) -> RealScalar {
        RealScalar::Quadratic(self).normalize()
    }
}

fn exact_rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

fn sqrt_of_rational(r: &Rat) -> Option<RealScalar> {
    if r.is_negative() {
        return None;
    }
    if let Some(s) = exact_rational_sqrt(r) {
        return Some(RealScalar::Rational(s));
    }
    // sqrt(p/q) = sqrt(p q) / q = m sqrt(sf) / q
    let pq = r.numer() * r.denom();
    let (m, sf) = square_part(&pq)?;
    if sf < 2 {
        return None;
    }
    let coeff = Rat::new(m, r.denom().clone());
    Some(RealScalar::Quadratic(QuadNum::new(Rat::zero(), coeff, sf).ok()?))
}

impl fmt::Display for RealScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealScalar::Rational(r) => write!(f, "{r}"),
            RealScalar::Quadratic(q) => write!(f, "{q}"),
            RealScalar::Float(x) => {
                if x.fract() == 0.0 && x.is_finite() {
                    write!(f, "{x:.1}")
                } else {
                    write!(f, "{x}")
                }
            }
        }
    }
}

/// Parses the scalar grammar: `p/q` or an integer (exact rational),
/// `q(a,b,d)` meaning `a + b*sqrt(d)`, or a decimal literal (float).
pub fn parse_scalar(text: &str) -> Result<RealScalar> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::ScalarParse("empty scalar".into()));
    }
    if let Some(body) = text.strip_prefix("q(").and_then(|s| s.strip_suffix(')')) {
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::ScalarParse(format!(
                "expected q(a,b,d) with three arguments, got '{text}'"
            )));
        }
        let a = parse_rat(parts[0])?;
        let b = parse_rat(parts[1])?;
        let d: u64 = parts[2]
            .parse()
            .map_err(|_| Error::ScalarParse(format!("bad radicand '{}'", parts[2])))?;
        return Ok(RealScalar::Quadratic(QuadNum::new(a, b, d)?).normalize());
    }
    if text.contains('/') {
        return Ok(RealScalar::Rational(parse_rat(text)?));
    }
    if text.contains('.') || text.contains('e') || text.contains('E') {
        let f: f64 = text
            .parse()
            .map_err(|_| Error::ScalarParse(format!("bad decimal literal '{text}'")))?;
        if !f.is_finite() {
            return Err(Error::ScalarParse(format!("non-finite literal '{text}'")));
        }
        return Ok(RealScalar::Float(f));
    }
    let n: BigInt = text
        .parse()
        .map_err(|_| Error::ScalarParse(format!("bad scalar '{text}'")))?;
    Ok(RealScalar::Rational(Rat::from_integer(n)))
}

fn parse_rat(text: &str) -> Result<Rat> {
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::ScalarParse(format!("bad numerator '{n}'")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::ScalarParse(format!("bad denominator '{d}'")))?;
            if d.is_zero() {
                return Err(Error::ScalarParse("zero denominator".into()));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = text
                .parse()
                .map_err(|_| Error::ScalarParse(format!("bad integer '{text}'")))?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// `(3 + sqrt 5) / 2`, the upper endpoint of the elliptic window.
pub fn window_upper() -> RealScalar {
    RealScalar::Quadratic(QuadNum::new(rat(3, 2), rat(1, 2), 5).unwrap())
}

/// `(3 - sqrt 5) / 2`, the lower endpoint of the elliptic window.
pub fn window_lower() -> RealScalar {
    RealScalar::Quadratic(QuadNum::new(rat(3, 2), rat(-1, 2), 5).unwrap())
}
