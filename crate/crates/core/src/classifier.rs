//! The classification of real specializations: every nonzero real t0 maps
//! to a verdict (regime, discreteness, faithfulness) with machine-checkable
//! evidence, exact whenever the input scalar is exact.

use std::cmp::Ordering;

use serde::Serialize;

use crate::burau::{conjugated_generators, specialize};
use crate::error::{Error, Result};
use crate::moebius::{classify_isometry, rotation_data, OrderClass};
use crate::scalar::RealScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    NegativeHyperbolic,
    PositiveOuter,
    ParabolicBoundary,
    EllipticWindow,
    ExcludedZero,
    MinusOne,
    One,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Discreteness {
    Yes,
    No,
    TriangleGroup(u64),
    NumericalNo,
    NumericalUndetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Faithfulness {
    Yes,
    No,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Certified,
    Numerical,
}

#[derive(Debug, Clone, Serialize)]
pub struct Evidence {
    pub name: String,
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecializationVerdict {
    pub t_input: String,
    pub regime: Regime,
    pub discrete: Discreteness,
    pub faithful: Faithfulness,
    pub exactness: Exactness,
    pub evidence: Vec<Evidence>,
}

impl SpecializationVerdict {
    fn push(&mut self, name: &str, status: &str, detail: String) {
        self.evidence.push(Evidence {
            name: name.to_string(),
            status: status.to_string(),
            detail,
        });
    }
}

fn window_poly_sign(t: &RealScalar) -> Result<Ordering> {
    // sign of t^2 - 3t + 1; negative strictly inside the elliptic window
    t.mul(t)?
        .sub(&t.mul(&RealScalar::from_int(3))?)?
        .add(&RealScalar::one())?
        .sign()
}

/// Classifies a real specialization parameter. `epsilon` and `n_max`
/// configure float-mode rotation matching only.
pub fn classify(t0: &RealScalar, epsilon: f64, n_max: u64) -> Result<SpecializationVerdict> {
    match t0 {
        RealScalar::Float(f) => classify_float(*f, epsilon, n_max),
        exact => classify_exact(exact, epsilon, n_max),
    }
}

fn base_verdict(t0: &RealScalar, regime: Regime, exactness: Exactness) -> SpecializationVerdict {
    SpecializationVerdict {
        t_input: t0.to_string(),
        regime,
        discrete: Discreteness::NumericalUndetermined,
        faithful: Faithfulness::Undetermined,
        exactness,
        evidence: Vec::new(),
    }
}

fn trace_class_evidence(v: &mut SpecializationVerdict, t0: &RealScalar) -> Result<()> {
    let (x, _) = conjugated_generators();
    let xs = specialize(&x, t0)?;
    let class = classify_isometry(&xs)?;
    let tr = xs.trace()?;
    v.push(
        "trace_class",
        "ok",
        format!("x at t0 has trace {tr} and acts as a {class} isometry"),
    );
    Ok(())
}

fn classify_exact(t0: &RealScalar, epsilon: f64, n_max: u64) -> Result<SpecializationVerdict> {
    if t0.is_zero() {
        let mut v = base_verdict(t0, Regime::ExcludedZero, Exactness::Certified);
        v.discrete = Discreteness::NumericalUndetermined;
        v.push(
            "excluded_zero",
            "error",
            "t = 0 is not a specialization: det rho(s_i) = -t vanishes".into(),
        );
        return Err(Error::ZeroSpecialization);
    }
    let sign = t0.sign()?;
    let minus_one = t0.eq_cross_field(&RealScalar::from_int(-1))?;
    let one = t0.eq_cross_field(&RealScalar::one())?;

    if sign == Ordering::Less {
        if minus_one {
            let mut v = base_verdict(t0, Regime::MinusOne, Exactness::Certified);
            v.discrete = Discreteness::Yes;
            v.faithful = Faithfulness::No;
            v.push(
                "integer_entries",
                "ok",
                "the image at t = -1 lies in GL2(Z), a discrete set of matrices".into(),
            );
            v.push(
                "beyond_theorem_list",
                "flag",
                "t = -1 is excluded from the theorem's discrete list; discreteness here \
                 is the integer-entries computation, faithfulness fails"
                    .into(),
            );
            trace_class_evidence(&mut v, t0)?;
            return Ok(v);
        }
        let mut v = base_verdict(t0, Regime::NegativeHyperbolic, Exactness::Certified);
        v.discrete = Discreteness::Yes;
        v.faithful = Faithfulness::Yes;
        trace_class_evidence(&mut v, t0)?;
        v.push(
            "duality_partner",
            "info",
            format!("1/t0 = {} classifies identically", t0.inv()?),
        );
        return Ok(v);
    }

    if one {
        // t = 1: rotation number 1/6 in the paper convention; the center
        // dies (t^3 = 1), so Lemma-style faithfulness on the center fails
        let mut v = base_verdict(t0, Regime::One, Exactness::Certified);
        let (x, _) = conjugated_generators();
        let xs = specialize(&x, t0)?;
        let rot = rotation_data(&xs, t0, epsilon, n_max)?;
        let OrderClass::RationalRotation { k, m } = rot.order_class else {
            return Err(Error::Internal("t = 1 must be a rational rotation".into()));
        };
        debug_assert_eq!((k, m), (1, 6));
        v.discrete = Discreteness::TriangleGroup(m);
        v.faithful = Faithfulness::No;
        v.push(
            "rotation",
            "ok",
            format!(
                "cos(theta) = 1/2: paper rotation number {k}/{m}, matrix order {:?}",
                rot.matrix_order
            ),
        );
        v.push(
            "center_killed",
            "ok",
            "rho3((s1 s2)^3) = t^3 I = I at t = 1, so the center is in the kernel".into(),
        );
        trace_class_evidence(&mut v, t0)?;
        return Ok(v);
    }

    let wsign = window_poly_sign(t0)?;
    if wsign != Ordering::Less {
        // outside or on the window boundary: discrete and faithful
        let regime = if wsign == Ordering::Equal {
            Regime::ParabolicBoundary
        } else {
            Regime::PositiveOuter
        };
        let mut v = base_verdict(t0, regime, Exactness::Certified);
        v.discrete = Discreteness::Yes;
        v.faithful = Faithfulness::Yes;
        trace_class_evidence(&mut v, t0)?;
        v.push(
            "duality_partner",
            "info",
            format!("1/t0 = {} classifies identically", t0.inv()?),
        );
        return Ok(v);
    }

    // strictly inside the elliptic window, t != 1
    let mut v = base_verdict(t0, Regime::EllipticWindow, Exactness::Certified);
    let (x, _) = conjugated_generators();
    let xs = specialize(&x, t0)?;
    let rot = rotation_data(&xs, t0, epsilon, n_max)?;
    match rot.order_class {
        OrderClass::RationalRotation { k: 1, m } if m >= 6 => {
            v.discrete = Discreteness::TriangleGroup(m);
            v.faithful = Faithfulness::No;
            v.push(
                "rotation",
                "ok",
                format!("rational rotation 1/{m}: hyperbolic triangle group, discrete"),
            );
        }
        OrderClass::RationalRotation { k, m } => {
            v.discrete = Discreteness::No;
            v.faithful = Faithfulness::Undetermined;
            v.push(
                "rotation",
                "ok",
                format!("rotation {k}/{m} with k >= 2: no good orbifold cone angle, not discrete"),
            );
        }
        OrderClass::IrrationalRotation => {
            v.discrete = Discreteness::No;
            v.faithful = Faithfulness::Undetermined;
            v.push(
                "rotation",
                "ok",
                format!(
                    "cos(theta) = {} matches no degree-<=2 rational-rotation cosine: \
                     irrational rotation, orbit accumulates",
                    rot.cos_theta
                ),
            );
        }
        OrderClass::Undetermined { .. } => {
            return Err(Error::Internal(
                "exact rotation data returned an undetermined order".into(),
            ));
        }
    }
    trace_class_evidence(&mut v, t0)?;
    Ok(v)
}

fn classify_float(t: f64, epsilon: f64, n_max: u64) -> Result<SpecializationVerdict> {
    const BOUNDARY_EPS: f64 = 1e-12;
    let t0 = RealScalar::Float(t);
    if !t.is_finite() {
        return Err(Error::ScalarParse(format!("non-finite t = {t}")));
    }
    if t == 0.0 {
        return Err(Error::ZeroSpecialization);
    }
    let w_minus = (3.0 - 5.0_f64.sqrt()) / 2.0;
    let w_plus = (3.0 + 5.0_f64.sqrt()) / 2.0;
    let boundaries = [
        (-1.0, Regime::MinusOne),
        (1.0, Regime::One),
        (w_minus, Regime::PositiveOuter),
        (w_plus, Regime::PositiveOuter),
        (0.0, Regime::ExcludedZero),
    ];
    for (b, regime) in boundaries {
        if (t - b).abs() <= BOUNDARY_EPS {
            let mut v = base_verdict(&t0, regime, Exactness::Numerical);
            v.discrete = Discreteness::NumericalUndetermined;
            v.faithful = Faithfulness::Undetermined;
            v.push(
                "boundary_proximity",
                "flag",
                format!(
                    "t is within {BOUNDARY_EPS} of the regime boundary {b}; \
                     no side can be certified from a float"
                ),
            );
            return Ok(v);
        }
    }
    if t < 0.0 {
        let mut v = base_verdict(&t0, Regime::NegativeHyperbolic, Exactness::Numerical);
        v.discrete = Discreteness::Yes;
        v.faithful = Faithfulness::Yes;
        trace_class_evidence(&mut v, &t0)?;
        return Ok(v);
    }
    if t < w_minus || t > w_plus {
        let mut v = base_verdict(&t0, Regime::PositiveOuter, Exactness::Numerical);
        v.discrete = Discreteness::Yes;
        v.faithful = Faithfulness::Yes;
        trace_class_evidence(&mut v, &t0)?;
        return Ok(v);
    }
    // elliptic window, numerically
    let mut v = base_verdict(&t0, Regime::EllipticWindow, Exactness::Numerical);
    let (x, _) = conjugated_generators();
    let xs = specialize(&x, &t0)?;
    let rot = rotation_data(&xs, &t0, epsilon, n_max)?;
    match rot.order_class {
        OrderClass::RationalRotation { k: 1, m } if m >= 6 => {
            v.discrete = Discreteness::TriangleGroup(m);
            v.faithful = Faithfulness::No;
            v.push(
                "rotation",
                "ok",
                format!("rotation matches 1/{m} within {epsilon}: triangle group (numerical)"),
            );
        }
        OrderClass::RationalRotation { k, m } => {
            v.discrete = Discreteness::NumericalNo;
            v.faithful = Faithfulness::Undetermined;
            v.push(
                "rotation",
                "ok",
                format!("rotation matches {k}/{m} with k >= 2: not discrete (numerical)"),
            );
        }
        _ => {
            v.discrete = Discreteness::NumericalNo;
            v.faithful = Faithfulness::Undetermined;
            v.push(
                "rotation",
                "ok",
                format!(
                    "no rational rotation with denominator <= {n_max} within {epsilon}: \
                     treated as an irrational rotation (numerical)"
                ),
            );
        }
    }
    Ok(v)
}

/// The duality property: verdicts at `t0` and `1/t0` agree on discreteness
/// and faithfulness. Returns the conjunction of the two field agreements.
pub fn duality_check(t0: &RealScalar, epsilon: f64, n_max: u64) -> Result<bool> {
    if !t0.is_exact() {
        return Err(Error::ExactFloatMix("duality check"));
    }
    if t0.is_zero() {
        return Err(Error::ZeroSpecialization);
    }
    let v1 = classify(t0, epsilon, n_max)?;
    let v2 = classify(&t0.inv()?, epsilon, n_max)?;
    Ok(v1.discrete == v2.discrete && v1.faithful == v2.faithful)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_scalar, rat};

    fn cls(text: &str) -> SpecializationVerdict {
        classify(&parse_scalar(text).unwrap(), 1e-9, 1000).unwrap()
    }

    #[test]
    fn negative_regime() {
        let v = cls("-2");
        assert_eq!(v.regime, Regime::NegativeHyperbolic);
        assert_eq!(v.discrete, Discreteness::Yes);
        assert_eq!(v.faithful, Faithfulness::Yes);
        assert_eq!(v.exactness, Exactness::Certified);
    }

    #[test]
    fn minus_one_flagged() {
        let v = cls("-1");
        assert_eq!(v.regime, Regime::MinusOne);
        assert_eq!(v.discrete, Discreteness::Yes);
        assert_eq!(v.faithful, Faithfulness::No);
        assert!(v.evidence.iter().any(|e| e.name == "beyond_theorem_list"));
    }

    #[test]
    fn golden_boundary() {
        let v = cls("q(3/2,1/2,5)");
        assert_eq!(v.regime, Regime::ParabolicBoundary);
        assert_eq!(v.discrete, Discreteness::Yes);
        assert_eq!(v.faithful, Faithfulness::Yes);
        assert_eq!(v.exactness, Exactness::Certified);
    }

    #[test]
    fn window_irrational_rotation() {
        let v = cls("1/2");
        assert_eq!(v.regime, Regime::EllipticWindow);
        assert_eq!(v.discrete, Discreteness::No);
        assert_eq!(v.faithful, Faithfulness::Undetermined);
        assert_eq!(v.exactness, Exactness::Certified);
    }

    #[test]
    fn one_is_triangle_six() {
        let v = cls("1");
        assert_eq!(v.regime, Regime::One);
        assert_eq!(v.discrete, Discreteness::TriangleGroup(6));
        assert_eq!(v.faithful, Faithfulness::No);
    }

    #[test]
    fn float_mirrors_exact_with_numerical_labels() {
        let v = cls("0.5");
        assert_eq!(v.regime, Regime::EllipticWindow);
        assert_eq!(v.discrete, Discreteness::NumericalNo);
        assert_eq!(v.exactness, Exactness::Numerical);
    }

    #[test]
    fn float_boundary_proximity() {
        let v = classify(&RealScalar::Float(1.0), 1e-9, 1000).unwrap();
        assert_eq!(v.regime, Regime::One);
        assert_eq!(v.discrete, Discreteness::NumericalUndetermined);
        let v = classify(&RealScalar::Float(-1.0 + 1e-13), 1e-9, 1000).unwrap();
        assert_eq!(v.discrete, Discreteness::NumericalUndetermined);
    }

    #[test]
    fn zero_rejected() {
        assert!(matches!(
            classify(&RealScalar::zero(), 1e-9, 1000),
            Err(Error::ZeroSpecialization)
        ));
        assert!(matches!(
            classify(&RealScalar::Float(0.0), 1e-9, 1000),
            Err(Error::ZeroSpecialization)
        ));
    }

    #[test]
    fn duality_agreement() {
        for text in ["-2", "1/4", "1/2", "1", "q(3/2,1/2,5)", "q(1/2,1/2,5)", "-1"] {
            let t = parse_scalar(text).unwrap();
            assert!(duality_check(&t, 1e-9, 1000).unwrap(), "duality at {text}");
        }
    }

    #[test]
    fn quarter_is_outer() {
        let v = cls("1/4");
        assert_eq!(v.regime, Regime::PositiveOuter);
        assert_eq!(v.discrete, Discreteness::Yes);
        assert_eq!(v.faithful, Faithfulness::Yes);
        // 1/4 < (3 - sqrt5)/2 ~ 0.382
        let lower = crate::scalar::window_lower();
        assert_eq!(
            parse_scalar("1/4")
                .unwrap()
                .compare_cross_field(&lower)
                .unwrap(),
            Ordering::Less
        );
        let _ = rat(1, 4);
    }

    #[test]
    fn golden_ratio_not_discrete() {
        let v = cls("q(1/2,1/2,5)");
        assert_eq!(v.regime, Regime::EllipticWindow);
        assert_eq!(v.discrete, Discreteness::No);
    }

    #[test]
    fn verdict_serializes_stably() {
        let v = cls("-2");
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("\"regime\":\"negative_hyperbolic\""));
        assert!(json.contains("\"discrete\":\"yes\""));
        let v = cls("1");
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.contains("\"discrete\":{\"triangle_group\":6}"));
    }
}
