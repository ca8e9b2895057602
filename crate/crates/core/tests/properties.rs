//! Property tests for the spec-level invariants: algebraic laws of the
//! Laurent ring and the scalar tower, homomorphism and determinant laws of
//! the representations, the Squier relation on random words, and the
//! classifier's duality symmetry.

use num_traits::Zero;
use proptest::prelude::*;

use burau::braid::{parse_word, BraidWord};
use burau::burau::{burau as rho, conjugated_generators, specialize, squier_form, verify_duality};
use burau::classifier::{classify, Regime};
use burau::laurent::{normalize_to_intpoly, LaurentMatrix, LaurentPoly};
use burau::moebius::{
    classify_isometry, fixed_points, mobius_apply, rotation_candidates, BoundaryPoint,
    FixedPoints, IsometryClass,
};
use burau::scalar::{rat, QuadNum, Rat, RealScalar};

// --- generators ---

fn arb_letters(max_len: usize, strands: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec(
        (1..strands, (-3i64..=3).prop_filter("nonzero", |p| *p != 0)),
        0..=max_len,
    )
}

fn arb_word3() -> impl Strategy<Value = BraidWord> {
    arb_letters(8, 3).prop_map(|ls| BraidWord::new(3, ls).unwrap())
}

fn arb_word4() -> impl Strategy<Value = BraidWord> {
    arb_letters(6, 4).prop_map(|ls| BraidWord::new(4, ls).unwrap())
}

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-4i64..=4), (-5i64..=5)), 0..=5).prop_map(|terms| {
        LaurentPoly::from_terms(
            terms
                .into_iter()
                .map(|(d, c)| (d, num_bigint::BigInt::from(c))),
        )
    })
}

fn arb_rat() -> impl Strategy<Value = Rat> {
    ((-20i64..=20), (1i64..=8)).prop_map(|(n, d)| rat(n, d))
}

fn arb_quad5() -> impl Strategy<Value = QuadNum> {
    (arb_rat(), arb_rat()).prop_map(|(a, b)| QuadNum::new(a, b, 5).unwrap())
}

fn arb_matrix2() -> impl Strategy<Value = LaurentMatrix> {
    prop::collection::vec(arb_poly(), 4).prop_map(|entries| {
        LaurentMatrix::from_rows(vec![
            vec![entries[0].clone(), entries[1].clone()],
            vec![entries[2].clone(), entries[3].clone()],
        ])
    })
}

/// Random determinant-1 rational matrix: a short product of shears.
fn arb_sl2_rational() -> impl Strategy<Value = Vec<(bool, Rat)>> {
    prop::collection::vec((any::<bool>(), (-3i64..=3, 1i64..=3)), 1..=4)
        .prop_map(|v| v.into_iter().map(|(u, (n, d))| (u, rat(n, d))).collect())
}

/// `(-t)^e` for any integer e; the inverse of the unit -t is -t^-1.
fn minus_t_power(e: i64) -> LaurentPoly {
    let base = if e >= 0 {
        LaurentPoly::term(-1, 1)
    } else {
        LaurentPoly::term(-1, -1)
    };
    base.pow(e.unsigned_abs() as u32)
}

fn shear_product(spec: &[(bool, Rat)]) -> burau::burau::RealMatrix {
    use burau::burau::RealMatrix;
    let mut m = RealMatrix::identity(2);
    for (upper, r) in spec {
        let s = RealScalar::from_rat(r.clone());
        let shear = if *upper {
            RealMatrix::new(
                2,
                vec![RealScalar::one(), s, RealScalar::zero(), RealScalar::one()],
            )
            .unwrap()
        } else {
            RealMatrix::new(
                2,
                vec![RealScalar::one(), RealScalar::zero(), s, RealScalar::one()],
            )
            .unwrap()
        };
        m = m.mul(&shear).unwrap();
    }
    m
}

// --- braid ---

proptest! {
    #[test]
    fn canonicalization_idempotent(w in arb_word3()) {
        let again = BraidWord::new(3, w.letters().iter().copied()).unwrap();
        prop_assert_eq!(&again, &w);
    }

    #[test]
    fn concat_associative(u in arb_word3(), v in arb_word3(), w in arb_word3()) {
        let left = u.concat(&v).unwrap().concat(&w).unwrap();
        let right = u.concat(&v.concat(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_involution_and_cancellation(w in arb_word3()) {
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert!(w.concat(&w.inverse()).unwrap().is_empty());
    }

    #[test]
    fn exponent_sum_homomorphism(u in arb_word3(), v in arb_word3()) {
        prop_assert_eq!(
            u.concat(&v).unwrap().exponent_sum(),
            u.exponent_sum() + v.exponent_sum()
        );
    }

    #[test]
    fn print_parse_round_trip(w in arb_word3()) {
        prop_assume!(!w.is_empty());
        let text = w.to_string();
        prop_assert_eq!(parse_word(&text, 3).unwrap(), w);
    }
}

// --- laurent ---

proptest! {
    #[test]
    fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.add(&q).mul(&r), p.mul(&r).add(&q.mul(&r)));
    }

    #[test]
    fn bar_involution_and_multiplicativity(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(p.bar().bar(), p.clone());
        prop_assert_eq!(p.mul(&q).bar(), p.bar().mul(&q.bar()));
    }

    #[test]
    fn star_reverses_products(a in arb_matrix2(), b in arb_matrix2()) {
        prop_assert_eq!(a.mul(&b).star(), b.star().mul(&a.star()));
        prop_assert_eq!(a.star().star(), a.clone());
    }

    #[test]
    fn normalize_round_trip(p in arb_poly()) {
        prop_assume!(!p.is_zero());
        let (q, shift) = normalize_to_intpoly(&p).unwrap();
        prop_assert_eq!(q.to_laurent().shifted(shift), p);
        prop_assert!(!q.constant_term().is_zero() || q.degree() == Some(0));
    }

    #[test]
    fn isolated_roots_have_sign_changes(p in arb_poly()) {
        prop_assume!(!p.is_zero());
        let (q, _) = normalize_to_intpoly(&p).unwrap();
        prop_assume!(q.degree() > Some(0));
        let roots = burau::laurent::isolate_real_roots(&q).unwrap();
        for (i, r) in roots.iter().enumerate() {
            if !r.is_exact_point() {
                prop_assert_ne!(r.polynomial.sign_at(&r.lo), r.polynomial.sign_at(&r.hi));
            }
            // pairwise disjoint, sorted
            if i + 1 < roots.len() {
                prop_assert!(r.hi <= roots[i + 1].lo || r.lo < roots[i + 1].lo);
            }
        }
    }
}

// --- scalar tower ---

proptest! {
    #[test]
    fn quadratic_field_laws(x in arb_quad5(), y in arb_quad5(), z in arb_quad5()) {
        let xs = RealScalar::Quadratic(x);
        let ys = RealScalar::Quadratic(y);
        let zs = RealScalar::Quadratic(z);
        prop_assert_eq!(xs.add(&ys).unwrap(), ys.add(&xs).unwrap());
        prop_assert_eq!(xs.mul(&ys).unwrap(), ys.mul(&xs).unwrap());
        prop_assert_eq!(
            xs.mul(&ys).unwrap().mul(&zs).unwrap(),
            xs.mul(&ys.mul(&zs).unwrap()).unwrap()
        );
        prop_assert_eq!(
            xs.add(&ys).unwrap().mul(&zs).unwrap(),
            xs.mul(&zs).unwrap().add(&ys.mul(&zs).unwrap()).unwrap()
        );
    }

    #[test]
    fn exact_inverse_law(x in arb_quad5()) {
        prop_assume!(!x.is_zero());
        let xs = RealScalar::Quadratic(x);
        prop_assert_eq!(xs.mul(&xs.inv().unwrap()).unwrap(), RealScalar::one());
    }

    #[test]
    fn galois_is_a_ring_homomorphism(x in arb_quad5(), y in arb_quad5()) {
        let (cx, cy) = (x.conjugate(), y.conjugate());
        prop_assert_eq!(x.mul(&y).unwrap().conjugate(), cx.mul(&cy).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().conjugate(), cx.add(&cy).unwrap());
        prop_assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn compare_consistent_with_floats(x in arb_quad5(), y in arb_quad5()) {
        let xs = RealScalar::Quadratic(x);
        let ys = RealScalar::Quadratic(y);
        let (fx, fy) = (xs.to_f64(), ys.to_f64());
        if (fx - fy).abs() > 1e-10 {
            let expected = fx.partial_cmp(&fy).unwrap();
            prop_assert_eq!(xs.compare(&ys).unwrap(), expected);
        }
    }

    #[test]
    fn exact_sqrt_of_squares(x in arb_quad5()) {
        let xs = RealScalar::Quadratic(x);
        let square = xs.mul(&xs).unwrap();
        if let Some(root) = square.sqrt_exact() {
            prop_assert_eq!(root.mul(&root).unwrap(), square);
            prop_assert!(root.sign().unwrap() != std::cmp::Ordering::Less);
        } else {
            // sqrt of a square always exists in the same field
            prop_assert!(false, "sqrt_exact failed on a perfect square");
        }
    }
}

// --- burau ---

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn representation_homomorphism(u in arb_word3(), v in arb_word3()) {
        let uv = u.concat(&v).unwrap();
        prop_assert_eq!(rho(&uv).unwrap(), rho(&u).unwrap().mul(&rho(&v).unwrap()));
    }

    #[test]
    fn determinant_law_b3(w in arb_word3()) {
        let det = rho(&w).unwrap().det();
        let e = w.exponent_sum();
        let expected = minus_t_power(e);
        prop_assert_eq!(det, expected);
    }

    #[test]
    fn determinant_law_b4(w in arb_word4()) {
        let det = rho(&w).unwrap().det();
        let e = w.exponent_sum();
        let expected = minus_t_power(e);
        prop_assert_eq!(det, expected);
    }

    #[test]
    fn squier_relation_on_words(w in arb_word3()) {
        prop_assert!(squier_form(3).unwrap().relation_holds(&w).unwrap());
    }

    #[test]
    fn squier_relation_on_b4_words(w in arb_word4()) {
        prop_assert!(squier_form(4).unwrap().relation_holds(&w).unwrap());
    }

    #[test]
    fn duality_on_words(w in arb_word3()) {
        prop_assert!(verify_duality(&w).unwrap());
    }

    #[test]
    fn b4_block_structure(ls in arb_letters(6, 3)) {
        // words in {s1, s2} inside B4: third row (0,0,1), upper-left = rho3
        let w3 = BraidWord::new(3, ls.iter().copied()).unwrap();
        let w4 = BraidWord::new(4, ls.iter().copied()).unwrap();
        let m3 = rho(&w3).unwrap();
        let m4 = rho(&w4).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert_eq!(m4.get(i, j), m3.get(i, j));
            }
        }
        prop_assert!(m4.get(2, 0).is_zero());
        prop_assert!(m4.get(2, 1).is_zero());
        prop_assert!(m4.get(2, 2).is_one());
    }

    #[test]
    fn specialization_is_a_homomorphism(u in arb_word3(), v in arb_word3(), t in arb_rat()) {
        prop_assume!(!t.is_zero());
        let t0 = RealScalar::from_rat(t);
        let uv = u.concat(&v).unwrap();
        let lhs = specialize(&rho(&uv).unwrap(), &t0).unwrap();
        let rhs = specialize(&rho(&u).unwrap(), &t0).unwrap()
            .mul(&specialize(&rho(&v).unwrap(), &t0).unwrap()).unwrap();
        prop_assert!(lhs.eq_exact(&rhs).unwrap());
    }

    #[test]
    fn center_specializes_to_scalar(t in arb_rat()) {
        prop_assume!(!t.is_zero());
        let c = burau::braid::named_word("center3", 3).unwrap();
        let t0 = RealScalar::from_rat(t.clone());
        let m = specialize(&rho(&c).unwrap(), &t0).unwrap();
        prop_assert!(m.is_scalar_matrix().unwrap());
        // non-identity scalar away from 0, +-1 (the faithful-on-center criterion)
        if t != rat(1, 1) && t != rat(-1, 1) {
            prop_assert!(!m.is_identity().unwrap());
        }
    }
}

// --- moebius ---

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_is_conjugation_invariant(spec in arb_sl2_rational(), t in arb_rat()) {
        prop_assume!(!t.is_zero());
        let (x, _) = conjugated_generators();
        let m = specialize(&x, &RealScalar::from_rat(t)).unwrap();
        let g = shear_product(&spec);
        let conj = g.mul(&m).unwrap().mul(&g.inverse().unwrap()).unwrap();
        let c1 = classify_isometry(&m).unwrap();
        let c2 = classify_isometry(&conj).unwrap();
        let same = matches!(
            (&c1, &c2),
            (IsometryClass::Hyperbolic, IsometryClass::Hyperbolic)
                | (IsometryClass::Parabolic, IsometryClass::Parabolic)
                | (IsometryClass::Elliptic { .. }, IsometryClass::Elliptic { .. })
                | (IsometryClass::Scalar, IsometryClass::Scalar)
        );
        prop_assert!(same, "{:?} vs {:?}", c1, c2);
    }

    #[test]
    fn apply_respects_composition(spec1 in arb_sl2_rational(), spec2 in arb_sl2_rational(), p in arb_rat()) {
        let m = shear_product(&spec1);
        let n = shear_product(&spec2);
        let point = BoundaryPoint::from_rat(p);
        let lhs = mobius_apply(&m.mul(&n).unwrap(), &point).unwrap();
        let rhs = mobius_apply(&m, &mobius_apply(&n, &point).unwrap()).unwrap();
        prop_assert!(lhs.eq_exact(&rhs).unwrap());
    }

    #[test]
    fn fixed_points_are_fixed(t in arb_rat()) {
        prop_assume!(!t.is_zero());
        let t0 = RealScalar::from_rat(t);
        let (x, _) = conjugated_generators();
        let m = specialize(&x, &t0).unwrap();
        if let Ok(FixedPoints::BoundaryPair(p, q)) = fixed_points(&m) {
            // only check when the roots stayed exact
            let exact = |b: &BoundaryPoint| !matches!(b, BoundaryPoint::Finite(RealScalar::Float(_)));
            if exact(&p) && exact(&q) {
                prop_assert!(mobius_apply(&m, &p).unwrap().eq_exact(&p).unwrap());
                prop_assert!(mobius_apply(&m, &q).unwrap().eq_exact(&q).unwrap());
                prop_assert!(!p.eq_exact(&q).unwrap());
            }
        }
    }

    #[test]
    fn cos_theta_invariant_under_reciprocal(n in 1i64..=20, d in 1i64..=20) {
        // t strictly inside the window and != 1
        let t = rat(n, d);
        let lower = rat(39, 100);
        let upper = rat(26, 10);
        prop_assume!(t > lower && t < upper && t != rat(1, 1));
        let t0 = RealScalar::from_rat(t);
        let (x, _) = conjugated_generators();
        let m1 = specialize(&x, &t0).unwrap();
        let m2 = specialize(&x, &t0.inv().unwrap()).unwrap();
        let c1 = classify_isometry(&m1).unwrap();
        let c2 = classify_isometry(&m2).unwrap();
        if let (IsometryClass::Elliptic { cos_theta: a }, IsometryClass::Elliptic { cos_theta: b }) = (c1, c2) {
            prop_assert!(a.eq_cross_field(&b).unwrap());
        }
    }
}

// --- classifier ---

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdict_symmetric_under_reciprocal(n in -30i64..=30, d in 1i64..=12) {
        prop_assume!(n != 0);
        let t = RealScalar::from_rat(rat(n, d));
        let v1 = classify(&t, 1e-9, 1000).unwrap();
        let v2 = classify(&t.inv().unwrap(), 1e-9, 1000).unwrap();
        prop_assert_eq!(v1.discrete, v2.discrete);
        prop_assert_eq!(v1.faithful, v2.faithful);
    }

    #[test]
    fn regime_matches_isometry_class(n in -30i64..=30, d in 1i64..=12) {
        prop_assume!(n != 0);
        let t = RealScalar::from_rat(rat(n, d));
        let v = classify(&t, 1e-9, 1000).unwrap();
        let (x, _) = conjugated_generators();
        let class = classify_isometry(&specialize(&x, &t).unwrap()).unwrap();
        match v.regime {
            Regime::NegativeHyperbolic => prop_assert!(matches!(class, IsometryClass::Hyperbolic)),
            Regime::MinusOne => prop_assert!(matches!(class, IsometryClass::Hyperbolic)),
            Regime::PositiveOuter => prop_assert!(matches!(
                class,
                IsometryClass::Hyperbolic | IsometryClass::Parabolic
            )),
            Regime::ParabolicBoundary => prop_assert!(matches!(class, IsometryClass::Parabolic)),
            Regime::EllipticWindow | Regime::One => {
                let elliptic = matches!(class, IsometryClass::Elliptic { .. });
                prop_assert!(elliptic);
            }
            Regime::ExcludedZero => prop_assert!(false, "zero regime for nonzero t"),
        }
    }
}

/// The design-decision verification: the degree-<=2 rotation-cosine list is
/// exactly what a brute-force enumeration over m <= 50 produces.
#[test]
fn rotation_candidate_list_matches_brute_force() {
    fn phi(m: u64) -> u64 {
        (1..=m).filter(|k| gcd(*k, m) == 1).count() as u64
    }
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    let mut found: Vec<(u64, u64)> = Vec::new();
    for m in 3u64..=50 {
        for k in 1..m {
            if gcd(k, m) != 1 {
                continue;
            }
            // cos(2 pi k/m) has algebraic degree phi(m)/2 over Q for m > 2
            let degree = phi(m) / 2;
            let value = (2.0 * std::f64::consts::PI * k as f64 / m as f64).cos();
            if degree <= 2 && (0.5 - 1e-12..1.0).contains(&value) {
                // k and m-k are mirror rotations with equal cosine; keep the
                // canonical representative
                found.push((k.min(m - k), m));
            }
        }
    }
    found.sort();
    found.dedup();
    let expected: Vec<(u64, u64)> = rotation_candidates().iter().map(|(km, _)| *km).collect();
    let mut expected_sorted = expected.clone();
    expected_sorted.sort();
    assert_eq!(found, expected_sorted);
    // and the stored cosines are numerically the right values
    for ((k, m), value) in rotation_candidates() {
        let numeric = (2.0 * std::f64::consts::PI * k as f64 / m as f64).cos();
        assert!((value.to_f64() - numeric).abs() < 1e-12);
    }
}
