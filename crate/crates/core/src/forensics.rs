//! Forensic constructions around unfaithfulness: manufacturing unfaithful
//! specializations from 2-1 entries, the B4 kernel pair, the unipotent
//! extension mechanism, and Galois discreteness certificates at quadratic
//! algebraic integers.

use std::cmp::Ordering;

use num_traits::Signed;
use serde::Serialize;

use crate::braid::{named_word, BraidWord};
use crate::burau::{burau, specialize, squier_form, RealMatrix, SpecializedForm};
use crate::error::{Error, Result};
use crate::laurent::{isolate_real_roots, normalize_to_intpoly, IntPoly, RootInterval};
use crate::scalar::{
    is_unit_quadratic_integer, rat, QuadIntegerClass, QuadNum, Rat, RealScalar,
};

/// How a certificate pins its root: an exact rational, an exact quadratic,
/// or an isolating interval with the squarefree factor that vanishes there.
#[derive(Debug, Clone)]
pub enum CertifiedRoot {
    Rational(Rat),
    Quadratic(QuadNum),
    Interval(RootInterval),
}

impl CertifiedRoot {
    pub fn approx_f64(&self) -> f64 {
        match self {
            CertifiedRoot::Rational(r) => {
                use num_traits::ToPrimitive;
                r.to_f64().unwrap_or(f64::NAN)
            }
            CertifiedRoot::Quadratic(q) => q.to_f64(),
            CertifiedRoot::Interval(i) => i.midpoint_f64(),
        }
    }
}

/// Certificate that specializing at a positive real root of the 2-1 entry
/// of `rho3(word)` is unfaithful: the root lies strictly inside the elliptic
/// window and the specialized image is upper triangular, so together with
/// the image of s1 it generates a solvable group.
#[derive(Debug, Clone)]
pub struct UnfaithfulnessCertificate {
    pub word: BraidWord,
    /// Polynomial (a factor of the normalized 2-1 entry) vanishing at the root.
    pub factor: IntPoly,
    pub root: CertifiedRoot,
    /// How entry vanishing was established: exact evaluation or divisibility.
    pub entry21_vanishes_method: String,
    pub entry21_vanishes: bool,
    pub upper_triangular_pair: bool,
    /// Both window endpoints checked exactly against t^2 - 3t + 1 < 0.
    pub inside_window: bool,
}

/// The normalized 2-1 entry of `rho3(w)` as an integer polynomial.
/// Rejects powers of s1 (entry identically zero by upper-triangularity).
pub fn entry21_polynomial(word: &BraidWord) -> Result<IntPoly> {
    if word.strands() != 3 {
        return Err(Error::UnsupportedStrands(word.strands()));
    }
    if word.is_sigma1_power() {
        return Err(Error::SigmaOnePower);
    }
    let m = burau(word)?;
    let entry = m.get(1, 0);
    if entry.is_zero() {
        return Err(Error::ZeroEntry);
    }
    let (poly, _shift) = normalize_to_intpoly(entry)?;
    Ok(poly)
}

fn window_poly() -> IntPoly {
    IntPoly::from_i64(&[1, -3, 1])
}

fn strictly_inside_window(x: &Rat) -> bool {
    window_poly().sign_at(x) == Ordering::Less
}

fn root_scalar(root: &CertifiedRoot) -> Option<RealScalar> {
    match root {
        CertifiedRoot::Rational(r) => Some(RealScalar::Rational(r.clone())),
        CertifiedRoot::Quadratic(q) => Some(RealScalar::Quadratic(q.clone())),
        CertifiedRoot::Interval(_) => None,
    }
}

/// Tries to upgrade an isolating interval whose polynomial is quadratic to
/// an exact quadratic root.
fn exactify_quadratic(interval: &RootInterval) -> Option<CertifiedRoot> {
    let p = &interval.polynomial;
    if p.degree() != Some(2) {
        return None;
    }
    let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
    let a_r = Rat::from_integer(a.clone());
    let disc = Rat::from_integer(&b * &b - 4 * &a * &c);
    if disc.is_negative() {
        return None;
    }
    let sqrt_disc = RealScalar::Rational(disc).sqrt_exact()?;
    let mid = Rat::from_integer(-b) / (rat(2, 1) * &a_r);
    let RealScalar::Quadratic(s) = sqrt_disc else {
        return None; // rational discriminant square: rational roots handled earlier
    };
    let half = QuadNum::new(Rat::from_integer(0.into()), s.b / (rat(2, 1) * &a_r), s.d).ok()?;
    for sign in [1i64, -1] {
        let cand = QuadNum::new(
            mid.clone() + Rat::from_integer(0.into()),
            half.b.clone() * rat(sign, 1),
            half.d,
        )
        .ok()?;
        let (lo, hi) = cand.approx_interval(128);
        if lo >= interval.lo && hi <= interval.hi {
            return Some(CertifiedRoot::Quadratic(cand));
        }
    }
    None
}

/// Isolates the positive real roots of the 2-1 entry of `rho3(word)` and
/// certifies, per root, the unfaithfulness data of the corollary: exact
/// window membership and upper-triangularity of the specialized image.
pub fn hunt_unfaithful(
    word: &BraidWord,
    refine_width: &Rat,
) -> Result<Vec<UnfaithfulnessCertificate>> {
    let entry = entry21_polynomial(word)?;
    let m = burau(word)?;
    let all_roots = isolate_real_roots(&entry)?;
    let mut out = Vec::new();
    for root in all_roots {
        // keep positive roots only (intervals never straddle zero)
        let positive = if root.is_exact_point() {
            root.lo > Rat::from_integer(0.into())
        } else {
            root.lo >= Rat::from_integer(0.into())
        };
        if !positive {
            continue;
        }
        let refined = root.refine_until(refine_width, 10_000, strictly_inside_window)?;
        let certified = if refined.is_exact_point() {
            CertifiedRoot::Rational(refined.lo.clone())
        } else {
            exactify_quadratic(&refined).unwrap_or(CertifiedRoot::Interval(refined.clone()))
        };
        let inside_window = if refined.is_exact_point() {
            strictly_inside_window(&refined.lo)
        } else {
            strictly_inside_window(&refined.lo) && strictly_inside_window(&refined.hi)
        };
        let (method, vanishes, upper_triangular) = match root_scalar(&certified) {
            Some(t0) => {
                let s = specialize(&m, &t0)?;
                let vanishes = s.get(1, 0).is_zero();
                (format!("exact evaluation at {t0}"), vanishes, vanishes)
            }
            None => {
                let divides = refined.polynomial.divides(&entry);
                (
                    "isolating polynomial divides the 2-1 entry".to_string(),
                    divides,
                    divides,
                )
            }
        };
        let factor = match &certified {
            CertifiedRoot::Quadratic(q) => {
                // minimal polynomial cleared to integers
                let trace = &q.a + &q.a;
                IntPoly::from_rational_coeffs(&[q.norm(), -trace, Rat::from_integer(1.into())])
            }
            _ => refined.polynomial.clone(),
        };
        if !factor.divides(&entry) {
            return Err(Error::Internal(
                "certificate factor fails to divide the 2-1 entry".into(),
            ));
        }
        out.push(UnfaithfulnessCertificate {
            word: word.clone(),
            factor,
            root: certified,
            entry21_vanishes_method: method,
            entry21_vanishes: vanishes,
            upper_triangular_pair: upper_triangular,
            inside_window,
        });
    }
    Ok(out)
}

/// Result of the B4 kernel-pair computation: the omega words differ
/// symbolically yet share one image at t0 = (3 + sqrt 5)/2, and their
/// quotient specializes to the identity.
#[derive(Debug, Clone, Serialize)]
pub struct B4KernelPairCheck {
    pub symbolic_unequal: bool,
    pub equal_at_t0: bool,
    pub quotient_is_identity_at_t0: bool,
    pub unequal_at_generic_probe: bool,
}

pub fn b4_kernel_pair_check() -> Result<B4KernelPairCheck> {
    let w1 = named_word("omega1", 4)?;
    let w2 = named_word("omega2", 4)?;
    let m1 = burau(&w1)?;
    let m2 = burau(&w2)?;
    let symbolic_unequal = m1 != m2;

    let t0 = crate::scalar::window_upper();
    let s1 = specialize(&m1, &t0)?;
    let s2 = specialize(&m2, &t0)?;
    let equal_at_t0 = s1.eq_exact(&s2)?;

    let quotient = w1.concat(&w2.inverse())?;
    let sq = specialize(&burau(&quotient)?, &t0)?;
    let quotient_is_identity_at_t0 = sq.is_identity()?;

    let probe = RealScalar::from_int(2);
    let p1 = specialize(&m1, &probe)?;
    let p2 = specialize(&m2, &probe)?;
    let unequal_at_generic_probe = !p1.eq_exact(&p2)?;

    Ok(B4KernelPairCheck {
        symbolic_unequal,
        equal_at_t0,
        quotient_is_identity_at_t0,
        unequal_at_generic_probe,
    })
}

/// Result of embedding a B3 kernel element into B4: the image there is
/// upper unitriangular, and commutators collapse to the identity, producing
/// an explicit B4 kernel word.
#[derive(Debug, Clone)]
pub struct UnipotentExtensionCheck {
    pub word: BraidWord,
    pub unitriangular: bool,
    /// Commutator steps needed to reach the identity (0 when the image
    /// already is the identity).
    pub nilpotency_depth: u32,
    /// An explicit B4 word in the kernel of the specialization.
    pub kernel_word: BraidWord,
    /// The kernel word's symbolic rho4 image differs from the identity,
    /// so it is a nontrivial braid.
    pub kernel_word_symbolically_nontrivial: bool,
    pub kernel_word_specializes_to_identity: bool,
}

const KERNEL_WORD_LETTER_CAP: u64 = 10_000;

/// Checks the block/nilpotent extension mechanism for a caller-supplied
/// B3 kernel element at an exact `t0`.
pub fn unipotent_extension_check(
    word: &BraidWord,
    t0: &RealScalar,
) -> Result<UnipotentExtensionCheck> {
    if word.strands() != 3 {
        return Err(Error::UnsupportedStrands(word.strands()));
    }
    if !t0.is_exact() {
        return Err(Error::ExactFloatMix("unipotent extension check"));
    }
    let s3 = specialize(&burau(word)?, t0)?;
    if !s3.is_identity()? {
        return Err(Error::NotInKernel);
    }
    // same letters, read in B4
    let embedded = BraidWord::new(4, word.letters().iter().copied())?;
    let m4 = burau(&embedded)?;
    let s4 = specialize(&m4, t0)?;
    let unitriangular = is_upper_unitriangular(&s4)?;
    if !unitriangular {
        return Err(Error::Internal(
            "embedded kernel element is not upper unitriangular".into(),
        ));
    }

    if s4.is_identity()? {
        return Ok(UnipotentExtensionCheck {
            word: word.clone(),
            unitriangular,
            nilpotency_depth: 0,
            kernel_word: embedded.clone(),
            kernel_word_symbolically_nontrivial: !m4.is_identity(),
            kernel_word_specializes_to_identity: true,
        });
    }

    // a conjugate of the kernel element is again in the kernel; images of
    // the form [[I, v], [0, 1]] commute, so one commutator reaches identity
    let s1 = BraidWord::new(3, [(1, 1)])?;
    let partner = s1.concat(word)?.concat(&s1.inverse())?;
    let commutator = word
        .concat(&partner)?
        .concat(&word.inverse())?
        .concat(&partner.inverse())?;
    if commutator.letter_weight() > KERNEL_WORD_LETTER_CAP {
        return Err(Error::Internal(format!(
            "kernel word exceeds the {KERNEL_WORD_LETTER_CAP}-letter cap"
        )));
    }
    let commutator4 = BraidWord::new(4, commutator.letters().iter().copied())?;
    let mc = burau(&commutator4)?;
    let sc = specialize(&mc, t0)?;
    Ok(UnipotentExtensionCheck {
        word: word.clone(),
        unitriangular,
        nilpotency_depth: 1,
        kernel_word: commutator4,
        kernel_word_symbolically_nontrivial: !mc.is_identity(),
        kernel_word_specializes_to_identity: sc.is_identity()?,
    })
}

fn is_upper_unitriangular(m: &RealMatrix) -> Result<bool> {
    for i in 0..m.size() {
        if !m.get(i, i).sub(&RealScalar::one())?.is_zero() {
            return Ok(false);
        }
        for j in 0..i {
            if !m.get(i, j).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Discreteness certificate at a unit quadratic algebraic integer: for each
/// sample word the relation `(A^sigma)^T = J A^-1 J^-1` holds exactly in
/// Q(sqrt d), where sigma is the Galois conjugation (implementing
/// t -> 1/alpha) and J is the derived Squier form specialized at alpha.
#[derive(Debug, Clone)]
pub struct GaloisCertificate {
    pub alpha: QuadNum,
    pub strands: usize,
    pub words_checked: Vec<BraidWord>,
    pub relation_verified: bool,
    /// How J was specialized: directly through sqrt(alpha), or split into
    /// even/odd parts of the auxiliary variable.
    pub method: String,
    /// Specialized image entries per word, the bounded-height ingredients.
    pub entry_log: Vec<(String, Vec<String>)>,
}

pub fn galois_discreteness_certificate(
    alpha: &QuadNum,
    sample_words: &[BraidWord],
    strands: usize,
) -> Result<GaloisCertificate> {
    let check = is_unit_quadratic_integer(alpha);
    match check.class {
        QuadIntegerClass::UnitNormOne => {}
        QuadIntegerClass::NormMinusOne => {
            return Err(Error::GaloisHypothesis(format!(
                "alpha = {alpha} has norm -1: sigma(alpha) = -1/alpha, outside the norm-1 hypothesis"
            )));
        }
        other => {
            return Err(Error::GaloisHypothesis(format!(
                "alpha = {alpha} is not a unit quadratic algebraic integer ({other:?}, norm {})",
                check.norm
            )));
        }
    }
    for w in sample_words {
        if w.strands() != strands {
            return Err(Error::StrandMismatch {
                left: strands,
                right: w.strands(),
            });
        }
    }
    let alpha_scalar = RealScalar::Quadratic(alpha.clone());
    let form = squier_form(strands)?;
    let specialized = form.specialize_at(&alpha_scalar)?;
    let (method, j_list): (String, Vec<RealMatrix>) = match specialized {
        SpecializedForm::Direct(j) => ("direct (sqrt(alpha) exact in Q(sqrt d))".into(), vec![j]),
        SpecializedForm::EvenOdd { even, odd } => (
            "even/odd split of the auxiliary variable".into(),
            vec![even, odd],
        ),
    };

    let mut relation_verified = true;
    let mut entry_log = Vec::new();
    for w in sample_words {
        let a = specialize(&burau(w)?, &alpha_scalar)?;
        let a_sigma_t = a.galois_conjugate()?.transpose();
        for j in &j_list {
            // (A^sigma)^T J A = J, i.e. (A^sigma)^T = J A^-1 J^-1
            let lhs = a_sigma_t.mul(j)?.mul(&a)?;
            if !lhs.eq_exact(j)? {
                relation_verified = false;
            }
            // also verify the displayed inverse form when J is invertible
            let det = j.det()?;
            if !det.is_zero() {
                let rhs = j.mul(&a.inverse()?)?.mul(&j.inverse()?)?;
                if !a_sigma_t.eq_exact(&rhs)? {
                    relation_verified = false;
                }
            }
        }
        let entries: Vec<String> = a
            .entries()
            .iter()
            .zip(a.galois_conjugate()?.entries())
            .map(|(e, s)| format!("{e} | sigma: {s}"))
            .collect();
        entry_log.push((w.to_string(), entries));
    }

    Ok(GaloisCertificate {
        alpha: alpha.clone(),
        strands,
        words_checked: sample_words.to_vec(),
        relation_verified,
        method,
        entry_log,
    })
}

/// The default sample words used by the certificate CLI and tests.
pub fn default_galois_words(strands: usize) -> Result<Vec<BraidWord>> {
    match strands {
        3 => Ok(vec![
            BraidWord::new(3, [(1, 1)])?,
            BraidWord::new(3, [(2, 1)])?,
            named_word("a1", 3)?,
            named_word("center3", 3)?,
        ]),
        4 => Ok(vec![named_word("x4", 4)?, named_word("omega1", 4)?]),
        n => Err(Error::UnsupportedStrands(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_word;

    #[test]
    fn entry21_of_example_word_divisible_by_fw() {
        let w = parse_word("s2^-2 s1 s2^-1", 3).unwrap();
        let entry = entry21_polynomial(&w).unwrap();
        let fw = IntPoly::from_i64(&[-1, 1, -2, 1]);
        assert!(fw.divides(&entry));
        // entry is exactly -f_w here
        assert_eq!(entry, fw.neg());
    }

    #[test]
    fn entry21_rejections() {
        let w = parse_word("s1^3", 3).unwrap();
        assert!(matches!(entry21_polynomial(&w), Err(Error::SigmaOnePower)));
        // s1 (s1 s2)^3: not a sigma1 power as a word, but the entry vanishes
        let w = parse_word("s1 s1 s2 s1 s2 s1 s2", 3).unwrap();
        assert!(matches!(entry21_polynomial(&w), Err(Error::ZeroEntry)));
    }

    #[test]
    fn entry21_of_sigma2_is_constant_after_shift() {
        let w = parse_word("s2", 3).unwrap();
        let entry = entry21_polynomial(&w).unwrap();
        assert_eq!(entry, IntPoly::one());
        assert!(isolate_real_roots(&entry).unwrap().is_empty());
    }

    #[test]
    fn hunt_example_one() {
        let w = parse_word("s2^-2 s1 s2^-1", 3).unwrap();
        let certs = hunt_unfaithful(&w, &rat(1, 1_000_000)).unwrap();
        assert_eq!(certs.len(), 1);
        let c = &certs[0];
        assert!(c.inside_window);
        assert!(c.entry21_vanishes);
        assert!(c.upper_triangular_pair);
        let approx = c.root.approx_f64();
        assert!((approx - 1.7548776662466925).abs() < 1e-4, "{approx}");
        // window interval from the corollary: (0.382.., 2.618..)
        assert!(approx > 0.382 && approx < 2.619);
    }

    #[test]
    fn hunt_word_without_positive_roots() {
        let w = parse_word("s2", 3).unwrap();
        assert!(hunt_unfaithful(&w, &rat(1, 1_000_000)).unwrap().is_empty());
    }

    #[test]
    fn hunt_example_two_yields_two_certificates() {
        let w = parse_word("s2^5 s1^2 s2^-4 s1 s2^3", 3).unwrap();
        let certs = hunt_unfaithful(&w, &rat(1, 1_000_000)).unwrap();
        assert_eq!(certs.len(), 2);
        for c in &certs {
            assert!(c.inside_window);
            assert!(c.upper_triangular_pair);
        }
        let mut approx: Vec<f64> = certs.iter().map(|c| c.root.approx_f64()).collect();
        approx.sort_by(f64::total_cmp);
        assert!((approx[0] - 0.67348038).abs() < 1e-4);
        assert!((approx[1] - 1.4273263).abs() < 1e-4);
    }

    #[test]
    fn hunt_rational_root() {
        // s2^2: 2-1 entry t - t^2, normalized 1 - t, root t = 1
        let w = parse_word("s2^2", 3).unwrap();
        let certs = hunt_unfaithful(&w, &rat(1, 1_000_000)).unwrap();
        assert_eq!(certs.len(), 1);
        match &certs[0].root {
            CertifiedRoot::Rational(r) => assert_eq!(*r, rat(1, 1)),
            other => panic!("expected rational root, got {other:?}"),
        }
        assert!(certs[0].entry21_vanishes);
        assert!(certs[0].inside_window);
    }

    #[test]
    fn unipotent_extension_at_one() {
        // a2^3 is in the kernel at t = 1
        let w = named_word("a2", 3).unwrap().pow(3);
        let check = unipotent_extension_check(&w, &RealScalar::one()).unwrap();
        assert!(check.unitriangular);
        assert_eq!(check.nilpotency_depth, 0);
        assert!(check.kernel_word_symbolically_nontrivial);
        assert!(check.kernel_word_specializes_to_identity);

        // identity word: trivially unitriangular, depth 0 but symbolically trivial
        let id = BraidWord::empty(3).unwrap();
        let check = unipotent_extension_check(&id, &RealScalar::one()).unwrap();
        assert_eq!(check.nilpotency_depth, 0);
        assert!(!check.kernel_word_symbolically_nontrivial);

        // s1 is not in the kernel at t = 1
        let w = parse_word("s1", 3).unwrap();
        assert!(matches!(
            unipotent_extension_check(&w, &RealScalar::one()),
            Err(Error::NotInKernel)
        ));
    }

    #[test]
    fn galois_certificate_b3() {
        let alpha = QuadNum::new(rat(3, 2), rat(1, 2), 5).unwrap();
        let words = default_galois_words(3).unwrap();
        let cert = galois_discreteness_certificate(&alpha, &words, 3).unwrap();
        assert!(cert.relation_verified, "{:?}", cert.method);
    }

    #[test]
    fn galois_norm_minus_one_rejected() {
        let golden = QuadNum::new(rat(1, 2), rat(1, 2), 5).unwrap();
        let words = default_galois_words(3).unwrap();
        assert!(matches!(
            galois_discreteness_certificate(&golden, &words, 3),
            Err(Error::GaloisHypothesis(_))
        ));
    }
}
