//! The reduced Burau representations of B3 and B4, specialization to real
//! matrices, and Squier's invariant form.

mod realmat;
mod squier;

pub use realmat::RealMatrix;
pub use squier::{squier_form, verify_duality, SpecializedForm, SquierForm};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::scalar::RealScalar;

fn p(low: i64, coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_dense(low, coeffs)
}

/// The image of a single Artin generator (or its inverse) under the reduced
/// Burau representation.
pub fn burau_generator(strands: usize, index: usize, inverse: bool) -> Result<LaurentMatrix> {
    let rows: Vec<Vec<LaurentPoly>> = match (strands, index, inverse) {
        (3, 1, false) => vec![
            vec![p(1, &[-1]), p(0, &[1])],
            vec![p(0, &[]), p(0, &[1])],
        ],
        (3, 2, false) => vec![
            vec![p(0, &[1]), p(0, &[])],
            vec![p(1, &[1]), p(1, &[-1])],
        ],
        (3, 1, true) => vec![
            vec![p(-1, &[-1]), p(-1, &[1])],
            vec![p(0, &[]), p(0, &[1])],
        ],
        (3, 2, true) => vec![
            vec![p(0, &[1]), p(0, &[])],
            vec![p(0, &[1]), p(-1, &[-1])],
        ],
        (4, 1, false) => vec![
            vec![p(1, &[-1]), p(0, &[1]), p(0, &[])],
            vec![p(0, &[]), p(0, &[1]), p(0, &[])],
            vec![p(0, &[]), p(0, &[]), p(0, &[1])],
        ],
        (4, 2, false) => vec![
            vec![p(0, &[1]), p(0, &[]), p(0, &[])],
            vec![p(1, &[1]), p(1, &[-1]), p(0, &[1])],
            vec![p(0, &[]), p(0, &[]), p(0, &[1])],
        ],
        (4, 3, false) => vec![
            vec![p(0, &[1]), p(0, &[]), p(0, &[])],
            vec![p(0, &[]), p(0, &[1]), p(0, &[])],
            vec![p(0, &[]), p(1, &[1]), p(1, &[-1])],
        ],
        (4, 1, true) => vec![
            vec![p(-1, &[-1]), p(-1, &[1]), p(0, &[])],
            vec![p(0, &[]), p(0, &[1]), p(0, &[])],
            vec![p(0, &[]), p(0, &[]), p(0, &[1])],
        ],
        (4, 2, true) => vec![
            vec![p(0, &[1]), p(0, &[]), p(0, &[])],
            vec![p(0, &[1]), p(-1, &[-1]), p(-1, &[1])],
            vec![p(0, &[]), p(0, &[]), p(0, &[1])],
        ],
        (4, 3, true) => vec![
            vec![p(0, &[1]), p(0, &[]), p(0, &[])],
            vec![p(0, &[]), p(0, &[1]), p(0, &[])],
            vec![p(0, &[]), p(0, &[1]), p(-1, &[-1])],
        ],
        (3, _, _) | (4, _, _) => {
            return Err(Error::IndexOutOfRange {
                token: format!("s{index}"),
                strands,
            })
        }
        _ => return Err(Error::UnsupportedStrands(strands)),
    };
    Ok(LaurentMatrix::from_rows(rows))
}

/// The reduced Burau image of a braid word, a product of generator images.
pub fn burau(word: &BraidWord) -> Result<LaurentMatrix> {
    let n = word.strands();
    let size = n - 1;
    let mut out = LaurentMatrix::identity(size);
    for &(index, power) in word.letters() {
        let g = burau_generator(n, index, power < 0)?;
        for _ in 0..power.unsigned_abs() {
            out = out.mul(&g);
        }
    }
    Ok(out)
}

/// The conjugated generators of the normal subgroup's image:
/// `x = iota^-1 rho3(a2) iota` and `y = iota^-1 rho3(a1) iota`
/// with `iota = diag(1, -1)`. Both have determinant 1 and trace
/// `-t^-1 + 1 - t`.
pub fn conjugated_generators() -> (LaurentMatrix, LaurentMatrix) {
    let x = LaurentMatrix::from_rows(vec![
        vec![p(-1, &[-1]), p(-1, &[-1])],
        vec![p(0, &[1]), p(0, &[1, -1])],
    ]);
    let y = LaurentMatrix::from_rows(vec![
        vec![p(-1, &[-1, 1]), p(0, &[1])],
        vec![p(1, &[-1]), p(1, &[-1])],
    ]);
    (x, y)
}

/// Entrywise evaluation of a Laurent matrix at `t0 != 0`.
pub fn specialize(m: &LaurentMatrix, t0: &RealScalar) -> Result<RealMatrix> {
    if t0.is_zero() {
        return Err(Error::ZeroSpecialization);
    }
    let size = m.size();
    let mut entries = Vec::with_capacity(size * size);
    for e in m.entries() {
        entries.push(eval_laurent(e, t0)?);
    }
    RealMatrix::new(size, entries)
}

/// Evaluates a Laurent polynomial at a nonzero scalar: Horner over the dense
/// degree range, times `t0^low`.
pub fn eval_laurent(poly: &LaurentPoly, t0: &RealScalar) -> Result<RealScalar> {
    let Some((lo, hi)) = poly.degree_bounds() else {
        return Ok(RealScalar::zero());
    };
    if let RealScalar::Float(t) = t0 {
        return Ok(RealScalar::Float(poly.eval_f64(*t)));
    }
    let mut acc = RealScalar::zero();
    for deg in (lo..=hi).rev() {
        acc = acc.mul(t0)?;
        let c = poly.coeff(deg);
        acc = acc.add(&RealScalar::Rational(crate::scalar::Rat::from_integer(c)))?;
    }
    if lo != 0 {
        let base = if lo > 0 { t0.clone() } else { t0.inv()? };
        for _ in 0..lo.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
    }
    Ok(acc)
}
