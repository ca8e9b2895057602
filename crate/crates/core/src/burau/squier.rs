//! Squier's invariant form, derived from its defining relation rather than
//! transcribed: a nonsingular J over Z[s, s^-1] (with t = s^2) satisfying
//! `star(rho(w)) J rho(w) = J` for every braid word w.
//!
//! The relation is linear in J and its coefficients involve only t = s^2, so
//! the even and odd s-parts of any solution solve it separately; solving over
//! t therefore loses nothing, and the derived J has even s-support.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{burau, burau_generator, specialize, RealMatrix};
use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::ratpoly::{div_exact, gcd_poly, trim};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::scalar::RealScalar;

/// The derived Squier form for one strand count. `matrix_t` stores J with
/// the substitution t = s^2 already undone (even s-powers halved).
#[derive(Debug, Clone)]
pub struct SquierForm {
    strands: usize,
    j_t: LaurentMatrix,
}

/// J evaluated at a specialization point. When sqrt(t0) exists in the
/// scalar tower the form is a single matrix; otherwise it splits into the
/// even and odd s-parts, each a matrix over Q(t0).
#[derive(Debug, Clone)]
pub enum SpecializedForm {
    Direct(RealMatrix),
    EvenOdd { even: RealMatrix, odd: RealMatrix },
}

impl SquierForm {
    pub fn strands(&self) -> usize {
        self.strands
    }

    /// J over Z[t, t^-1].
    pub fn matrix_t(&self) -> &LaurentMatrix {
        &self.j_t
    }

    /// J over Z[s, s^-1] with t = s^2.
    pub fn matrix_s(&self) -> LaurentMatrix {
        self.j_t.subst_square()
    }

    /// The defining relation for a single word, checked symbolically in s.
    pub fn relation_holds(&self, word: &BraidWord) -> Result<bool> {
        let m = burau(word)?.subst_square();
        let j = self.matrix_s();
        Ok(m.star().mul(&j).mul(&m) == j)
    }

    pub fn relation_holds_for_generators(&self) -> Result<bool> {
        for index in 1..self.strands {
            let g = burau_generator(self.strands, index, false)?.subst_square();
            let j = self.matrix_s();
            if g.star().mul(&j).mul(&g) != j {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Evaluates J at `t0 > 0` (or any exact t0 whose square root exists in
    /// its field); falls back to the even/odd split otherwise.
    pub fn specialize_at(&self, t0: &RealScalar) -> Result<SpecializedForm> {
        if t0.is_zero() {
            return Err(Error::ZeroSpecialization);
        }
        let js = self.matrix_s();
        let mut even = LaurentMatrix::zero(js.size());
        let mut odd = LaurentMatrix::zero(js.size());
        for i in 0..js.size() {
            for j in 0..js.size() {
                let (e, o) = js.get(i, j).even_odd_parts();
                *even.get_mut(i, j) = e;
                *odd.get_mut(i, j) = o;
            }
        }
        let odd_is_zero = odd.entries().iter().all(LaurentPoly::is_zero);
        if odd_is_zero {
            return Ok(SpecializedForm::Direct(specialize(&even, t0)?));
        }
        if let Some(s0) = t0.sqrt_exact() {
            if s0.is_exact() {
                return Ok(SpecializedForm::Direct(specialize(&js, &s0)?));
            }
        }
        Ok(SpecializedForm::EvenOdd {
            even: specialize(&even, t0)?,
            odd: specialize(&odd, t0)?,
        })
    }
}

/// Returns the cached Squier form for B3 or B4, deriving it on first use.
pub fn squier_form(strands: usize) -> Result<&'static SquierForm> {
    static FORM3: OnceLock<Result<SquierForm>> = OnceLock::new();
    static FORM4: OnceLock<Result<SquierForm>> = OnceLock::new();
    let cell = match strands {
        3 => &FORM3,
        4 => &FORM4,
        _ => return Err(Error::UnsupportedStrands(strands)),
    };
    cell.get_or_init(|| derive_squier_form(strands))
        .as_ref()
        .map_err(Clone::clone)
}

/// The t <-> t^-1 duality of the representation: `bar(rho(w))` is conjugate
/// to `(rho(w)^-1)^T` by `J^T`. Verified in the polynomial form
/// `J^T bar(M) = (M^-1)^T J^T`, which avoids inverting J over the ring.
pub fn verify_duality(word: &BraidWord) -> Result<bool> {
    let form = squier_form(word.strands())?;
    let jt = form.matrix_s().transpose();
    let m = burau(word)?.subst_square();
    let m_inv_t = m.inverse()?.transpose();
    Ok(jt.mul(&m.bar()) == m_inv_t.mul(&jt))
}

// --- linear solve over the coefficient field ---

/// Degree window for the banded ansatz: each J entry is supported on
/// t^-WINDOW .. t^WINDOW.
const WINDOW: i64 = 3;

fn derive_squier_form(strands: usize) -> Result<SquierForm> {
    let size = strands - 1;
    let positions: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .filter(|&(i, j)| i.abs_diff(j) <= 1)
        .collect();
    let degs: Vec<i64> = (-WINDOW..=WINDOW).collect();
    let var_count = positions.len() * degs.len();
    let var_index = |pos_idx: usize, deg_idx: usize| pos_idx * degs.len() + deg_idx;

    // rows of the homogeneous system, keyed by (relation entry, t-degree)
    let mut rows: BTreeMap<(usize, usize, usize, i64), Vec<BigRational>> = BTreeMap::new();
    for gen in 1..strands {
        let g = burau_generator(strands, gen, false)?;
        let gs = g.star();
        for (pos_idx, &(k, l)) in positions.iter().enumerate() {
            for (deg_idx, &deg) in degs.iter().enumerate() {
                let var = var_index(pos_idx, deg_idx);
                for i in 0..size {
                    for j in 0..size {
                        // coefficient of J_{k,l} t^deg in (star(g) J g - J)_{i,j}
                        let mut coeff = gs.get(i, k).mul(g.get(l, j)).shifted(deg);
                        if (k, l) == (i, j) {
                            coeff = coeff.sub(&LaurentPoly::term(1, deg));
                        }
                        for (d, c) in coeff.terms() {
                            let row = rows
                                .entry((gen, i, j, d))
                                .or_insert_with(|| vec![BigRational::zero(); var_count]);
                            row[var] += BigRational::from_integer(c.clone());
                        }
                    }
                }
            }
        }
    }

    let matrix: Vec<Vec<BigRational>> = rows.into_values().collect();
    let basis = nullspace(matrix, var_count);
    if basis.is_empty() {
        return Err(Error::Internal(
            "Squier relation has no solution in the ansatz window".into(),
        ));
    }

    for vector in &basis {
        let candidate = assemble(size, &positions, &degs, vector);
        if candidate.entries().iter().all(LaurentPoly::is_zero) {
            continue;
        }
        let normalized = normalize_candidate(&candidate);
        if normalized.det().is_zero() {
            continue;
        }
        let form = SquierForm {
            strands,
            j_t: normalized,
        };
        if form.relation_holds_for_generators()? {
            return Ok(form);
        }
        return Err(Error::Internal(
            "derived Squier candidate fails the defining relation".into(),
        ));
    }
    Err(Error::Internal(
        "no nonsingular solution of the Squier relation found".into(),
    ))
}

fn assemble(
    size: usize,
    positions: &[(usize, usize)],
    degs: &[i64],
    vector: &[BigRational],
) -> LaurentMatrix {
    // clear denominators globally to keep relative scales
    let lcm = vector
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut m = LaurentMatrix::zero(size);
    for (pos_idx, &(i, j)) in positions.iter().enumerate() {
        let mut poly = LaurentPoly::zero();
        for (deg_idx, &deg) in degs.iter().enumerate() {
            let c = &vector[pos_idx * degs.len() + deg_idx];
            poly.add_term(&(c.numer() * &lcm / c.denom()), deg);
        }
        *m.get_mut(i, j) = poly;
    }
    m
}

/// Canonical representative of the solution ray: divide all entries by their
/// common polynomial GCD and common monomial, make the matrix primitive, and
/// fix the sign of the first nonzero entry's leading coefficient.
fn normalize_candidate(m: &LaurentMatrix) -> LaurentMatrix {
    let min_deg = m
        .entries()
        .iter()
        .filter_map(LaurentPoly::degree_bounds)
        .map(|(lo, _)| lo)
        .min()
        .unwrap_or(0);
    // as ordinary rational polynomials
    let polys: Vec<Vec<BigRational>> = m
        .entries()
        .iter()
        .map(|e| {
            let shifted = e.shifted(-min_deg);
            let hi = shifted.degree_bounds().map(|(_, h)| h).unwrap_or(-1);
            (0..=hi)
                .map(|d| BigRational::from_integer(shifted.coeff(d)))
                .collect()
        })
        .collect();
    let mut g: Vec<BigRational> = Vec::new();
    for p in &polys {
        let mut p = p.clone();
        trim(&mut p);
        if p.is_empty() {
            continue;
        }
        g = if g.is_empty() { p } else { gcd_poly(&g, &p) };
    }
    if g.len() <= 1 {
        g = vec![BigRational::one()];
    }
    let reduced: Vec<Vec<BigRational>> = polys
        .iter()
        .map(|p| {
            let mut p = p.clone();
            trim(&mut p);
            if p.is_empty() {
                Vec::new()
            } else {
                div_exact(&p, &g)
            }
        })
        .collect();
    let lcm = reduced.iter().flatten().fold(BigInt::one(), |acc, c| {
        acc.lcm(c.denom())
    });
    let ints: Vec<Vec<BigInt>> = reduced
        .iter()
        .map(|p| p.iter().map(|c| c.numer() * &lcm / c.denom()).collect())
        .collect();
    let content = ints
        .iter()
        .flatten()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let content = if content.is_zero() {
        BigInt::one()
    } else {
        content
    };
    let sign = ints
        .iter()
        .find_map(|p| p.last())
        .map(|lead| if lead.is_negative() { -1 } else { 1 })
        .unwrap_or(1);
    let scale = content * BigInt::from(sign);
    let size = m.size();
    let mut out = LaurentMatrix::zero(size);
    for (idx, p) in ints.iter().enumerate() {
        let poly = LaurentPoly::from_terms(
            p.iter()
                .enumerate()
                .map(|(d, c)| (d as i64, c / &scale)),
        );
        *out.get_mut(idx / size, idx % size) = poly;
    }
    out
}

/// Nullspace basis of a homogeneous rational system by Gauss-Jordan.
fn nullspace(mut rows: Vec<Vec<BigRational>>, cols: usize) -> Vec<Vec<BigRational>> {
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let lead = rows[rank][col].clone();
        for c in rows[rank].iter_mut() {
            *c /= &lead;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..cols {
                    let v = &rows[rank][c] * &factor;
                    rows[r][c] -= v;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let pivot_set: std::collections::BTreeSet<usize> = pivot_cols.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_word;
    use crate::scalar::{rat, QuadNum};

    #[test]
    fn squier_form_b3_satisfies_relation() {
        let form = squier_form(3).unwrap();
        assert!(form.relation_holds_for_generators().unwrap());
        assert!(!form.matrix_t().det().is_zero());
        // canonical shape: diagonal t+1, superdiagonal -1, subdiagonal -t
        let j = form.matrix_t();
        assert_eq!(*j.get(0, 0), LaurentPoly::from_dense(0, &[1, 1]));
        assert_eq!(*j.get(0, 1), LaurentPoly::constant(-1));
        assert_eq!(*j.get(1, 0), LaurentPoly::from_dense(1, &[-1]));
        assert_eq!(*j.get(1, 1), LaurentPoly::from_dense(0, &[1, 1]));
    }

    #[test]
    fn squier_form_b4_satisfies_relation() {
        let form = squier_form(4).unwrap();
        assert!(form.relation_holds_for_generators().unwrap());
        assert!(!form.matrix_t().det().is_zero());
    }

    #[test]
    fn relation_holds_for_words_not_just_generators() {
        let form = squier_form(3).unwrap();
        let w = parse_word("s2^5 s1^2 s2^-4 s1 s2^3", 3).unwrap();
        assert!(form.relation_holds(&w).unwrap());
        let form4 = squier_form(4).unwrap();
        let w4 = parse_word("s1 s3^-1 s2^2 s1^-1", 4).unwrap();
        assert!(form4.relation_holds(&w4).unwrap());
    }

    #[test]
    fn duality_examples() {
        let w = parse_word("s1", 3).unwrap();
        assert!(verify_duality(&w).unwrap());
        let w = BraidWord::empty(3).unwrap();
        assert!(verify_duality(&w).unwrap());
        let w = parse_word("s2^5 s1^2 s2^-4 s1 s2^3", 3).unwrap();
        assert!(verify_duality(&w).unwrap());
    }

    #[test]
    fn specialization_at_golden_point_is_direct() {
        let form = squier_form(3).unwrap();
        let t0 = RealScalar::Quadratic(QuadNum::new(rat(3, 2), rat(1, 2), 5).unwrap());
        match form.specialize_at(&t0).unwrap() {
            SpecializedForm::Direct(m) => {
                assert!(m.is_exact());
                assert!(!m.det().unwrap().is_zero());
            }
            SpecializedForm::EvenOdd { .. } => panic!("even J should specialize directly"),
        }
    }
}
