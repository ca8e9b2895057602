//! Square matrices over the integer Laurent ring.

use std::fmt;
use std::ops::Mul;

use super::poly::LaurentPoly;
use crate::error::{Error, Result};

/// A square matrix with `LaurentPoly` entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    size: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            *m.get_mut(i, i) = LaurentPoly::one();
        }
        m
    }

    pub fn zero(size: usize) -> Self {
        LaurentMatrix {
            size,
            entries: vec![LaurentPoly::zero(); size * size],
        }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let size = rows.len();
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        assert_eq!(entries.len(), size * size, "matrix must be square");
        LaurentMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.size + col]
    }

    pub fn get_mut(&mut self, row: usize, col: usize) -> &mut LaurentPoly {
        &mut self.entries[row * self.size + col]
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        LaurentMatrix {
            size: self.size,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentPoly::zero();
                for k in 0..n {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                *out.get_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        LaurentMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        LaurentMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        self.map(|e| e.mul(p))
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                *out.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        out
    }

    /// Entrywise `t -> t^-1`.
    pub fn bar(&self) -> Self {
        self.map(LaurentPoly::bar)
    }

    /// The involution `M(t)^* = M(t^-1)^T`.
    pub fn star(&self) -> Self {
        self.bar().transpose()
    }

    /// Entrywise `t -> s^2` embedding into the auxiliary ring.
    pub fn subst_square(&self) -> Self {
        self.map(LaurentPoly::subst_square)
    }

    pub fn det(&self) -> LaurentPoly {
        match self.size {
            1 => self.get(0, 0).clone(),
            2 => self
                .get(0, 0)
                .mul(self.get(1, 1))
                .sub(&self.get(0, 1).mul(self.get(1, 0))),
            _ => {
                // Laplace expansion along the first row
                let mut acc = LaurentPoly::zero();
                for j in 0..self.size {
                    let c = self.get(0, j);
                    if c.is_zero() {
                        continue;
                    }
                    let m = self.minor(0, j).det();
                    let term = c.mul(&m);
                    acc = if j % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    };
                }
                acc
            }
        }
    }

    fn minor(&self, row: usize, col: usize) -> LaurentMatrix {
        let n = self.size;
        let mut rows = Vec::with_capacity(n - 1);
        for i in (0..n).filter(|&i| i != row) {
            let mut r = Vec::with_capacity(n - 1);
            for j in (0..n).filter(|&j| j != col) {
                r.push(self.get(i, j).clone());
            }
            rows.push(r);
        }
        LaurentMatrix::from_rows(rows)
    }

    /// Adjugate (transpose of the cofactor matrix).
    pub fn adjugate(&self) -> LaurentMatrix {
        let n = self.size;
        if n == 1 {
            return LaurentMatrix::identity(1);
        }
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                let c = if (i + j) % 2 == 0 { c } else { c.neg() };
                *out.get_mut(j, i) = c;
            }
        }
        out
    }

    /// Exact inverse over the Laurent ring; requires the determinant to be a
    /// unit `(+-1) * t^k`.
    pub fn inverse(&self) -> Result<LaurentMatrix> {
        let det = self.det();
        let (sign, deg) = det
            .as_unit_monomial()
            .ok_or_else(|| Error::NonUnitDeterminant(det.to_string()))?;
        // 1 / (sign * t^deg) = sign * t^-deg
        let inv_det = LaurentPoly::term(sign as i64, -deg);
        Ok(self.adjugate().scale(&inv_det))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size)
    }
}

impl Mul for &LaurentMatrix {
    type Output = LaurentMatrix;
    fn mul(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        LaurentMatrix::mul(self, rhs)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            write!(f, "[")?;
            for j in 0..self.size {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
