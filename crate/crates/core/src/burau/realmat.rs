//! Square matrices over `RealScalar`, the target of specialization.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::RealScalar;

/// A square matrix of real scalars. All entries are expected to share one
/// exactness kind (rational entries may embed into a quadratic field).
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    size: usize,
    entries: Vec<RealScalar>,
}

impl RealMatrix {
    pub fn new(size: usize, entries: Vec<RealScalar>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::Internal(format!(
                "matrix needs {} entries, got {}",
                size * size,
                entries.len()
            )));
        }
        Ok(RealMatrix { size, entries })
    }

    pub fn identity(size: usize) -> Self {
        let mut entries = vec![RealScalar::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = RealScalar::one();
        }
        RealMatrix { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> &RealScalar {
        &self.entries[row * self.size + col]
    }

    pub fn entries(&self) -> &[RealScalar] {
        &self.entries
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(RealScalar::is_exact)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.size != other.size {
            return Err(Error::Internal("matrix size mismatch".into()));
        }
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RealScalar::zero();
                for k in 0..n {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(RealMatrix { size: n, entries })
    }

    pub fn pow(&self, exponent: u32) -> Result<Self> {
        let mut out = Self::identity(self.size);
        for _ in 0..exponent {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).clone());
            }
        }
        RealMatrix { size: n, entries }
    }

    pub fn trace(&self) -> Result<RealScalar> {
        let mut acc = RealScalar::zero();
        for i in 0..self.size {
            acc = acc.add(self.get(i, i))?;
        }
        Ok(acc)
    }

    pub fn det(&self) -> Result<RealScalar> {
        match self.size {
            1 => Ok(self.get(0, 0).clone()),
            2 => self
                .get(0, 0)
                .mul(self.get(1, 1))?
                .sub(&self.get(0, 1).mul(self.get(1, 0))?),
            _ => {
                let mut acc = RealScalar::zero();
                for j in 0..self.size {
                    let m = self.minor(0, j).det()?;
                    let term = self.get(0, j).mul(&m)?;
                    acc = if j % 2 == 0 {
                        acc.add(&term)?
                    } else {
                        acc.sub(&term)?
                    };
                }
                Ok(acc)
            }
        }
    }

    fn minor(&self, row: usize, col: usize) -> RealMatrix {
        let n = self.size;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != row) {
            for j in (0..n).filter(|&j| j != col) {
                entries.push(self.get(i, j).clone());
            }
        }
        RealMatrix {
            size: n - 1,
            entries,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det()?;
        if det.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv_det = det.inv()?;
        let n = self.size;
        if n == 1 {
            return RealMatrix::new(1, vec![inv_det]);
        }
        let mut entries = vec![RealScalar::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det()?;
                let c = if (i + j) % 2 == 0 { c } else { c.neg() };
                entries[j * n + i] = c.mul(&inv_det)?;
            }
        }
        Ok(RealMatrix { size: n, entries })
    }

    /// Entrywise Galois conjugation (exact kinds only).
    pub fn galois_conjugate(&self) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(RealScalar::galois_conjugate)
            .collect::<Result<Vec<_>>>()?;
        Ok(RealMatrix {
            size: self.size,
            entries,
        })
    }

    /// Exact equality for exact kinds (entrywise difference is zero).
    pub fn eq_exact(&self, other: &Self) -> Result<bool> {
        if self.size != other.size {
            return Ok(false);
        }
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !a.sub(b)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_identity(&self) -> Result<bool> {
        self.eq_exact(&Self::identity(self.size))
    }

    /// True when `self == lambda * I` for some scalar; in particular `+-I`.
    pub fn is_scalar_matrix(&self) -> Result<bool> {
        let lambda = self.get(0, 0);
        for i in 0..self.size {
            for j in 0..self.size {
                let expected = if i == j {
                    lambda.clone()
                } else {
                    RealScalar::zero()
                };
                if !self.get(i, j).sub(&expected)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl fmt::Display for RealMatrix {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> RealMatrix {
        RealMatrix::new(
            2,
            vec![
                RealScalar::from_int(a),
                RealScalar::from_int(b),
                RealScalar::from_int(c),
                RealScalar::from_int(d),
            ],
        )
        .unwrap()
    }

    #[test]
    fn inverse_and_det() {
        let m = m2(1, 2, 3, 4);
        assert_eq!(m.det().unwrap(), RealScalar::from_int(-2));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity().unwrap());
        assert_eq!(*inv.get(0, 0), RealScalar::Rational(rat(-2, 1)));
        assert_eq!(*inv.get(0, 1), RealScalar::Rational(rat(1, 1)));
    }

    #[test]
    fn scalar_matrix_detection() {
        assert!(m2(-1, 0, 0, -1).is_scalar_matrix().unwrap());
        assert!(m2(3, 0, 0, 3).is_scalar_matrix().unwrap());
        assert!(!m2(1, 0, 0, 2).is_scalar_matrix().unwrap());
        assert!(!m2(1, 1, 0, 1).is_scalar_matrix().unwrap());
    }
}
