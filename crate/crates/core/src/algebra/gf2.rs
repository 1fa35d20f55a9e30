use std::fmt;

use num_integer::Integer;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Dense square matrix over the field of two elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    dim: usize,
    bits: Vec<bool>,
}

impl GF2Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, bits: vec![false; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.bits[i * dim + i] = true;
        }
        m
    }

    /// Reduction mod 2 of an integer matrix.
    pub fn from_int(a: &IntMatrix) -> Self {
        let dim = a.dim();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.bits[i * dim + j] = a.get(i, j).is_odd();
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.len() });
            }
            for (j, &b) in row.iter().enumerate() {
                m.bits[i * dim + j] = b % 2 == 1;
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.dim + j]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                if self.get(i, k) {
                    for j in 0..n {
                        out.bits[i * n + j] ^= other.get(k, j);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Product over GF(2).
pub fn gf2_mul(a: &GF2Matrix, b: &GF2Matrix) -> Result<GF2Matrix> {
    a.mul(b)
}

impl fmt::Display for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let line: Vec<&str> = (0..self.dim).map(|j| if self.get(i, j) { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF2Matrix\n{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_product() {
        let a = IntMatrix::from_rows(&[vec![3, 2], vec![1, 1]]).unwrap();
        let g = GF2Matrix::from_int(&a);
        assert_eq!(g, GF2Matrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap());
        // [[1,0],[1,1]]^2 = [[1,0],[0,1]] mod 2
        assert_eq!(gf2_mul(&g, &g).unwrap(), GF2Matrix::identity(2));
        assert!(gf2_mul(&g, &GF2Matrix::identity(3)).is_err());
    }
}
