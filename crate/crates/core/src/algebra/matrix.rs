use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::json::{BigIntRepr, RatRepr};
use super::poly::{IntPoly, RatPoly};
use crate::error::{Error, Result};

/// Dense square matrix over ℤ, row-major, 0-based indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(dim: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { left: dim * dim, right: data.len() });
        }
        Ok(Self { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![BigInt::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    /// The anti-diagonal reversal matrix `R` (`R[i][dim-1-i] = 1`).
    pub fn reversal(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i + j + 1 == dim { BigInt::one() } else { BigInt::zero() })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.len() });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() })
    }

    /// `self - c·I`
    pub fn shift(&self, c: i64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.data[i * self.dim + i] -= c;
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Fraction-free Gaussian elimination (Bareiss) with row swaps on zero pivots.
    pub fn det(&self) -> BigInt {
        let n = self.dim;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.data.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                let lead = m[i * n + k].clone();
                for j in k + 1..n {
                    let v = (&m[i * n + j] * &pivot - &lead * &m[k * n + j]) / &prev;
                    m[i * n + j] = v;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = pivot;
        }
        let d = m[n * n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// `det(xI - A)` by Berkowitz's division-free recurrence on leading
    /// principal submatrices.
    pub fn charpoly(&self) -> IntPoly {
        let n = self.dim;
        // descending coefficients of the charpoly of the leading r×r block
        let mut p: Vec<BigInt> = vec![BigInt::one()];
        for r in 0..n {
            let a = self.get(r, r);
            // s[j] = R · A_r^j · c with R = row r left of the diagonal, c = column r above it
            let mut s = Vec::with_capacity(r);
            let mut v: Vec<BigInt> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for j in 0..r {
                if j > 0 {
                    v = (0..r)
                        .map(|i| (0..r).map(|l| self.get(i, l) * &v[l]).sum())
                        .collect();
                }
                s.push((0..r).map(|l| self.get(r, l) * &v[l]).sum::<BigInt>());
            }
            let mut q = vec![BigInt::zero(); r + 2];
            for d in 0..r + 2 {
                let mut c = if d <= r { p[d].clone() } else { BigInt::zero() };
                if d >= 1 {
                    c -= a * &p[d - 1];
                }
                if d >= 2 {
                    for i in 0..=d - 2 {
                        c -= &p[i] * &s[d - 2 - i];
                    }
                }
                q[d] = c;
            }
            p = q;
        }
        p.reverse();
        IntPoly::new(p)
    }

    pub fn is_invertible_q(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.dim,
            cols: self.dim,
            data: self.data.iter().map(|v| BigRational::from_integer(v.clone())).collect(),
        }
    }

    /// Evaluates `p(A)` by Horner's rule over ℚ.
    pub fn eval_poly(&self, p: &RatPoly) -> RatMatrix {
        let a = self.to_rat();
        let mut acc = RatMatrix::zeros(self.dim, self.dim);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(&a).expect("square");
            for i in 0..self.dim {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.dim {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<BigIntRepr>> = (0..self.dim).map(|i| self.row(i).iter().map(BigIntRepr::from).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<BigIntRepr>>::deserialize(d)?;
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::try_from).collect::<std::result::Result<_, _>>())
            .collect::<std::result::Result<_, _>>()
            .map_err(serde::de::Error::custom)?;
        Self::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Dense rectangular matrix over ℚ, row-major, 0-based indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { left: cols, right: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { rows: n, cols, data })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { left: self.rows * self.cols, right: other.rows * other.cols });
        }
        Ok(Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() })
    }

    /// Row-vector product `v · self`.
    pub fn left_apply(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { left: self.rows, right: v.len() });
        }
        let mut out = vec![BigRational::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(i, j);
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Row-echelon reduction in place; returns (rank, pivot swap parity, pivot product).
    fn eliminate(&mut self) -> (usize, bool, BigRational) {
        let mut rank = 0;
        let mut odd = false;
        let mut prod = BigRational::one();
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..self.cols {
                    self.data.swap(rank * self.cols + j, p * self.cols + j);
                }
                odd = !odd;
            }
            let pivot = self.get(rank, col).clone();
            prod *= &pivot;
            for i in rank + 1..self.rows {
                let f = self.get(i, col) / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = self.get(i, j) - &f * self.get(rank, j);
                    self.set(i, j, v);
                }
            }
            rank += 1;
        }
        (rank, odd, prod)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().0
    }

    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { left: self.rows, right: self.cols });
        }
        let mut m = self.clone();
        let (rank, odd, prod) = m.eliminate();
        if rank < self.rows {
            return Ok(BigRational::zero());
        }
        Ok(if odd { -prod } else { prod })
    }

    /// Gauss–Jordan inverse; [`Error::Singular`] if not invertible.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { left: self.rows, right: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&i| !a.get(i, col).is_zero()).ok_or(Error::Singular)?;
            if p != col {
                for j in 0..n {
                    a.data.swap(col * n + j, p * n + j);
                    inv.data.swap(col * n + j, p * n + j);
                }
            }
            let pivot = a.get(col, col).clone();
            for j in 0..n {
                let v = a.get(col, j) / &pivot;
                a.set(col, j, v);
                let v = inv.get(col, j) / &pivot;
                inv.set(col, j, v);
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a.get(i, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(i, j) - &f * a.get(col, j);
                    a.set(i, j, v);
                    let v = inv.get(i, j) - &f * inv.get(col, j);
                    inv.set(i, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Basis of `{x : self · xᵀ = 0}`, one vector per free column of the
    /// reduced row-echelon form.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            let Some(p) = (row..a.rows).find(|&i| !a.get(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..a.cols {
                    a.data.swap(row * a.cols + j, p * a.cols + j);
                }
            }
            let pivot = a.get(row, col).clone();
            for j in col..a.cols {
                let v = a.get(row, j) / &pivot;
                a.set(row, j, v);
            }
            for i in 0..a.rows {
                let f = a.get(i, col).clone();
                if i == row || f.is_zero() {
                    continue;
                }
                for j in col..a.cols {
                    let v = a.get(i, j) - &f * a.get(row, j);
                    a.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
            if row == a.rows {
                break;
            }
        }
        (0..a.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut x = vec![BigRational::zero(); a.cols];
                x[free] = BigRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = -a.get(r, free).clone();
                }
                x
            })
            .collect()
    }

    /// The integer matrix, if square with integral entries.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let data = self.data.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect::<Option<Vec<_>>>()?;
        Some(IntMatrix { dim: self.rows, data })
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(BigRational::is_integer)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix{:?}", self.row_vecs().iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<RatRepr>> = (0..self.rows).map(|i| self.row(i).iter().map(RatRepr::from).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<RatRepr>>::deserialize(d)?;
        let rows: Vec<Vec<BigRational>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::try_from).collect::<std::result::Result<_, _>>())
            .collect::<std::result::Result<_, _>>()
            .map_err(serde::de::Error::custom)?;
        Self::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Exact `x` with `x · A = b` (row-vector convention).
/// Returns [`Error::Singular`] when `A` is not invertible over ℚ.
pub fn solve_rational(a: &IntMatrix, b: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = a.dim();
    if b.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: b.len() });
    }
    // x·A = b  <=>  Aᵀ·xᵀ = bᵀ; eliminate on the augmented [Aᵀ | b].
    let mut m = RatMatrix::zeros(n, n + 1);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, BigRational::from_integer(a.get(j, i).clone()));
        }
        m.set(i, n, b[i].clone());
    }
    for col in 0..n {
        let p = (col..n).find(|&i| !m.get(i, col).is_zero()).ok_or(Error::Singular)?;
        if p != col {
            for j in 0..=n {
                m.data.swap(col * (n + 1) + j, p * (n + 1) + j);
            }
        }
        let pivot = m.get(col, col).clone();
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = m.get(i, col) / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in col..=n {
                let v = m.get(i, j) - &f * m.get(col, j);
                m.set(i, j, v);
            }
        }
    }
    Ok((0..n).map(|i| m.get(i, n) / m.get(i, i)).collect())
}

/// Convenience: `|det|` of an integer matrix equals one.
pub fn is_unimodular(a: &IntMatrix) -> bool {
    a.det().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sigma7() -> IntMatrix {
        m(&[
            &[0, 0, 1, 1, 1, 0],
            &[0, 0, 1, 0, 0, 0],
            &[1, 1, 1, 0, 0, 0],
            &[1, 1, 1, 1, 1, 1],
            &[0, 0, 0, 0, 1, 1],
            &[0, 1, 1, 1, 0, 0],
        ])
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::identity(3).det(), BigInt::one());
        assert_eq!(sigma7().det(), BigInt::one());
        assert_eq!(IntMatrix::zeros(2).det(), BigInt::zero());
        // needs a row swap at the first pivot
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(m(&[&[0, 2, 1], &[0, 1, 1], &[3, 0, 5]]).det(), BigInt::from(3));
    }

    #[test]
    fn charpolys() {
        assert_eq!(sigma7().charpoly(), IntPoly::from_i64s(&[1, -1, -3, 5, -1, -3, 1]));
        assert_eq!(m(&[&[0, 1], &[1, 1]]).charpoly(), IntPoly::from_i64s(&[-1, -1, 1]));
        assert_eq!(IntMatrix::identity(2).charpoly(), IntPoly::from_i64s(&[1, -2, 1]));
        assert_eq!(IntMatrix::zeros(0).charpoly(), IntPoly::from_i64s(&[1]));
    }

    #[test]
    fn traces_and_products() {
        assert_eq!(sigma7().trace(), BigInt::from(3));
        assert_eq!(sigma7().mul(&IntMatrix::identity(6)).unwrap(), sigma7());
        assert!(sigma7().mul(&IntMatrix::identity(5)).is_err());
        let r = IntMatrix::reversal(3);
        assert_eq!(r.mul(&r).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn solves_row_systems() {
        let b = vec![q(3), q(-1), q(2)];
        assert_eq!(solve_rational(&IntMatrix::identity(3), &b).unwrap(), b);
        let a = m(&[&[2, 1], &[1, 1]]);
        let x = solve_rational(&a, &[q(1), q(1)]).unwrap();
        assert_eq!(a.to_rat().left_apply(&x).unwrap(), vec![q(1), q(1)]);
        assert_eq!(solve_rational(&m(&[&[1, 1], &[1, 1]]), &[q(1), q(0)]), Err(Error::Singular));
    }

    #[test]
    fn unimodular_first_row_solves_to_e1() {
        let a = m(&[&[1, 2, 0, 1], &[0, 1, 3, 0], &[0, 0, 1, 4], &[0, 0, 0, 1]]);
        let lower = m(&[&[1, 0, 0, 0], &[2, 1, 0, 0], &[-1, 3, 1, 0], &[0, 1, -2, 1]]);
        let u = lower.mul(&a).unwrap();
        assert!(is_unimodular(&u));
        let b: Vec<BigRational> = u.row(0).iter().map(|v| BigRational::from_integer(v.clone())).collect();
        assert_eq!(solve_rational(&u, &b).unwrap(), vec![q(1), q(0), q(0), q(0)]);
    }

    #[test]
    fn rational_inverse_and_det() {
        let a = m(&[&[2, 1], &[7, 4]]).to_rat();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(2));
        assert_eq!(a.det().unwrap(), q(1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).to_rat().inverse(), Err(Error::Singular));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).to_rat().rank(), 1);
        assert_eq!(sigma7().to_rat().det().unwrap(), q(1));
    }

    #[test]
    fn eval_poly_annihilates_with_charpoly() {
        let a = sigma7();
        assert!(a.eval_poly(&a.charpoly().to_rat()).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let s = serde_json::to_string(&sigma7()).unwrap();
        assert!(s.starts_with("[[0,0,1,1,1,0],"));
        assert_eq!(serde_json::from_str::<IntMatrix>(&s).unwrap(), sigma7());
        let r = m(&[&[1, 2], &[3, 5]]).to_rat().inverse().unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"[["-5","2"],["3","-1"]]"#);
        assert_eq!(serde_json::from_str::<RatMatrix>(&s).unwrap(), r);
    }
}
