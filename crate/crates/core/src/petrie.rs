//! The permutation → Petrie matrix map and the linear action `φ_σ` on the
//! interval basis `J_i = [i, i+1]`.
//!
//! Row convention: `φ_σ(v) = v · M_σ`, so the matrix of `φ_τ ∘ φ_σ` is
//! `M_σ · M_τ`.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{GF2Matrix, IntMatrix, RatMatrix};
use crate::error::{Error, Result};
use crate::perm::PointMap;

/// `M_{f, n-1}`: row `i` has ones in columns `min(f(i), f(i+1)) .. max - 1`.
pub fn petrie_matrix<F: PointMap + ?Sized>(f: &F) -> Result<IntMatrix> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall { min: 2, got: n });
    }
    for i in 1..=n {
        let v = f.image(i);
        if v == 0 || v > n {
            return Err(Error::OutOfRange { value: v, degree: n });
        }
    }
    let mut m = IntMatrix::zeros(n - 1);
    for i in 1..n {
        let (a, b) = (f.image(i), f.image(i + 1));
        if a == b {
            return Err(Error::ConsecutiveEqual { position: i, value: a });
        }
        for j in a.min(b)..a.max(b) {
            m.set(i - 1, j - 1, BigInt::one());
        }
    }
    Ok(m)
}

pub fn petrie_matrix_gf2<F: PointMap + ?Sized>(f: &F) -> Result<GF2Matrix> {
    Ok(GF2Matrix::from_int(&petrie_matrix(f)?))
}

/// True iff every entry is 0 or 1 and the ones of each row are consecutive.
pub fn is_petrie(a: &IntMatrix) -> bool {
    (0..a.dim()).all(|i| {
        let row = a.row(i);
        if row.iter().any(|v| !v.is_zero() && !v.is_one()) {
            return false;
        }
        let ones: Vec<usize> = (0..row.len()).filter(|&j| row[j].is_one()).collect();
        ones.windows(2).all(|w| w[1] == w[0] + 1)
    })
}

/// The transition digraph in DOT: an arrow `J_i -> J_j` whenever `M[i][j] = 1`.
pub fn export_digraph<F: PointMap + ?Sized>(f: &F) -> Result<String> {
    let m = petrie_matrix(f)?;
    let mut out = String::from("digraph petrie {\n");
    for i in 0..m.dim() {
        let _ = writeln!(out, "  J{};", i + 1);
    }
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if !m.get(i, j).is_zero() {
                let _ = writeln!(out, "  J{} -> J{};", i + 1, j + 1);
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// An element `Σ r_i J_i` of `W_{F^m}`, by its coordinates in `B_m`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalVector {
    #[serde(with = "rat_vec")]
    coords: Vec<BigRational>,
}

impl IntervalVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![BigRational::zero(); dim])
    }

    /// The basis vector `J_i` (1-based) of `W_{F^dim}`.
    pub fn basis(i: usize, dim: usize) -> Result<Self> {
        if i == 0 || i > dim {
            return Err(Error::OutOfRange { value: i, degree: dim });
        }
        let mut v = Self::zero(dim);
        v.coords[i - 1] = BigRational::one();
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigRational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check(self.dim(), other.dim())?;
        Ok(Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check(self.dim(), other.dim())?;
        Ok(Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coords.iter().map(|a| a * c).collect())
    }

    /// Row-vector product `self · A`.
    pub fn times(&self, a: &RatMatrix) -> Result<Self> {
        a.left_apply(&self.coords).map(Self::new)
    }
}

impl fmt::Display for IntervalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, _) => write!(f, " {sign} ")?,
            }
            first = false;
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            write!(f, "J{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntervalVector({self})")
    }
}

/// `[j, k] = Σ_{i=j}^{k-1} J_i` in `W_{F^m}`. A reversed pair `j > k` denotes `[k, j]`.
pub fn interval_element(j: usize, k: usize, m: usize) -> Result<IntervalVector> {
    let (lo, hi) = (j.min(k), j.max(k));
    if lo < 1 || lo == hi || hi > m + 1 {
        return Err(Error::Precondition(format!("[{j}, {k}] is not an interval element of W^{m}")));
    }
    let mut v = IntervalVector::zero(m);
    for i in lo..hi {
        v.coords[i - 1] = BigRational::one();
    }
    Ok(v)
}

/// `φ_f(v) = v · M_f`.
pub fn phi_apply<F: PointMap + ?Sized>(f: &F, v: &IntervalVector) -> Result<IntervalVector> {
    let m = petrie_matrix(f)?;
    check(m.dim(), v.dim())?;
    v.times(&m.to_rat())
}

/// Rows stacked into `M(V | B_m)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisMatrix {
    rows: Vec<IntervalVector>,
}

impl BasisMatrix {
    pub fn rows(&self) -> &[IntervalVector] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn as_rat_matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.rows.iter().map(|r| r.coords.clone()).collect()).expect("equal row lengths")
    }

    /// The integer view, when every coordinate is integral.
    pub fn as_matrix(&self) -> Option<IntMatrix> {
        self.as_rat_matrix().to_int()
    }

    pub fn det(&self) -> BigRational {
        self.as_rat_matrix().det().expect("square by construction")
    }

    pub fn is_basis(&self) -> bool {
        !self.det().is_zero()
    }
}

/// Stacks `V` as the rows of `M(V | B_m)`; needs `|V| = m` vectors of dimension `m`.
pub fn basis_matrix(v: Vec<IntervalVector>) -> Result<BasisMatrix> {
    let m = v.len();
    for row in &v {
        check(m, row.dim())?;
    }
    Ok(BasisMatrix { rows: v })
}

fn check(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

mod rat_vec {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|c| c.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| crate::algebra::parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
