use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::json::{BigIntRepr, RatRepr};

/// Dense polynomial over ℤ, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_rat().to_string())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr: Vec<BigIntRepr> = self.coeffs.iter().map(BigIntRepr::from).collect();
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = Vec::<BigIntRepr>::deserialize(d)?;
        let coeffs = repr.into_iter().map(BigInt::try_from).collect::<Result<_, _>>().map_err(serde::de::Error::custom)?;
        Ok(Self::new(coeffs))
    }
}

/// Dense polynomial over ℚ, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `x - c`
    pub fn linear(c: BigRational) -> Self {
        Self::new(vec![-c, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Scales to leading coefficient one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => Self::new(self.coeffs.iter().map(|c| c / lc).collect()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| self.coeff(i) + other.coeff(i))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| self.coeff(i) - other.coeff(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// The polynomial with integer coefficients, if every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }

    /// Gcd of the numerators over lcm of the denominators; handy for display.
    pub fn content(&self) -> BigRational {
        let num = self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
        let den = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        BigRational::new(num, den)
    }

    fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let unit = a.is_one();
            match (d, unit) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) if a.is_integer() => write!(f, "{a}")?,
                (_, false) => write!(f, "({a})")?,
            }
            match d {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl Serialize for RatPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr: Vec<RatRepr> = self.coeffs.iter().map(RatRepr::from).collect();
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = Vec::<RatRepr>::deserialize(d)?;
        let coeffs = repr.into_iter().map(BigRational::try_from).collect::<Result<_, _>>().map_err(serde::de::Error::custom)?;
        Ok(Self::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn display_matches_conventional_form() {
        let p = IntPoly::from_i64s(&[1, -1, -3, 5, -1, -3, 1]);
        assert_eq!(p.to_string(), "x^6 - 3x^5 - x^4 + 5x^3 - 3x^2 - x + 1");
        assert_eq!(IntPoly::from_i64s(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(IntPoly::from_i64s(&[0, -2]).to_string(), "-2x");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(RatPoly::new(vec![q(1, 2), q(-3, 4)]).to_string(), "-(3/4)x + 1/2");
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = IntPoly::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(IntPoly::from_i64s(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x^2-x-1) = x^3 - 2x^2 + 1
        let a = RatPoly::from_i64s(&[-1, 1]);
        let b = RatPoly::from_i64s(&[-1, -1, 1]);
        let p = a.mul(&b);
        assert_eq!(p, RatPoly::from_i64s(&[1, 0, -2, 1]));
        let (quot, rem) = p.div_rem(&a);
        assert_eq!(quot, b);
        assert!(rem.is_zero());
        assert_eq!(p.gcd(&a.mul(&a)), a);
        assert_eq!(a.gcd(&b), RatPoly::one());
        assert!(a.divides(&p));
        assert!(!b.divides(&a));
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = RatPoly::new(vec![q(3, 2), q(-7, 1), q(0, 1), q(5, 3), q(2, 1)]);
        let d = RatPoly::new(vec![q(1, 1), q(1, 5), q(3, 1)]);
        let (quot, rem) = p.div_rem(&d);
        assert_eq!(quot.mul(&d).add(&rem), p);
        assert!(rem.degree() < d.degree());
    }

    #[test]
    fn content_and_monic() {
        let p = RatPoly::new(vec![q(2, 3), q(4, 9)]);
        assert_eq!(p.content(), q(2, 9));
        assert_eq!(p.monic(), RatPoly::new(vec![q(3, 2), q(1, 1)]));
    }

    #[test]
    fn derivative_and_eval() {
        let p = IntPoly::from_i64s(&[1, -1, -1, 1]);
        assert_eq!(p.derivative(), IntPoly::from_i64s(&[-1, -2, 3]));
        assert_eq!(p.eval(&BigInt::from(2)), BigInt::from(3));
        assert_eq!(p.to_rat().eval(&q(1, 2)), q(3, 8));
    }

    #[test]
    fn json_coefficients_are_ascending() {
        let p = IntPoly::from_i64s(&[1, -1, -1]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,-1,-1]");
        let r = RatPoly::new(vec![q(1, 2), q(1, 1)]);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"["1/2","1"]"#);
        assert_eq!(serde_json::from_str::<RatPoly>(&s).unwrap(), r);
    }
}
