//! Exact dense linear algebra over ℤ, ℚ, ℚ[x] and GF(2).
//!
//! Vectors multiply matrices from the left throughout: `v · A`.

mod gf2;
mod json;
mod matrix;
mod poly;
mod smith;

pub use gf2::{gf2_mul, GF2Matrix};
pub use json::parse_rational;
pub use matrix::{is_unimodular, solve_rational, IntMatrix, RatMatrix};
pub use poly::{IntPoly, RatPoly};
pub use smith::{conjugator, invariant_factors, minpoly, product, similar};

use num_bigint::BigInt;

pub fn det(a: &IntMatrix) -> BigInt {
    a.det()
}

pub fn trace(a: &IntMatrix) -> BigInt {
    a.trace()
}

pub fn charpoly(a: &IntMatrix) -> IntPoly {
    a.charpoly()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> crate::Result<IntMatrix> {
    a.mul(b)
}

pub fn is_invertible_q(a: &IntMatrix) -> bool {
    a.is_invertible_q()
}
