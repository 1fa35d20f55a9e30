//! Invariant factors of `xI - A` over ℚ[x] by Smith reduction, and the
//! similarity test built on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use super::poly::RatPoly;
use crate::error::{Error, Result};

/// The non-unit invariant factors of `xI - A`, monic, each dividing the next.
pub fn invariant_factors(a: &IntMatrix) -> Vec<RatPoly> {
    let n = a.dim();
    let mut m: Vec<Vec<RatPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -BigRational::from_integer(a.get(i, j).clone());
                    if i == j {
                        RatPoly::new(vec![c, BigRational::one()])
                    } else {
                        RatPoly::new(vec![c])
                    }
                })
                .collect()
        })
        .collect();

    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let Some((pi, pj)) = min_degree_entry(&m, t) else {
                // remaining block is zero; cannot happen for xI - A
                diag.extend((t..n).map(|_| RatPoly::zero()));
                return finish(diag);
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..n {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, r) = m[i][t].div_rem(&pivot);
                for j in t..n {
                    let v = m[i][j].sub(&q.mul(&m[t][j]));
                    m[i][j] = v;
                }
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, r) = m[t][j].div_rem(&pivot);
                for i in t..n {
                    let v = m[i][j].sub(&q.mul(&m[i][t]));
                    m[i][j] = v;
                }
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the whole trailing block
            let offender = (t + 1..n).find(|&i| (t + 1..n).any(|j| !pivot.divides(&m[i][j])));
            match offender {
                Some(i) => {
                    for j in t..n {
                        let v = m[t][j].add(&m[i][j]);
                        m[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].monic());
    }
    finish(diag)
}

fn finish(diag: Vec<RatPoly>) -> Vec<RatPoly> {
    diag.into_iter().filter(|p| p.is_zero() || p.degree() > Some(0)).collect()
}

fn min_degree_entry(m: &[Vec<RatPoly>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, p) in row.iter().enumerate().skip(t) {
            if let Some(d) = p.degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                    if d == 0 {
                        return Some((i, j));
                    }
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// The minimal polynomial over ℚ (the largest invariant factor).
pub fn minpoly(a: &IntMatrix) -> RatPoly {
    invariant_factors(a).pop().unwrap_or_else(RatPoly::one)
}

/// Similarity over ℚ. Characteristic polynomials are compared first; a
/// squarefree characteristic polynomial makes the matrices cyclic and so
/// decides similarity on its own, otherwise the full invariant-factor chains
/// are compared.
pub fn similar(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    if a == b {
        return Ok(true);
    }
    let ca = a.charpoly();
    if ca != b.charpoly() {
        return Ok(false);
    }
    let r = ca.to_rat();
    if r.gcd(&r.derivative()).degree() == Some(0) {
        return Ok(true);
    }
    Ok(invariant_factors(a) == invariant_factors(b))
}

/// An invertible `H` with `B·H = H·A`, or `None` when `A` and `B` are not
/// similar. Solves the linear system for `H` and takes a pseudo-random
/// integer combination of its solution basis until one is invertible.
pub fn conjugator(a: &IntMatrix, b: &IntMatrix) -> Result<Option<RatMatrix>> {
    if !similar(a, b)? {
        return Ok(None);
    }
    let d = a.dim();
    let mut sys = RatMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let v = sys.get(i * d + j, k * d + j) + BigRational::from_integer(b.get(i, k).clone());
                sys.set(i * d + j, k * d + j, v);
                let v = sys.get(i * d + j, i * d + k) - BigRational::from_integer(a.get(k, j).clone());
                sys.set(i * d + j, i * d + k, v);
            }
        }
    }
    let basis = sys.nullspace();
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..64 {
        let mut h = vec![BigRational::zero(); d * d];
        for v in &basis {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            let c = BigRational::from_integer(BigInt::from((state >> 33) % 19) - 9);
            for (x, y) in h.iter_mut().zip(v) {
                *x += &c * y;
            }
        }
        let h = RatMatrix::from_rows(h.chunks(d).map(<[BigRational]>::to_vec).collect())?;
        if !h.det()?.is_zero() {
            return Ok(Some(h));
        }
    }
    Err(Error::Unverified("no invertible solution found for a similar pair".into()))
}

/// Product of a list of polynomials.
pub fn product(polys: &[RatPoly]) -> RatPoly {
    polys.iter().fold(RatPoly::one(), |acc, p| acc.mul(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugator_solves_the_intertwining_equation() {
        let a = IntMatrix::from_rows(&[vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 0]]).unwrap();
        let u = IntMatrix::from_rows(&[vec![1, 2, 0], vec![0, 1, 0], vec![1, 1, 1]]).unwrap();
        let ui = u.to_rat().inverse().unwrap().to_int().unwrap();
        let b = u.mul(&a).unwrap().mul(&ui).unwrap();
        let h = conjugator(&a, &b).unwrap().unwrap();
        assert_eq!(b.to_rat().mul(&h).unwrap(), h.mul(&a.to_rat()).unwrap());
        assert!(!h.det().unwrap().is_zero());
        let c = IntMatrix::identity(3);
        assert!(conjugator(&a, &c).unwrap().is_none());
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c)
    }

    #[test]
    fn identity_has_repeated_linear_factors() {
        assert_eq!(invariant_factors(&IntMatrix::identity(2)), vec![p(&[-1, 1]), p(&[-1, 1])]);
        assert_eq!(minpoly(&IntMatrix::identity(3)), p(&[-1, 1]));
    }

    #[test]
    fn companion_matrix_is_cyclic() {
        // companion of x^2 - x - 1 in row convention
        let c = m(&[&[0, 1], &[1, 1]]);
        assert_eq!(invariant_factors(&c), vec![p(&[-1, -1, 1])]);
    }

    #[test]
    fn jordan_blocks_are_distinguished() {
        let j2 = m(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 2]]);
        let d = m(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(j2.charpoly(), d.charpoly());
        assert!(!similar(&j2, &d).unwrap());
        assert_eq!(invariant_factors(&j2), vec![p(&[-2, 1]), p(&[4, -4, 1])]);
        let j2t = j2.transpose();
        assert!(similar(&j2, &j2t).unwrap());
    }

    #[test]
    fn product_equals_charpoly() {
        let a = m(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[3, 0, 0, 2]]);
        let f = invariant_factors(&a);
        assert_eq!(product(&f), a.charpoly().to_rat());
        for w in f.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
    }

    #[test]
    fn dimension_mismatch() {
        assert!(similar(&IntMatrix::identity(2), &IntMatrix::identity(3)).is_err());
    }
}
