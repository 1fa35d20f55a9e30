//! Brute-force oracles shared by the integration suites. Nothing here calls
//! into the algebra module being checked.
#![allow(dead_code)]

use petrie_core::perm::Permutation;
use rand::Rng;

/// Ascending `i64` coefficients.
pub type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += sign * y;
    }
    trim(out)
}

fn laplace(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Vec::new();
    for c in 0..n {
        if m[0][c].is_empty() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, p)| p.clone()).collect()).collect();
        let term = poly_mul(&m[0][c], &laplace(&minor));
        acc = poly_add(&acc, &term, if c % 2 == 0 { 1 } else { -1 });
    }
    acc
}

/// `det(xI - A)` by cofactor expansion over polynomial entries.
pub fn cofactor_charpoly(a: &[Vec<i64>]) -> Poly {
    let n = a.len();
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| trim(if i == j { vec![-a[i][j], 1] } else { vec![-a[i][j]] })).collect())
        .collect();
    laplace(&m)
}

/// Direct transcription of the interval-transition rule.
pub fn petrie_rows(images: &[usize]) -> Vec<Vec<i64>> {
    let d = images.len() - 1;
    (0..d)
        .map(|i| {
            let (lo, hi) = (images[i].min(images[i + 1]), images[i].max(images[i + 1]));
            (1..=d).map(|c| i64::from(lo <= c && c < hi)).collect()
        })
        .collect()
}

pub fn random_01(rng: &mut impl Rng, dim: usize) -> Vec<Vec<i64>> {
    (0..dim).map(|_| (0..dim).map(|_| i64::from(rng.gen_bool(0.5))).collect()).collect()
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    Permutation::new(v).unwrap()
}

/// Every permutation of `values` (Heap's algorithm, unordered).
pub fn all_arrangements(values: &[usize]) -> Vec<Vec<usize>> {
    fn go(k: usize, v: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(v.clone());
            return;
        }
        for i in 0..k {
            go(k - 1, v, out);
            let j = if k % 2 == 0 { i } else { 0 };
            v.swap(j, k - 1);
        }
    }
    let mut out = Vec::new();
    let mut v = values.to_vec();
    go(v.len(), &mut v, &mut out);
    out
}
