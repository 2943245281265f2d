//! Small exact linear-algebra helpers for the hull code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// Determinant of a square integer matrix by Bareiss fraction-free
/// elimination. The empty matrix has determinant 1.
pub(crate) fn det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Cofactor vector of an `(r-1) x r` matrix: the `n` with
/// `det([rows; y]) = n . y` for every `y`.
pub(crate) fn cofactor_normal(rows: &[Vec<BigInt>], r: usize) -> Vec<BigInt> {
    debug_assert_eq!(rows.len() + 1, r);
    (0..r)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let m = det(minor);
            // expansion along the last row (index r-1)
            if (r - 1 + j).is_multiple_of(2) {
                m
            } else {
                -m
            }
        })
        .collect()
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Divides a nonzero integer vector (and an accompanying offset) by the gcd
/// of all entries.
pub(crate) fn primitive(normal: &[BigInt], offset: &BigInt) -> (Vec<BigInt>, BigInt) {
    let mut g = offset.abs();
    for v in normal {
        g = g.gcd(v);
    }
    if g.is_zero() || g.is_one() {
        return (normal.to_vec(), offset.clone());
    }
    (normal.iter().map(|v| v / &g).collect(), offset / &g)
}

/// Incremental row-echelon basis over the rationals, used to detect affine
/// independence and to pick chart coordinates.
#[derive(Default)]
pub(crate) struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub(crate) fn new() -> Self {
        EchelonBasis { rows: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns, sorted ascending.
    pub(crate) fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|(c, _)| *c).collect();
        p.sort_unstable();
        p
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = &v[*pivot] / &row[*pivot];
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &factor * y;
            }
        }
        v
    }

    /// Adds `v` if it is independent of the current rows; returns whether it
    /// was added.
    pub(crate) fn insert(&mut self, v: &[Rational]) -> bool {
        let reduced = self.reduce(v);
        match reduced.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, reduced));
                true
            }
            None => false,
        }
    }
}
