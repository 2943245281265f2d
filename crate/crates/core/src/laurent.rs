//! Doubly monic Laurent polynomials `f(z) = z^{-m} + ... + z^n`, the constant
//! terms of their powers, and the symmetric polynomials `P_k` obtained by
//! writing `f(z) = z^{-m} prod_i (1 + r_i z)`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::arith::{binomial, ExponentVector, MultiPoly, Rational};
use crate::error::{Error, Result};

/// A Laurent polynomial in `z` whose coefficients are polynomials over a
/// fixed variable set (constants when that set is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    coeffs: BTreeMap<i64, MultiPoly>,
}

impl LaurentPoly {
    pub fn new(nvars: usize) -> Self {
        LaurentPoly { nvars, coeffs: BTreeMap::new() }
    }

    pub fn from_coefficients(nvars: usize, coeffs: impl IntoIterator<Item = (i64, MultiPoly)>) -> Result<Self> {
        let mut f = LaurentPoly::new(nvars);
        for (e, c) in coeffs {
            if c.nvars() != nvars {
                return Err(Error::VariableCountMismatch { left: nvars, right: c.nvars() });
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    /// The symbolic doubly monic polynomial with one coefficient variable per
    /// interior exponent: `a_{-m+1}, ..., a_{n-1}` in that order.
    pub fn generic_doubly_monic(m: usize, n: usize) -> Self {
        let exps: Vec<i64> = (-(m as i64) + 1..n as i64).collect();
        Self::sparse_doubly_monic(m, n, &exps)
    }

    /// `z^{-m} + sum_j v_j z^{e_j} + z^n` with one variable per listed
    /// exponent.
    pub fn sparse_doubly_monic(m: usize, n: usize, exponents: &[i64]) -> Self {
        let nvars = exponents.len();
        let mut f = LaurentPoly::new(nvars);
        f.add_term(-(m as i64), MultiPoly::one(nvars));
        f.add_term(n as i64, MultiPoly::one(nvars));
        for (i, &e) in exponents.iter().enumerate() {
            f.add_term(e, MultiPoly::var(nvars, i));
        }
        f
    }

    /// A numeric doubly monic polynomial with interior coefficients
    /// `a_{-m+1}, ..., a_{n-1}`.
    pub fn numeric_doubly_monic(m: usize, n: usize, interior: &[Rational]) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument("m and n must be positive".into()));
        }
        if interior.len() != m + n - 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} interior coefficients, got {}",
                m + n - 1,
                interior.len()
            )));
        }
        let mut f = LaurentPoly::new(0);
        f.add_term(-(m as i64), MultiPoly::one(0));
        f.add_term(n as i64, MultiPoly::one(0));
        for (i, a) in interior.iter().enumerate() {
            f.add_term(i as i64 - m as i64 + 1, MultiPoly::constant(0, a.clone()));
        }
        Ok(f)
    }

    fn add_term(&mut self, e: i64, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(|| MultiPoly::zero(c.nvars()));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coefficient(&self, e: i64) -> MultiPoly {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    pub fn constant_term(&self) -> MultiPoly {
        self.coefficient(0)
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn high_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Both extreme coefficients equal 1.
    pub fn is_doubly_monic(&self) -> bool {
        let one = MultiPoly::one(self.nvars);
        match (self.coeffs.first_key_value(), self.coeffs.last_key_value()) {
            (Some((_, lo)), Some((_, hi))) => lo == &one && hi == &one,
            _ => false,
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch { left: self.nvars, right: other.nvars });
        }
        let mut out = LaurentPoly::new(self.nvars);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        Ok(out)
    }

    /// Constant terms of `f^1, ..., f^count`.
    pub fn power_constant_terms(&self, count: usize) -> Vec<MultiPoly> {
        let mut out = Vec::with_capacity(count);
        let mut power = self.clone();
        for k in 1..=count {
            out.push(power.constant_term());
            if k < count {
                power = power.mul(self).expect("same variable set");
            }
        }
        out
    }
}

/// Names of the coefficient variables `a_{-m+1}, ..., a_{n-1}`.
pub fn coefficient_names(exponents: impl IntoIterator<Item = i64>, letter: &str) -> Vec<String> {
    exponents.into_iter().map(|e| format!("{letter}_{e}")).collect()
}

pub fn generic_variable_names(m: usize, n: usize) -> Vec<String> {
    coefficient_names(-(m as i64) + 1..n as i64, "a")
}

/// `[[f^1]], ..., [[f^K]]` for the generic doubly monic `f` of bidegree
/// `(m, n)`, as polynomials in `a_{-m+1}, ..., a_{n-1}`.
pub fn power_constant_terms(m: usize, n: usize, count: usize) -> Result<Vec<MultiPoly>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("m and n must be positive".into()));
    }
    Ok(LaurentPoly::generic_doubly_monic(m, n).power_constant_terms(count))
}

/// Numeric constant terms of `f^1, ..., f^K` for `f` with the given interior
/// coefficients.
pub fn constant_terms_numeric(interior: &[Rational], m: usize, n: usize, count: usize) -> Result<Vec<Rational>> {
    let f = LaurentPoly::numeric_doubly_monic(m, n, interior)?;
    Ok(f.power_constant_terms(count).into_iter().map(|p| p.constant_term()).collect())
}

fn check_root_spec(m: usize, big_n: usize, k: usize) -> Result<()> {
    if m == 0 || m >= big_n {
        return Err(Error::InvalidArgument(format!("need 0 < m < N, got m={m}, N={big_n}")));
    }
    if k == 0 || k >= big_n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= N-1, got k={k}, N={big_n}")));
    }
    Ok(())
}

/// Lattice points of `k * Delta_{m,N}`: `a in [0,k]^N` with `sum a = mk`, in
/// lexicographic order.
pub fn scaled_hypersimplex_lattice_points(m: usize, big_n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: usize, remaining: usize, k: usize, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // remaining must fit in the coordinates still to be chosen
        for a in 0..=k.min(remaining) {
            if remaining - a > (left - 1) * k {
                continue;
            }
            prefix.push(a as u32);
            rec(prefix, left - 1, remaining - a, k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(big_n), big_n, m * k, k, &mut out);
    out
}

/// `P_k(r_1, ..., r_N)`: the coefficient of `z^{mk}` in `prod (1 + r_i z)^k`,
/// assembled from the product-of-binomials formula over the lattice points of
/// `k * Delta_{m,N}`.
pub fn pk_polynomial(m: usize, big_n: usize, k: usize) -> Result<MultiPoly> {
    check_root_spec(m, big_n, k)?;
    let terms = scaled_hypersimplex_lattice_points(m, big_n, k).into_iter().map(|a| {
        let coeff = a.iter().fold(num_bigint::BigInt::one(), |acc, &ai| acc * binomial(k as u64, ai as i64));
        (ExponentVector::new(a), Rational::from_integer(coeff))
    });
    MultiPoly::from_terms(big_n, terms)
}

/// `P_k` by multiplying out `prod (1 + r_i z)^k` and reading off `z^{mk}`.
pub fn pk_expand_oracle(m: usize, big_n: usize, k: usize) -> Result<MultiPoly> {
    check_root_spec(m, big_n, k)?;
    let mut product = LaurentPoly::from_coefficients(big_n, [(0, MultiPoly::one(big_n))])?;
    for i in 0..big_n {
        let factor =
            LaurentPoly::from_coefficients(big_n, [(0, MultiPoly::one(big_n)), (1, MultiPoly::var(big_n, i))])?;
        for _ in 0..k {
            product = product.mul(&factor)?;
        }
    }
    Ok(product.coefficient((m * k) as i64))
}

/// Exponent vectors with nonzero coefficient.
pub fn newton_support(p: &MultiPoly) -> BTreeSet<ExponentVector> {
    p.support()
}

/// Interior coefficients `a_{-m+1}, ..., a_{n-1}` of
/// `z^{-m} prod_{i=1}^{N} (1 + r_i z)`, with `N = m + n`. These are the
/// elementary symmetric polynomials `e_1(r), ..., e_{N-1}(r)`; the extreme
/// coefficients are `1` and `prod r_i`.
pub fn coefficients_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut elem = vec![Rational::one()];
    for r in roots {
        let mut next = vec![Rational::zero(); elem.len() + 1];
        for (j, e) in elem.iter().enumerate() {
            next[j] += e;
            next[j + 1] += e * r;
        }
        elem = next;
    }
    let len = elem.len();
    elem[1..len - 1].to_vec()
}

/// A `d`-sparse family: `d` divides `m + n` and only exponents congruent to
/// `n` modulo `d` carry coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SparseFamilySpec {
    m: usize,
    n: usize,
    d: usize,
}

impl SparseFamilySpec {
    pub fn new(m: usize, n: usize, d: usize) -> Result<Self> {
        if m == 0 || n == 0 || d == 0 {
            return Err(Error::InvalidArgument("m, n and d must be positive".into()));
        }
        if !(m + n).is_multiple_of(d) {
            return Err(Error::NotDivisible { d: d as u64, n: (m + n) as u64 });
        }
        Ok(SparseFamilySpec { m, n, d })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Interior exponents congruent to `n` modulo `d`, increasing.
    pub fn free_exponents(&self) -> Vec<i64> {
        let (m, n, d) = (self.m as i64, self.n as i64, self.d as i64);
        (-m + 1..n).filter(|e| (e - n).rem_euclid(d) == 0).collect()
    }

    pub fn variable_names(&self) -> Vec<String> {
        coefficient_names(self.free_exponents(), "b")
    }
}

/// Constant-term generators of a sparse family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseGenerators {
    pub spec: SparseFamilySpec,
    /// Exponents carrying the `b`-variables, in variable order.
    pub exponents: Vec<i64>,
    /// `(k, [[f^k]])` for every `k` in `1..N` with a nonzero constant term.
    pub generators: Vec<(usize, MultiPoly)>,
    /// The `k` whose constant term vanishes identically.
    pub dropped: Vec<usize>,
}

impl SparseGenerators {
    pub fn polynomials(&self) -> Vec<MultiPoly> {
        self.generators.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }
}

/// `[[f^k]]` for `k = 1, ..., N-1` over the `d`-sparse family, with the
/// identically zero ones dropped and recorded.
pub fn sparse_generators(spec: SparseFamilySpec) -> SparseGenerators {
    let exponents = spec.free_exponents();
    let f = LaurentPoly::sparse_doubly_monic(spec.m, spec.n, &exponents);
    let big_n = spec.m + spec.n;
    let mut generators = Vec::new();
    let mut dropped = Vec::new();
    for (i, p) in f.power_constant_terms(big_n - 1).into_iter().enumerate() {
        if p.is_zero() {
            dropped.push(i + 1);
        } else {
            generators.push((i + 1, p));
        }
    }
    SparseGenerators { spec, exponents, generators, dropped }
}
