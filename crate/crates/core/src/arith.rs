//! Exact arithmetic kernel: big rationals, binomials and sparse multivariate
//! polynomials with rational coefficients.
//!
//! Rationals are `num_rational::BigRational`, which is always stored reduced
//! with a positive denominator. Their `Display` form is the canonical `p/q`
//! text (with `/q` omitted when `q = 1`).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Parses a rational in `p/q` or `p` form.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = Rational::from_str(t).map_err(|_| Error::MalformedRational(s.to_string()))?;
    Ok(parsed)
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

pub fn rational_from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Binomial coefficient `k choose a`; zero outside `0 <= a <= k`.
pub fn binomial(k: u64, a: i64) -> BigInt {
    if a < 0 || a as u64 > k {
        return BigInt::zero();
    }
    let a = (a as u64).min(k - a as u64);
    let mut acc = BigInt::one();
    for i in 0..a {
        acc = acc * BigInt::from(k - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Exponent vector of a monomial. All entries are non-negative; Laurent
/// exponents in the single variable `z` are handled by [`crate::laurent`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut e = vec![0; len];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, assuming `other` divides `self`.
    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert!(other.divides(self));
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// True when no variable occurs in both monomials.
    pub fn is_coprime(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

/// Graded reverse-lexicographic comparison with `x1 > x2 > ... > xn`.
pub fn grevlex_cmp(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// Sparse multivariate polynomial over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(ExponentVector::zeros(nvars), c)
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::monomial(ExponentVector::unit(nvars, i), Rational::one())
    }

    pub fn monomial(exp: ExponentVector, c: Rational) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Builds a polynomial from terms, summing duplicates and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::VariableCountMismatch { left: nvars, right: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for a nonzero constant.
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().is_some_and(|e| e.is_constant())
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&ExponentVector::zeros(self.nvars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    /// Terms sorted descending in grevlex order.
    pub fn sorted_terms(&self) -> Vec<(&ExponentVector, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grevlex_cmp(b.0, a.0));
        v
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    pub fn support(&self) -> BTreeSet<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::VariableCountMismatch { left: self.nvars, right: point.len() });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.entries()) {
                for _ in 0..k {
                    t *= x;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Renames variables: `perm[i]` is the new index of variable `i`.
    pub fn permute_variables(&self, perm: &[usize]) -> MultiPoly {
        assert_eq!(perm.len(), self.nvars);
        let terms = self.terms.iter().map(|(e, c)| {
            let mut v = vec![0; self.nvars];
            for (i, &k) in e.entries().iter().enumerate() {
                v[perm[i]] = k;
            }
            (ExponentVector(v), c.clone())
        });
        MultiPoly { nvars: self.nvars, terms: terms.collect() }
    }

    /// Canonical text using the given variable names, terms in descending
    /// grevlex order.
    pub fn to_string_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (name, &k) in names.iter().zip(e.entries()) {
                match k {
                    0 => {}
                    1 => factors.push(name.clone()),
                    _ => factors.push(format!("{name}^{k}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&MultiPoly::default_names(self.nvars)))
    }
}

// Operator forms panic on a variable-count mismatch; use the `try_*`
// methods where the counts are not known to agree.

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

/// `p + q`, failing on a variable-count mismatch.
pub fn poly_add(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    p.try_add(q)
}

/// `p * q`, failing on a variable-count mismatch.
pub fn poly_mul(p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    p.try_mul(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        rational_from_int(n)
    }

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn cancellation_gives_zero() {
        let p = x(1, 0);
        let q = -&p;
        let s = poly_add(&p, &q).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.to_string(), "0");
    }

    #[test]
    fn add_examples() {
        let p = &x(2, 0) + &MultiPoly::one(2);
        let s = poly_add(&p, &x(2, 1)).unwrap();
        assert_eq!(s.to_string(), "x1 + x2 + 1");

        let a = MultiPoly::var(1, 0).pow(2).scale(&r(2));
        let b = MultiPoly::var(1, 0).pow(2).scale(&r(3));
        assert_eq!(poly_add(&a, &b).unwrap().to_string(), "5*x1^2");
    }

    #[test]
    fn mul_examples() {
        let p = &x(2, 0) + &x(2, 1);
        let q = &x(2, 0) - &x(2, 1);
        assert_eq!(poly_mul(&p, &q).unwrap().to_string(), "x1^2 - x2^2");
        assert_eq!(poly_mul(&p, &MultiPoly::one(2)).unwrap(), p);
        let s = &MultiPoly::one(1) + &x(1, 0);
        assert_eq!(poly_mul(&s, &s).unwrap().to_string(), "x1^2 + 2*x1 + 1");
    }

    #[test]
    fn mismatch_is_an_error() {
        assert_eq!(poly_add(&x(1, 0), &x(2, 0)), Err(Error::VariableCountMismatch { left: 1, right: 2 }));
        assert!(poly_mul(&x(3, 0), &x(2, 0)).is_err());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(7, 0), BigInt::one());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(parse_rational("6/4").unwrap().to_string(), "3/2");
        assert_eq!(parse_rational("-8/2").unwrap().to_string(), "-4");
        assert_eq!(parse_rational(" 0/5 ").unwrap().to_string(), "0");
        assert_eq!(parse_rational("2/-3").unwrap().to_string(), "-2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn rational_coefficients_print_canonically() {
        let p = MultiPoly::var(2, 1).scale(&parse_rational("-1/2").unwrap());
        let q = &p + &MultiPoly::constant(2, parse_rational("3/4").unwrap());
        assert_eq!(q.to_string(), "-1/2*x2 + 3/4");
    }

    #[test]
    fn grevlex_ordering() {
        let e = |v: Vec<u32>| ExponentVector::new(v);
        // degree first
        assert_eq!(grevlex_cmp(&e(vec![0, 0, 2]), &e(vec![1, 0, 0])), Ordering::Greater);
        // x1*x3 < x2^2 in grevlex
        assert_eq!(grevlex_cmp(&e(vec![1, 0, 1]), &e(vec![0, 2, 0])), Ordering::Less);
        assert_eq!(grevlex_cmp(&e(vec![2, 0, 0]), &e(vec![0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn evaluate_and_support() {
        let p = &(&(&x(3, 0) * &x(3, 1)) * &x(3, 2)) - &MultiPoly::one(3);
        let support: Vec<_> = p.support().into_iter().map(|e| e.entries().to_vec()).collect();
        assert_eq!(support, vec![vec![0, 0, 0], vec![1, 1, 1]]);
        assert_eq!(p.evaluate(&[r(2), r(3), r(1)]).unwrap(), r(5));
    }

    fn small_poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, nvars), -4i64..5, 1i64..4), 0..5).prop_map(move |terms| {
            MultiPoly::from_terms(
                nvars,
                terms
                    .into_iter()
                    .map(|(e, p, q)| (ExponentVector::new(e), Rational::new(BigInt::from(p), BigInt::from(q)))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in small_poly(2), q in small_poly(2), s in small_poly(2)) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) + &s, &p + &(&q + &s));
            prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
            prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
            prop_assert!((&p - &p).is_zero());
            for (_, c) in (&p * &q).terms() {
                prop_assert!(!c.is_zero());
            }
        }

        #[test]
        fn normalization_is_idempotent(p in -50i64..50, q in 1i64..50) {
            let once = Rational::new(BigInt::from(p), BigInt::from(q));
            let twice = Rational::new(once.numer().clone(), once.denom().clone());
            prop_assert_eq!(&once, &twice);
            prop_assert!(once.denom() > &BigInt::zero());
            prop_assert_eq!(parse_rational(&once.to_string()).unwrap(), once);
        }

        #[test]
        fn binomial_symmetry(k in 0u64..30, a in 0i64..30) {
            prop_assume!(a as u64 <= k);
            prop_assert_eq!(binomial(k, a), binomial(k, k as i64 - a));
        }
    }
}
