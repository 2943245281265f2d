//! Bijection between pairs `(w, x)` and circular permutations of
//! `{0, ..., dn-1}` with `c` cyclic descents fixed under adding `n`.
//!
//! A pair consists of a word `w = (0, w_1, ..., w_{n-1})` with the tail a
//! permutation of `1..n-1`, and a vector `x` in `{0, ..., d-1}^n`. Both are
//! read `n`-periodically. The statistic `c` is the number of cyclic descents
//! of `w` plus `sum(x)`.
//!
//! The forward map builds the increasing sequence
//!
//! ```text
//! p_0 = 0,  p_i = n * x_i + min { t > p_{i-1} : t = w_i (mod n) }
//! ```
//!
//! and reduces `p_0, ..., p_{dn-1}` modulo `dn`. The inverse lifts a circular
//! word back to `p` and reads off `w_i = p_i mod n` and `x_i` from the number
//! of multiples of `n` in `(p_{i-1}, p_i]`.

use std::fmt;

use num_integer::Integer;

use crate::combinatorics::{next_permutation, CircularPermutation};
use crate::error::{Error, Result};

/// A pair `(w, x)` with its parameters `n` and `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairWX {
    n: usize,
    d: usize,
    w: Vec<usize>,
    x: Vec<usize>,
}

impl PairWX {
    pub fn new(n: usize, d: usize, w: Vec<usize>, x: Vec<usize>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidArgument("n and d must be positive".into()));
        }
        if w.len() != n || x.len() != n {
            return Err(Error::InvalidArgument(format!(
                "w and x must have length n = {n}, got {} and {}",
                w.len(),
                x.len()
            )));
        }
        if w[0] != 0 {
            return Err(Error::InvalidArgument("w must start with 0".into()));
        }
        let mut seen = vec![false; n];
        for &l in &w {
            if l >= n || seen[l] {
                return Err(Error::InvalidArgument(format!("w is not a permutation of 0..{n}")));
            }
            seen[l] = true;
        }
        if let Some(&bad) = x.iter().find(|&&v| v >= d) {
            return Err(Error::InvalidArgument(format!("x entry {bad} outside [0, {}]", d - 1)));
        }
        let pair = PairWX { n, d, w, x };
        let c = pair.c();
        if c == 0 || c >= d * n {
            return Err(Error::InvalidArgument(format!("need 0 < c < dn, got c = {c}")));
        }
        Ok(pair)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn w(&self) -> &[usize] {
        &self.w
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    /// Number of cyclic descents `k` of `w`. A one-letter word wraps onto
    /// itself and counts as one descent.
    pub fn descent_count(&self) -> usize {
        (1..=self.n).filter(|&i| self.w_at(i - 1) >= self.w_at(i)).count()
    }

    pub fn c(&self) -> usize {
        self.descent_count() + self.x.iter().sum::<usize>()
    }

    fn w_at(&self, i: usize) -> usize {
        self.w[i % self.n]
    }

    // x is indexed from 1
    fn x_at(&self, i: usize) -> usize {
        self.x[(i - 1) % self.n]
    }
}

impl fmt::Display for PairWX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "n={} d={} w={} x={}", self.n, self.d, join(&self.w), join(&self.x))
    }
}

/// A prefix of the strictly increasing sequence `p` attached to a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSequence {
    pub n: usize,
    pub c: usize,
    pub terms: Vec<u64>,
}

impl PSequence {
    /// The terms reduced modulo `modulus`.
    pub fn reduced(&self, modulus: u64) -> Vec<u64> {
        self.terms.iter().map(|p| p % modulus).collect()
    }
}

/// The first `count` terms of `p`.
pub fn build_p_sequence(pair: &PairWX, count: usize) -> PSequence {
    let n = pair.n as u64;
    let mut terms = Vec::with_capacity(count);
    let mut prev = 0u64;
    for i in 0..count {
        if i == 0 {
            terms.push(0);
            continue;
        }
        let target = pair.w_at(i) as u64;
        // smallest t > prev with t = target (mod n)
        let base = prev - prev % n + target;
        let t = if base > prev { base } else { base + n };
        prev = t + n * pair.x_at(i) as u64;
        terms.push(prev);
    }
    PSequence { n: pair.n, c: pair.c(), terms }
}

/// Maps a pair to its circular permutation of `{0, ..., dn-1}`.
pub fn forward(pair: &PairWX) -> Result<CircularPermutation> {
    let c = pair.c();
    let g = c.gcd(&pair.d);
    if g != 1 {
        return Err(Error::NotCoprime { c: c as u64, d: pair.d as u64, gcd: g as u64 });
    }
    let dn = pair.d * pair.n;
    let p = build_p_sequence(pair, dn);
    let word = p.reduced(dn as u64).into_iter().map(|v| v as usize).collect();
    CircularPermutation::from_word(word)
}

/// `a^{-1} mod m` by the extended Euclidean algorithm; `0` when `m = 1`.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i64).extended_gcd(&(m as i64));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i64) as u64)
}

/// The recovered pair together with the diagnostics of the inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preimage {
    pub pair: PairWX,
    /// Number of cyclic descents of the input.
    pub c: usize,
    /// `c' = c^{-1} mod d`.
    pub c_inverse: u64,
    /// Adding `n` to every letter rotates the word by `c' * n` positions.
    pub rotation: usize,
}

/// Recovers the pair `(w, x)` whose forward image is `word`.
pub fn inverse_bijection(word: &CircularPermutation, n: usize, d: usize) -> Result<Preimage> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument("n and d must be positive".into()));
    }
    let dn = d * n;
    let letters = word.word();
    if letters.len() != dn {
        return Err(Error::InvalidArgument(format!("expected a word on {dn} letters, got {}", letters.len())));
    }
    if !word.is_fixed_by_shift(n) {
        return Err(Error::NotSymmetric { shift: n });
    }
    let c = word.cyclic_descent_count();
    let g = c.gcd(&d);
    if g != 1 {
        return Err(Error::NotCoprime { c: c as u64, d: d as u64, gcd: g as u64 });
    }
    let c_inverse = inverse_mod(c as u64, d as u64).expect("c is a unit mod d");
    let rotation = (c_inverse as usize * n) % dn;
    for i in 0..dn {
        if letters[(i + rotation) % dn] != (letters[i] + n) % dn {
            return Err(Error::NotSymmetric { shift: n });
        }
    }

    // lift: p_i is the smallest integer > p_{i-1} congruent to letters[i]
    let dn64 = dn as u64;
    let mut p = vec![0u64; n + 1];
    for i in 1..=n {
        let target = letters[i % dn] as u64;
        let prev = p[i - 1];
        let base = prev - prev % dn64 + target;
        p[i] = if base > prev { base } else { base + dn64 };
    }
    if p[n] != (c * n) as u64 {
        return Err(Error::NotInImage(format!("p_n = {}, expected c*n = {}", p[n], c * n)));
    }

    let n64 = n as u64;
    let w: Vec<usize> = p[..n].iter().map(|v| (v % n64) as usize).collect();
    let mut x = Vec::with_capacity(n);
    for i in 1..=n {
        let multiples = p[i] / n64 - p[i - 1] / n64;
        let wrap = u64::from(w[(i - 1) % n] >= w[i % n]);
        let Some(xi) = multiples.checked_sub(wrap) else {
            return Err(Error::NotInImage(format!("negative x_{i}")));
        };
        if xi >= d as u64 {
            return Err(Error::NotInImage(format!("x_{i} = {xi} outside [0, {}]", d - 1)));
        }
        x.push(xi as usize);
    }
    let pair = PairWX::new(n, d, w, x).map_err(|e| Error::NotInImage(e.to_string()))?;
    Ok(Preimage { pair, c, c_inverse, rotation })
}

// odometer over {0..d-1}^n, last coordinate fastest
fn advance(x: &mut [usize], d: usize) -> bool {
    for i in (0..x.len()).rev() {
        x[i] += 1;
        if x[i] < d {
            return true;
        }
        x[i] = 0;
    }
    false
}

/// All valid pairs for the given `n` and `d`, in lexicographic order of
/// `(w, x)`.
pub fn all_pairs(n: usize, d: usize) -> Vec<PairWX> {
    let mut out = Vec::new();
    if n == 0 || d == 0 {
        return out;
    }
    let mut tail: Vec<usize> = (1..n).collect();
    loop {
        let mut w = vec![0];
        w.extend_from_slice(&tail);
        let mut x = vec![0usize; n];
        loop {
            if let Ok(pair) = PairWX::new(n, d, w.clone(), x.clone()) {
                out.push(pair);
            }
            if !advance(&mut x, d) {
                break;
            }
        }
        if !next_permutation(&mut tail) {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::list_fixed_circular;

    fn worked_pair() -> PairWX {
        PairWX::new(6, 3, vec![0, 1, 4, 3, 5, 2], vec![0, 1, 0, 0, 2, 1]).unwrap()
    }

    #[test]
    fn worked_p_sequence() {
        let p = build_p_sequence(&worked_pair(), 12);
        assert_eq!(p.terms, vec![0, 1, 10, 15, 17, 32, 42, 43, 52, 57, 59, 74]);
        assert_eq!(p.c, 7);
        assert_eq!(p.terms[6], 7 * 6);
    }

    #[test]
    fn small_p_sequence() {
        let pair = PairWX::new(2, 1, vec![0, 1], vec![0, 0]).unwrap();
        assert_eq!(build_p_sequence(&pair, 4).terms, vec![0, 1, 2, 3]);
        assert_eq!(pair.c(), 1);
    }

    #[test]
    fn forward_worked_example() {
        let image = forward(&worked_pair()).unwrap();
        assert_eq!(image.n(), 17);
        assert_eq!(&image.word()[..12], &[0, 1, 10, 15, 17, 14, 6, 7, 16, 3, 5, 2]);
        assert_eq!(image.cyclic_descent_count(), 7);
        assert!(image.is_fixed_by_shift(6));
    }

    #[test]
    fn forward_trivial() {
        let pair = PairWX::new(2, 1, vec![0, 1], vec![0, 0]).unwrap();
        assert_eq!(forward(&pair).unwrap().word(), &[0, 1]);
    }

    #[test]
    fn forward_rejects_non_coprime() {
        let pair = PairWX::new(3, 2, vec![0, 1, 2], vec![1, 0, 0]).unwrap();
        assert_eq!(pair.c(), 2);
        assert!(matches!(forward(&pair), Err(Error::NotCoprime { c: 2, d: 2, gcd: 2 })));

        let pair = PairWX::new(3, 2, vec![0, 1, 2], vec![1, 1, 0]).unwrap();
        let image = forward(&pair).unwrap();
        assert_eq!(image.cyclic_descent_count(), 3);
        assert!(image.is_fixed_by_shift(3));
    }

    #[test]
    fn inverse_worked_example() {
        let image = forward(&worked_pair()).unwrap();
        let pre = inverse_bijection(&image, 6, 3).unwrap();
        assert_eq!(pre.pair, worked_pair());
        assert_eq!(pre.c, 7);
        assert_eq!(pre.c_inverse, 1);
        assert_eq!(pre.rotation, 6);

        let trivial = CircularPermutation::parse("0,1").unwrap();
        let pre = inverse_bijection(&trivial, 2, 1).unwrap();
        assert_eq!(pre.pair.w(), &[0, 1]);
        assert_eq!(pre.pair.x(), &[0, 0]);
    }

    #[test]
    fn inverse_of_listed_words() {
        for word in list_fixed_circular(5, 2, 2).unwrap() {
            let pre = inverse_bijection(&word, 3, 2).unwrap();
            assert_eq!(pre.c, 3);
            assert_eq!(forward(&pre.pair).unwrap(), word);
        }
    }

    #[test]
    fn inverse_rejects_bad_input() {
        let asym = CircularPermutation::parse("0,2,1,3").unwrap();
        assert!(matches!(inverse_bijection(&asym, 2, 2), Err(Error::NotSymmetric { shift: 2 })));
        // symmetric words always have c coprime to d
        let odd = CircularPermutation::parse("0,3,2,1").unwrap();
        assert!(odd.is_fixed_by_shift(2));
        let pre = inverse_bijection(&odd, 2, 2).unwrap();
        assert_eq!(pre.c, 3);
        assert_eq!(forward(&pre.pair).unwrap(), odd);
        let short = CircularPermutation::parse("0,1,2").unwrap();
        assert!(inverse_bijection(&short, 2, 2).is_err());
    }

    #[test]
    fn pair_validation() {
        assert!(PairWX::new(3, 2, vec![1, 0, 2], vec![0, 0, 0]).is_err());
        assert!(PairWX::new(3, 2, vec![0, 1, 1], vec![0, 0, 0]).is_err());
        assert!(PairWX::new(3, 2, vec![0, 1, 2], vec![0, 2, 0]).is_err());
        // n = 1, x_1 = d - 1 gives c = dn
        assert!(PairWX::new(1, 2, vec![0], vec![1]).is_err());
        assert!(PairWX::new(1, 2, vec![0], vec![0]).is_ok());
    }

    #[test]
    fn inverse_mod_examples() {
        assert_eq!(inverse_mod(7, 3), Some(1));
        assert_eq!(inverse_mod(2, 3), Some(2));
        assert_eq!(inverse_mod(3, 1), Some(0));
        assert_eq!(inverse_mod(2, 4), None);
    }

    #[test]
    fn p_sequence_growth_and_multiples() {
        for n in 1..=4 {
            for d in 1..=3 {
                for pair in all_pairs(n, d) {
                    let p = build_p_sequence(&pair, 3 * n + 1);
                    let c = pair.c() as u64;
                    for i in 1..p.terms.len() {
                        let gap = p.terms[i] - p.terms[i - 1];
                        let xi = pair.x_at(i) as u64;
                        assert!(gap > 0);
                        if n >= 2 {
                            assert!(gap < n as u64 * (xi + 1));
                        } else {
                            assert_eq!(gap, xi + 1);
                        }
                        assert!(n as u64 * (xi + 1) <= (d * n) as u64);
                        let multiples = p.terms[i] / n as u64 - p.terms[i - 1] / n as u64;
                        let descent = pair.w_at(i - 1) >= pair.w_at(i);
                        assert_eq!(multiples, xi + u64::from(descent));
                        if i >= n {
                            assert_eq!(p.terms[i], p.terms[i - n] + c * n as u64);
                        }
                    }
                }
            }
        }
    }
}
