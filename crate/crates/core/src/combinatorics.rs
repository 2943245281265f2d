//! Permutation statistics: descents, Eulerian numbers, circular permutations
//! under the cyclic letter-shift action and their refined counts.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Advances `v` to the next permutation in lexicographic order. Returns
/// `false` (leaving `v` sorted ascending) after the last one.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Parses a word given either as comma-separated letters or, when every
/// letter is a single digit, as a digit string.
pub fn parse_letters(s: &str) -> Result<Vec<usize>> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::MalformedWord(s.to_string()));
    }
    if t.contains(',') {
        t.split(',').map(|p| p.trim().parse::<usize>().map_err(|_| Error::MalformedWord(s.to_string()))).collect()
    } else if t.chars().all(|c| c.is_ascii_digit()) && t.len() <= 10 {
        // digit form: only unambiguous while every letter is a single digit
        Ok(t.chars().map(|c| c.to_digit(10).unwrap() as usize).collect())
    } else {
        Err(Error::MalformedWord(s.to_string()))
    }
}

fn join_letters(word: &[usize]) -> String {
    word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &l in &word {
            if l == 0 || l > n || seen[l] {
                return Err(Error::MalformedWord(join_letters(&word)));
            }
            seen[l] = true;
        }
        Ok(Permutation(word))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_letters(s)?)
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn descent_count(&self) -> usize {
        descent_count(&self.0)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_letters(&self.0))
    }
}

/// Number of positions `i` with `w[i] > w[i+1]`.
pub fn descent_count(word: &[usize]) -> usize {
    word.windows(2).filter(|p| p[0] > p[1]).count()
}

/// Number of cyclic positions `i` with `w[i] > w[i+1 mod len]`.
pub fn cyclic_descent_count(word: &[usize]) -> usize {
    let len = word.len();
    (0..len).filter(|&i| word[i] > word[(i + 1) % len]).count()
}

/// A permutation of `{0, ..., n}` up to rotation, stored in the rotation that
/// starts with 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircularPermutation(Vec<usize>);

impl CircularPermutation {
    /// Accepts any rotation of a permutation of `{0, ..., n}`.
    pub fn from_word(word: Vec<usize>) -> Result<Self> {
        let len = word.len();
        let mut seen = vec![false; len];
        for &l in &word {
            if l >= len || seen[l] {
                return Err(Error::MalformedWord(join_letters(&word)));
            }
            seen[l] = true;
        }
        if len == 0 {
            return Err(Error::MalformedWord(String::new()));
        }
        let start = word.iter().position(|&l| l == 0).unwrap();
        let mut w = word;
        w.rotate_left(start);
        Ok(CircularPermutation(w))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::from_word(parse_letters(s)?)
    }

    pub fn identity(n: usize) -> Self {
        CircularPermutation((0..=n).collect())
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }

    /// The largest letter; the word has `n + 1` letters.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn cyclic_descent_count(&self) -> usize {
        cyclic_descent_count(&self.0)
    }

    /// Adds `s` modulo `n + 1` to every letter and re-canonicalizes.
    pub fn shift_letters(&self, s: i64) -> CircularPermutation {
        let m = self.0.len() as i64;
        let s = s.rem_euclid(m) as usize;
        let shifted: Vec<usize> = self.0.iter().map(|&l| (l + s) % m as usize).collect();
        CircularPermutation::from_word(shifted).expect("shift preserves bijectivity")
    }

    /// True when adding `s` to every letter maps the circular word to
    /// itself.
    pub fn is_fixed_by_shift(&self, s: usize) -> bool {
        is_fixed_word(&self.0, s)
    }
}

impl fmt::Display for CircularPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_letters(&self.0))
    }
}

// `word` is canonical (starts at 0). After adding `s`, the letter that
// becomes 0 is `len - s`, so compare starting from its position.
fn is_fixed_word(word: &[usize], s: usize) -> bool {
    let len = word.len();
    let s = s % len;
    if s == 0 {
        return true;
    }
    let target = len - s;
    let Some(j) = word.iter().position(|&l| l == target) else {
        return false;
    };
    (0..len).all(|i| (word[(j + i) % len] + s) % len == word[i])
}

/// Calls `visit` on every canonical word of `{0, ..., n}` in lexicographic
/// order.
fn for_each_circular_word<F: FnMut(&[usize])>(n: usize, mut visit: F) {
    let mut word: Vec<usize> = (0..=n).collect();
    loop {
        visit(&word);
        if !next_permutation(&mut word[1..]) {
            break;
        }
    }
}

/// Eulerian numbers `<n, k>` for `k = 0..n` (row `n`). Row 0 is `[1]`.
pub fn eulerian_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        // <m, k> = (k+1)<m-1, k> + (m-k)<m-1, k-1>
        let mut next = vec![BigInt::zero(); m];
        for (k, slot) in next.iter_mut().enumerate() {
            let mut v = BigInt::zero();
            if k < row.len() {
                v += BigInt::from(k + 1) * &row[k];
            }
            if k >= 1 && k - 1 < row.len() {
                v += BigInt::from(m - k) * &row[k - 1];
            }
            *slot = v;
        }
        row = next;
    }
    row
}

/// Eulerian number `<n, k>`: permutations of `n` letters with `k` descents.
/// Zero when `k < 0` or `k >= n`; `<0, 0> = 1` by convention.
pub fn eulerian(n: usize, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let row = eulerian_row(n);
    row.get(k as usize).cloned().unwrap_or_else(BigInt::zero)
}

/// Eulerian number by exhaustive enumeration of `S_n`.
pub fn eulerian_enumerated(n: usize, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut word: Vec<usize> = (1..=n).collect();
    let mut count = 0u64;
    loop {
        if descent_count(&word) as i64 == k {
            count += 1;
        }
        if !next_permutation(&mut word) {
            break;
        }
    }
    BigInt::from(count)
}

fn check_divides(d: usize, n: usize) -> Result<()> {
    if d == 0 || !(n + 1).is_multiple_of(d) {
        return Err(Error::NotDivisible { d: d as u64, n: (n + 1) as u64 });
    }
    Ok(())
}

/// Counts, for each `k`, the circular permutations of `{0, ..., n}` with
/// `k + 1` cyclic descents fixed by adding `(n+1)/d`. Entry `k` of the
/// result is `<n, k>_d`.
pub fn refined_eulerian_row(n: usize, d: usize) -> Result<Vec<BigInt>> {
    check_divides(d, n)?;
    let shift = (n + 1) / d;
    let mut counts = vec![0u64; n + 1];
    for_each_circular_word(n, |w| {
        if is_fixed_word(w, shift) {
            let c = cyclic_descent_count(w);
            if c >= 1 {
                counts[c - 1] += 1;
            }
        }
    });
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// Refined Eulerian number `<n, k>_d`.
pub fn refined_eulerian(n: usize, k: i64, d: usize) -> Result<BigInt> {
    Ok(list_fixed_circular(n, k, d)?.len().into())
}

/// The circular permutations counted by `<n, k>_d`, in lexicographic order of
/// their canonical words.
pub fn list_fixed_circular(n: usize, k: i64, d: usize) -> Result<Vec<CircularPermutation>> {
    check_divides(d, n)?;
    let mut out = Vec::new();
    if k < 0 || k as usize > n {
        return Ok(out);
    }
    let shift = (n + 1) / d;
    let want = k as usize + 1;
    for_each_circular_word(n, |w| {
        if cyclic_descent_count(w) == want && is_fixed_word(w, shift) {
            out.push(CircularPermutation(w.to_vec()));
        }
    });
    Ok(out)
}

/// Number of `x` in `{0, ..., d-1}^n` with coordinate sum `s`.
pub fn composition_count(n: usize, s: i64, d: usize) -> BigInt {
    if d == 0 || s < 0 {
        return BigInt::zero();
    }
    let s = s as usize;
    if s > n * (d - 1) {
        return BigInt::zero();
    }
    let mut table = vec![BigInt::zero(); s + 1];
    table[0] = BigInt::one();
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); s + 1];
        for (t, v) in table.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for x in 0..d {
                if t + x > s {
                    break;
                }
                next[t + x] += v;
            }
        }
        table = next;
    }
    table.swap_remove(s)
}

/// Counts pairs `(w, x)` with `w` in `S_{n-1}` having `k-1` descents and
/// `x` in `{0..d-1}^n` summing to `c-k`; equals `<dn-1, c-1>_d`.
///
/// For `n = 1` the single (empty) permutation of `S_0` contributes at `k = 1`.
pub fn refined_eulerian_via_pairs(n: usize, c: usize, d: usize) -> Result<BigInt> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument("n and d must be positive".into()));
    }
    let g = c.gcd(&d);
    if g != 1 {
        return Err(Error::NotCoprime { c: c as u64, d: d as u64, gcd: g as u64 });
    }
    if c == 0 || c >= d * n {
        return Err(Error::InvalidArgument(format!("need 0 < c < dn, got c = {c}, dn = {}", d * n)));
    }
    let row = eulerian_row(n - 1);
    let mut total = BigInt::zero();
    for (i, e) in row.iter().enumerate() {
        let k = i + 1;
        total += e * composition_count(n, c as i64 - k as i64, d);
    }
    Ok(total)
}
