//! Buchberger's algorithm over the rationals with graded reverse
//! lexicographic orders, plus zero-dimensionality and degree of the quotient.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::{One, Zero};

use crate::arith::{grevlex_cmp, ExponentVector, MultiPoly, Rational};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_PAIRS: usize = 20_000;
pub const DEFAULT_MAX_DEGREE: u64 = 48;
/// Environment variable overriding [`DEFAULT_MAX_PAIRS`].
pub const MAX_PAIRS_ENV: &str = "EULVOL_MAX_PAIRS";
/// Environment variable overriding [`DEFAULT_MAX_DEGREE`].
pub const MAX_DEGREE_ENV: &str = "EULVOL_MAX_DEGREE";

/// Resource limits for a Buchberger run. Exceeding either yields
/// [`Error::CapExceeded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Maximum number of S-pairs actually reduced.
    pub max_pairs: usize,
    /// Maximum total degree of any S-pair lcm or basis element.
    pub max_degree: u64,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_pairs: DEFAULT_MAX_PAIRS, max_degree: DEFAULT_MAX_DEGREE }
    }
}

impl GroebnerConfig {
    /// Defaults, overridden by [`MAX_PAIRS_ENV`] and [`MAX_DEGREE_ENV`] when set.
    pub fn from_env() -> Result<Self> {
        let mut config = GroebnerConfig::default();
        if let Ok(v) = std::env::var(MAX_PAIRS_ENV) {
            config.max_pairs = v.trim().parse().map_err(|_| Error::InvalidArgument(format!("{MAX_PAIRS_ENV}={v}")))?;
        }
        if let Ok(v) = std::env::var(MAX_DEGREE_ENV) {
            config.max_degree =
                v.trim().parse().map_err(|_| Error::InvalidArgument(format!("{MAX_DEGREE_ENV}={v}")))?;
        }
        Ok(config)
    }
}

/// Graded reverse lexicographic order with an explicit variable ranking:
/// `ranking[0]` is the largest variable, `ranking[n-1]` the smallest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    ranking: Vec<usize>,
}

impl MonomialOrder {
    /// `x1 > x2 > ... > xn`.
    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder { ranking: (0..nvars).collect() }
    }

    pub fn with_ranking(ranking: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; ranking.len()];
        for &v in &ranking {
            if v >= ranking.len() || seen[v] {
                return Err(Error::InvalidArgument(format!("{ranking:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(MonomialOrder { ranking })
    }

    pub fn nvars(&self) -> usize {
        self.ranking.len()
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| {
            for &v in self.ranking.iter().rev() {
                let (x, y) = (a.entries()[v], b.entries()[v]);
                if x != y {
                    return y.cmp(&x);
                }
            }
            Ordering::Equal
        })
    }

    pub fn leading_term<'a>(&self, p: &'a MultiPoly) -> Option<(&'a ExponentVector, &'a Rational)> {
        p.terms().max_by(|a, b| self.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, p: &MultiPoly) -> Option<ExponentVector> {
        self.leading_term(p).map(|(e, _)| e.clone())
    }

    /// Maps original variables to internal ones, where the order is plain
    /// grevlex.
    fn to_internal(&self, p: &MultiPoly) -> MultiPoly {
        let mut inverse = vec![0; self.ranking.len()];
        for (pos, &v) in self.ranking.iter().enumerate() {
            inverse[v] = pos;
        }
        p.permute_variables(&inverse)
    }

    fn to_external(&self, p: &MultiPoly) -> MultiPoly {
        p.permute_variables(&self.ranking)
    }
}

/// A finitely generated ideal of `Q[x1..xn]`. The generator list may be
/// empty; with zero variables this is the zero ideal of `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<MultiPoly>,
}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<MultiPoly>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::VariableCountMismatch { left: nvars, right: g.nvars() });
            }
        }
        Ok(Ideal { nvars, generators })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }
}

/// Counters from a Buchberger run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuchbergerStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub coprime_skipped: usize,
    pub chain_skipped: usize,
}

/// A reduced Groebner basis: monic elements sorted by increasing leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    elements: Vec<MultiPoly>,
    stats: BuchbergerStats,
}

// Working representation in internal (plain grevlex) coordinates.

#[derive(Clone, Debug, PartialEq, Eq)]
struct Key(ExponentVector);

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type Work = BTreeMap<Key, Rational>;

/// Monic polynomial with terms in decreasing order.
#[derive(Clone, Debug)]
struct Elem {
    terms: Vec<(ExponentVector, Rational)>,
}

impl Elem {
    fn from_work(w: Work) -> Option<Elem> {
        let lc = w.last_key_value()?.1.clone();
        let terms = w.into_iter().rev().map(|(k, c)| (k.0, c / &lc)).collect();
        Some(Elem { terms })
    }

    fn lm(&self) -> &ExponentVector {
        &self.terms[0].0
    }

    fn to_work(&self) -> Work {
        self.terms.iter().map(|(e, c)| (Key(e.clone()), c.clone())).collect()
    }

    fn to_poly(&self, nvars: usize) -> MultiPoly {
        MultiPoly::from_terms(nvars, self.terms.iter().cloned()).expect("consistent variable count")
    }
}

fn work_from_poly(p: &MultiPoly) -> Work {
    p.terms().map(|(e, c)| (Key(e.clone()), c.clone())).collect()
}

fn sub_multiple(w: &mut Work, g: &Elem, shift: &ExponentVector, factor: &Rational, skip_lead: bool) {
    for (e, c) in g.terms.iter().skip(usize::from(skip_lead)) {
        let key = Key(e.add(shift));
        let delta = factor * c;
        match w.get_mut(&key) {
            Some(v) => {
                *v -= delta;
                if v.is_zero() {
                    w.remove(&key);
                }
            }
            None => {
                w.insert(key, -delta);
            }
        }
    }
}

/// Full reduction of `p` modulo `basis`.
fn reduce(mut p: Work, basis: &[&Elem]) -> Work {
    let mut rem = Work::new();
    while let Some((lm, lc)) = p.pop_last() {
        match basis.iter().find(|g| g.lm().divides(&lm.0)) {
            Some(g) => {
                let shift = lm.0.sub(g.lm());
                sub_multiple(&mut p, g, &shift, &lc, true);
            }
            None => {
                rem.insert(lm, lc);
            }
        }
    }
    rem
}

fn s_polynomial(f: &Elem, g: &Elem) -> Work {
    let lcm = f.lm().lcm(g.lm());
    let mut w = Work::new();
    sub_multiple(&mut w, f, &lcm.sub(f.lm()), &-Rational::one(), true);
    sub_multiple(&mut w, g, &lcm.sub(g.lm()), &Rational::one(), true);
    w
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    lcm: Key,
    i: usize,
    j: usize,
}

fn unit_basis(nvars: usize, order: MonomialOrder, stats: BuchbergerStats) -> GroebnerBasis {
    GroebnerBasis { nvars, order, elements: vec![MultiPoly::one(nvars)], stats }
}

/// Reduced Groebner basis with default resource limits.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(ideal, order, &GroebnerConfig::default())
}

pub fn buchberger_with(ideal: &Ideal, order: &MonomialOrder, config: &GroebnerConfig) -> Result<GroebnerBasis> {
    let nvars = ideal.nvars;
    if order.nvars() != nvars {
        return Err(Error::VariableCountMismatch { left: nvars, right: order.nvars() });
    }
    let mut stats = BuchbergerStats::default();
    let mut basis: Vec<Elem> = Vec::new();
    let mut queue: BTreeSet<PairKey> = BTreeSet::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();

    let check_degree = |e: &ExponentVector| -> Result<()> {
        if e.degree() > config.max_degree {
            return Err(Error::CapExceeded(format!("degree {} > {}", e.degree(), config.max_degree)));
        }
        Ok(())
    };

    // returns false once the unit ideal is detected
    let push = |elem: Elem, basis: &mut Vec<Elem>, queue: &mut BTreeSet<PairKey>| -> Result<bool> {
        if elem.lm().is_constant() {
            return Ok(false);
        }
        check_degree(elem.lm())?;
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            queue.insert(PairKey { lcm: Key(g.lm().lcm(elem.lm())), i, j });
        }
        basis.push(elem);
        Ok(true)
    };

    for g in &ideal.generators {
        let internal = order.to_internal(g);
        let refs: Vec<&Elem> = basis.iter().collect();
        if let Some(elem) = Elem::from_work(reduce(work_from_poly(&internal), &refs)) {
            if !push(elem, &mut basis, &mut queue)? {
                return Ok(unit_basis(nvars, order.clone(), stats));
            }
        }
    }

    while let Some(pair) = queue.pop_first() {
        let PairKey { lcm, i, j } = pair;
        done.insert((i, j));
        if basis[i].lm().is_coprime(basis[j].lm()) {
            stats.coprime_skipped += 1;
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&lcm.0)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            stats.chain_skipped += 1;
            continue;
        }
        check_degree(&lcm.0)?;
        stats.pairs_reduced += 1;
        if stats.pairs_reduced > config.max_pairs {
            return Err(Error::CapExceeded(format!("more than {} S-pairs", config.max_pairs)));
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let refs: Vec<&Elem> = basis.iter().collect();
        match Elem::from_work(reduce(s, &refs)) {
            None => stats.zero_reductions += 1,
            Some(elem) => {
                if !push(elem, &mut basis, &mut queue)? {
                    return Ok(unit_basis(nvars, order.clone(), stats));
                }
            }
        }
    }

    // minimal basis, then interreduce
    basis.sort_by(|a, b| grevlex_cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Elem> = Vec::new();
    for e in basis {
        if !minimal.iter().any(|m| m.lm().divides(e.lm())) {
            minimal.push(e);
        }
    }
    let reduced: Vec<Elem> = (0..minimal.len())
        .map(|idx| {
            let others: Vec<&Elem> = minimal.iter().enumerate().filter(|&(o, _)| o != idx).map(|(_, e)| e).collect();
            Elem::from_work(reduce(minimal[idx].to_work(), &others)).expect("leading term survives")
        })
        .collect();
    let elements = reduced.iter().map(|e| order.to_external(&e.to_poly(nvars))).collect();
    Ok(GroebnerBasis { nvars, order: order.clone(), elements, stats })
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[MultiPoly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn stats(&self) -> BuchbergerStats {
        self.stats
    }

    /// The basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|p| p.is_nonzero_constant())
    }

    pub fn leading_monomials(&self) -> Vec<ExponentVector> {
        self.elements.iter().filter_map(|p| self.order.leading_monomial(p)).collect()
    }

    fn internal_elems(&self) -> Vec<Elem> {
        self.elements.iter().filter_map(|p| Elem::from_work(work_from_poly(&self.order.to_internal(p)))).collect()
    }

    /// Remainder of `p` on division by the basis.
    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.nvars {
            return Err(Error::VariableCountMismatch { left: self.nvars, right: p.nvars() });
        }
        let elems = self.internal_elems();
        let refs: Vec<&Elem> = elems.iter().collect();
        let rem = reduce(work_from_poly(&self.order.to_internal(p)), &refs);
        let poly = MultiPoly::from_terms(self.nvars, rem.into_iter().map(|(k, c)| (k.0, c)))?;
        Ok(self.order.to_external(&poly))
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Checks that every S-polynomial reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let elems = self.internal_elems();
        let refs: Vec<&Elem> = elems.iter().collect();
        (0..elems.len()).all(|j| (0..j).all(|i| reduce(s_polynomial(&elems[i], &elems[j]), &refs).is_empty()))
    }

    /// Monic elements, no leading monomial divides another term of a
    /// different element.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.elements.iter().enumerate().all(|(i, p)| {
            self.order.leading_term(p).is_some_and(|(_, c)| c.is_one())
                && p.terms().all(|(e, _)| lms.iter().enumerate().all(|(j, lm)| i == j || !lm.divides(e)))
        })
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        let lms = self.leading_monomials();
        (0..self.nvars).all(|v| lms.iter().any(|m| is_pure_power_of(m, v)))
    }

    /// Monomials divisible by no leading monomial.
    pub fn standard_monomials(&self) -> Result<Vec<ExponentVector>> {
        if !self.is_zero_dimensional() {
            return Err(Error::NotZeroDimensional);
        }
        if self.is_unit() {
            return Ok(Vec::new());
        }
        let lms = self.leading_monomials();
        let bounds: Vec<u32> = (0..self.nvars)
            .map(|v| lms.iter().filter(|m| is_pure_power_of(m, v)).map(|m| m.entries()[v]).min().unwrap_or(0))
            .collect();
        let mut out = Vec::new();
        let mut current = vec![0u32; self.nvars];
        loop {
            let e = ExponentVector::new(current.clone());
            if !lms.iter().any(|m| m.divides(&e)) {
                out.push(e);
            }
            // odometer over the box [0, bounds)
            let mut pos = 0;
            loop {
                if pos == self.nvars {
                    out.sort_by(|a, b| self.order.cmp(a, b));
                    return Ok(out);
                }
                current[pos] += 1;
                if current[pos] < bounds[pos] {
                    break;
                }
                current[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Dimension of the quotient ring; 0 for the unit ideal.
    pub fn degree(&self) -> Result<u64> {
        Ok(self.standard_monomials()?.len() as u64)
    }
}

fn is_pure_power_of(m: &ExponentVector, v: usize) -> bool {
    m.entries()[v] > 0 && m.entries().iter().enumerate().all(|(i, &a)| i == v || a == 0)
}

pub fn is_zero_dimensional(g: &GroebnerBasis) -> bool {
    g.is_zero_dimensional()
}

pub fn ideal_degree(g: &GroebnerBasis) -> Result<u64> {
    g.degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational_from_int;
    use crate::laurent::power_constant_terms;

    fn mono(e: &[u32]) -> MultiPoly {
        MultiPoly::monomial(ExponentVector::new(e.to_vec()), Rational::one())
    }

    fn gb(nvars: usize, gens: Vec<MultiPoly>) -> GroebnerBasis {
        buchberger(&Ideal::new(nvars, gens).unwrap(), &MonomialOrder::grevlex(nvars)).unwrap()
    }

    fn i22() -> Ideal {
        Ideal::new(3, power_constant_terms(2, 2, 3).unwrap()).unwrap()
    }

    #[test]
    fn single_variable() {
        let g = gb(1, vec![MultiPoly::var(1, 0)]);
        assert_eq!(g.elements(), &[MultiPoly::var(1, 0)]);
        assert_eq!(g.degree().unwrap(), 1);
    }

    #[test]
    fn monomial_ideal() {
        let gens = vec![mono(&[2, 0]), mono(&[1, 1]), mono(&[0, 2])];
        let g = gb(2, gens.clone());
        assert_eq!(g.len(), 3);
        for p in &gens {
            assert!(g.elements().contains(p));
        }
        assert!(g.is_zero_dimensional());
        assert_eq!(g.degree().unwrap(), 3);

        let g = gb(2, vec![mono(&[1, 1])]);
        assert!(!g.is_zero_dimensional());
        assert_eq!(g.degree(), Err(Error::NotZeroDimensional));
    }

    #[test]
    fn unit_ideal() {
        // x - 1 and x + 1 generate the unit ideal
        let x = MultiPoly::var(1, 0);
        let one = MultiPoly::one(1);
        let g = gb(1, vec![&x - &one, &x + &one]);
        assert!(g.is_unit());
        assert!(g.is_zero_dimensional());
        assert_eq!(g.degree().unwrap(), 0);
    }

    #[test]
    fn empty_ideals() {
        let g = gb(0, vec![]);
        assert!(g.is_zero_dimensional());
        assert_eq!(g.degree().unwrap(), 1);
        assert!(!gb(2, vec![]).is_zero_dimensional());
        assert!(gb(1, vec![MultiPoly::zero(1)]).is_empty());
    }

    #[test]
    fn two_by_two_family() {
        let g = buchberger(&i22(), &MonomialOrder::grevlex(3)).unwrap();
        assert!(g.is_reduced());
        assert!(g.s_pairs_reduce_to_zero());
        assert!(g.is_zero_dimensional());
        assert_eq!(g.degree().unwrap(), 4);
        for p in i22().generators() {
            assert!(g.contains(p).unwrap());
        }
    }

    #[test]
    fn ranking_does_not_change_degree() {
        for ranking in [vec![2, 1, 0], vec![1, 2, 0]] {
            let order = MonomialOrder::with_ranking(ranking).unwrap();
            let g = buchberger(&i22(), &order).unwrap();
            assert!(g.is_reduced());
            assert!(g.s_pairs_reduce_to_zero());
            assert_eq!(g.degree().unwrap(), 4);
        }
        assert!(MonomialOrder::with_ranking(vec![0, 0]).is_err());
    }

    #[test]
    fn normal_form_is_idempotent() {
        let g = buchberger(&i22(), &MonomialOrder::grevlex(3)).unwrap();
        let p = &MultiPoly::var(3, 0).pow(5) + &MultiPoly::var(3, 2).scale(&rational_from_int(7));
        let once = g.normal_form(&p).unwrap();
        assert_eq!(g.normal_form(&once).unwrap(), once);
    }

    #[test]
    fn caps_are_reported() {
        let config = GroebnerConfig { max_pairs: 0, max_degree: 48 };
        let r = buchberger_with(&i22(), &MonomialOrder::grevlex(3), &config);
        assert!(matches!(r, Err(Error::CapExceeded(_))));
        let config = GroebnerConfig { max_pairs: 100, max_degree: 2 };
        let r = buchberger_with(&i22(), &MonomialOrder::grevlex(3), &config);
        assert!(matches!(r, Err(Error::CapExceeded(_))));
    }
}
