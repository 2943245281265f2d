//! Verification suites comparing ideal degrees, volumes and mixed volumes
//! with Eulerian and refined Eulerian numbers.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::{factorial, MultiPoly, Rational};
use crate::combinatorics::{eulerian, refined_eulerian, refined_eulerian_via_pairs};
use crate::error::{Error, Result};
use crate::groebner::{buchberger_with, GroebnerConfig, Ideal, MonomialOrder};
use crate::laurent::{generic_variable_names, power_constant_terms, sparse_generators, SparseFamilySpec};
use crate::polytope::{
    cube_slice, hypersimplex, mv_family, mv_family_sparse, normalized_volume_slice, SliceSpec, MAX_MV_FAMILY_N,
};

/// Largest `m + n` accepted by [`verify_theorem1`].
pub const MAX_THEOREM1_N: usize = 6;
/// Largest `m + n` accepted by [`verify_theorem5`].
pub const MAX_THEOREM5_N: usize = 8;

fn rational_text(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Outcome of a constant-term ideal computation against its predicted
/// degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub variables: Vec<String>,
    /// `k` for each generator `[[f^k]]`.
    pub generator_indices: Vec<usize>,
    pub generators: Vec<String>,
    /// `k` whose constant term vanishes identically.
    pub dropped: Vec<usize>,
    pub basis: Vec<String>,
    pub basis_size: usize,
    pub pairs_reduced: usize,
    pub zero_dimensional: bool,
    pub unit_ideal: bool,
    pub no_solutions: bool,
    pub degree: Option<u64>,
    pub expected: String,
    /// Mixed volume of the Newton polytope family, when within the caps.
    pub mixed_volume: Option<String>,
    /// Mixed volume divided by the symmetry factor.
    pub mixed_volume_count: Option<String>,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn ideal_report(
    (m, n, d): (usize, usize, usize),
    variables: Vec<String>,
    generators: Vec<(usize, MultiPoly)>,
    dropped: Vec<usize>,
    expected: BigInt,
    mixed: Option<(BigInt, BigInt)>,
    config: &GroebnerConfig,
) -> Result<IdealReport> {
    let nvars = variables.len();
    let polys: Vec<MultiPoly> = generators.iter().map(|(_, p)| p.clone()).collect();
    let ideal = Ideal::new(nvars, polys)?;
    let basis = buchberger_with(&ideal, &MonomialOrder::grevlex(nvars), config)?;
    let zero_dimensional = basis.is_zero_dimensional();
    let degree = if zero_dimensional { Some(basis.degree()?) } else { None };
    let matches = degree.is_some_and(|v| BigInt::from(v) == expected);
    let (mixed_volume, mixed_volume_count) = match mixed {
        Some((mv, factor)) => (Some(mv.to_string()), Some(rational_text(&Rational::new(mv, factor)))),
        None => (None, None),
    };
    Ok(IdealReport {
        m,
        n,
        d,
        generator_indices: generators.iter().map(|(k, _)| *k).collect(),
        generators: generators.iter().map(|(_, p)| p.to_string_with(&variables)).collect(),
        dropped,
        basis: basis.elements().iter().map(|p| p.to_string_with(&variables)).collect(),
        basis_size: basis.len(),
        pairs_reduced: basis.stats().pairs_reduced,
        zero_dimensional,
        unit_ideal: basis.is_unit(),
        no_solutions: basis.is_unit(),
        degree,
        expected: expected.to_string(),
        mixed_volume,
        mixed_volume_count,
        matches,
        variables,
    })
}

/// Degree of `<[[f^1]], ..., [[f^{m+n-1}]]>` for generic doubly monic `f`
/// against `<m+n-1, m-1>`.
pub fn verify_theorem1(m: usize, n: usize) -> Result<IdealReport> {
    verify_theorem1_with(m, n, &GroebnerConfig::default())
}

pub fn verify_theorem1_with(m: usize, n: usize, config: &GroebnerConfig) -> Result<IdealReport> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument("m and n must be positive".into()));
    }
    let big_n = m + n;
    if big_n > MAX_THEOREM1_N {
        return Err(Error::CapExceeded(format!("m + n = {big_n} > {MAX_THEOREM1_N}")));
    }
    let generators: Vec<(usize, MultiPoly)> =
        power_constant_terms(m, n, big_n - 1)?.into_iter().enumerate().map(|(i, p)| (i + 1, p)).collect();
    let mixed = if big_n <= MAX_MV_FAMILY_N { Some((mv_family(m, big_n)?, factorial(big_n as u64))) } else { None };
    ideal_report(
        (m, n, 1),
        generic_variable_names(m, n),
        generators,
        Vec::new(),
        eulerian(big_n - 1, m as i64 - 1),
        mixed,
        config,
    )
}

/// Degree of the constant-term ideal of the `d`-sparse family against
/// `<m+n-1, m-1>_d`.
pub fn verify_theorem5(m: usize, n: usize, d: usize) -> Result<IdealReport> {
    verify_theorem5_with(m, n, d, &GroebnerConfig::default())
}

pub fn verify_theorem5_with(m: usize, n: usize, d: usize, config: &GroebnerConfig) -> Result<IdealReport> {
    let spec = SparseFamilySpec::new(m, n, d)?;
    let big_n = m + n;
    if big_n > MAX_THEOREM5_N {
        return Err(Error::CapExceeded(format!("m + n = {big_n} > {MAX_THEOREM5_N}")));
    }
    let sparse = sparse_generators(spec);
    let mixed = if m.gcd(&d) == 1 && big_n / d <= MAX_MV_FAMILY_N {
        Some((mv_family_sparse(m, big_n, d)?, factorial((big_n / d) as u64)))
    } else {
        None
    };
    ideal_report(
        (m, n, d),
        spec.variable_names(),
        sparse.generators,
        sparse.dropped,
        refined_eulerian(big_n - 1, m as i64 - 1, d)?,
        mixed,
        config,
    )
}

/// One hypersimplex volume check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeCase {
    pub c: usize,
    pub d: usize,
    pub n: usize,
    pub volume: String,
    pub expected: String,
    /// Independent count through `(w, x)` pairs; only for fractional slices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub via_pairs: Option<String>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeSuite {
    pub cases: Vec<VolumeCase>,
    pub all_match: bool,
}

impl VolumeSuite {
    fn new(cases: Vec<VolumeCase>) -> Self {
        let all_match = cases.iter().all(|c| c.matches);
        VolumeSuite { cases, all_match }
    }
}

/// `vol(Delta_{k,n}) = <n-1, k-1>` for `0 < k < n`, `2 <= n <= max_n`.
pub fn verify_theorem3(max_n: usize) -> Result<VolumeSuite> {
    let mut cases = Vec::new();
    for n in 2..=max_n {
        for k in 1..n {
            let volume = normalized_volume_slice(&hypersimplex(k, n)?)?;
            let expected = eulerian(n - 1, k as i64 - 1);
            cases.push(VolumeCase {
                c: k,
                d: 1,
                n,
                matches: volume == Rational::from_integer(expected.clone()),
                volume: rational_text(&volume),
                expected: expected.to_string(),
                via_pairs: None,
            });
        }
    }
    Ok(VolumeSuite::new(cases))
}

/// `vol(d Delta_{c/d,n}) = <dn-1, c-1>_d`, checked against both the
/// enumeration and the pair count, for `d <= max_d`, `dn <= max_dn`.
pub fn verify_theorem6(max_dn: usize, max_d: usize) -> Result<VolumeSuite> {
    let mut cases = Vec::new();
    for d in 1..=max_d {
        for n in 1..=max_dn / d {
            for c in 1..d * n {
                if c.gcd(&d) != 1 {
                    continue;
                }
                let volume = normalized_volume_slice(&cube_slice(SliceSpec::new(c, d, n)?))?;
                let expected = refined_eulerian(d * n - 1, c as i64 - 1, d)?;
                let pairs = refined_eulerian_via_pairs(n, c, d)?;
                let target = Rational::from_integer(expected.clone());
                cases.push(VolumeCase {
                    c,
                    d,
                    n,
                    matches: volume == target && pairs == expected,
                    volume: rational_text(&volume),
                    expected: expected.to_string(),
                    via_pairs: Some(pairs.to_string()),
                });
            }
        }
    }
    Ok(VolumeSuite::new(cases))
}
