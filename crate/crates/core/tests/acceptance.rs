//! Acceptance suite: each criterion is checked with exact arithmetic and a
//! wall-clock budget, and reported on one line.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eulvol::arith::{factorial, rational_from_int};
use eulvol::bijection::{all_pairs, build_p_sequence, forward, inverse_bijection, PairWX};
use eulvol::combinatorics::{
    eulerian, eulerian_enumerated, list_fixed_circular, refined_eulerian, refined_eulerian_row,
    refined_eulerian_via_pairs,
};
use eulvol::laurent::{newton_support, pk_expand_oracle, pk_polynomial};
use eulvol::polytope::{
    convex_hull, cube_slice, hypersimplex, mixed_volume, mv_family, normalized_volume_slice, SliceSpec, VPolytope,
};
use eulvol::verify::{verify_theorem1, verify_theorem5};
use eulvol::{ExponentVector, Rational};

type Check = Result<String, String>;

/// Name, time budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn eulerian_oracle() -> Check {
    let mut checked = 0;
    for n in 0..=8 {
        for k in 0..=n as i64 {
            let (rec, enu) = (eulerian(n, k), eulerian_enumerated(n, k));
            ensure(rec == enu, || format!("<{n},{k}>: recurrence {rec} vs enumeration {enu}"))?;
            checked += 1;
        }
        ensure(eulerian(n, 0) == BigInt::from(1), || format!("<{n},0> != 1"))?;
    }
    ensure(eulerian(4, 1) == BigInt::from(11), || "<4,1> != 11".into())?;
    Ok(format!("{checked} values agree, <4,1> = 11"))
}

fn refined_example() -> Check {
    let count = refined_eulerian(5, 2, 2).map_err(e)?;
    ensure(count == BigInt::from(6), || format!("<5,2>_2 = {count}"))?;
    let listed: BTreeSet<String> = list_fixed_circular(5, 2, 2)
        .map_err(e)?
        .iter()
        .map(|w| w.word().iter().map(|l| l.to_string()).collect())
        .collect();
    let expected: BTreeSet<String> =
        ["042315", "015342", "045312", "021354", "051324", "024351"].iter().map(|s| s.to_string()).collect();
    ensure(listed == expected, || format!("listed {listed:?}"))?;
    Ok("<5,2>_2 = 6 with the six expected words".into())
}

fn hexagon() -> Check {
    let slice = cube_slice(SliceSpec::new(3, 2, 3).map_err(e)?);
    let vol = normalized_volume_slice(&slice).map_err(e)?;
    ensure(vol == rational_from_int(6), || format!("volume {vol}"))?;
    ensure(slice.vertices().len() == 6, || format!("{} vertices", slice.vertices().len()))?;
    Ok("hexagon with normalized volume 6".into())
}

fn hypersimplex_volumes() -> Check {
    let mut cases = 0;
    for n in 2..=6 {
        for k in 1..n {
            let vol = normalized_volume_slice(&hypersimplex(k, n).map_err(e)?).map_err(e)?;
            let want = eulerian(n - 1, k as i64 - 1);
            ensure(vol == Rational::from_integer(want.clone()), || {
                format!("Delta_{{{k},{n}}}: volume {vol}, expected {want}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} hypersimplices"))
}

fn fractional_volumes() -> Check {
    let mut cases = 0;
    for d in 1..=3usize {
        for n in 1..=9 / d {
            for c in (1..d * n).filter(|c| c.gcd(&d) == 1) {
                let vol = normalized_volume_slice(&cube_slice(SliceSpec::new(c, d, n).map_err(e)?)).map_err(e)?;
                let enumerated = refined_eulerian(d * n - 1, c as i64 - 1, d).map_err(e)?;
                let pairs = refined_eulerian_via_pairs(n, c, d).map_err(e)?;
                ensure(vol == Rational::from_integer(enumerated.clone()) && pairs == enumerated, || {
                    format!("(c,d,n)=({c},{d},{n}): volume {vol}, enumeration {enumerated}, pairs {pairs}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} slices, three computations agree"))
}

fn bijection() -> Check {
    let mut pairs_checked = 0;
    for n in 1..=4 {
        for d in 1..=3 {
            let dn = d * n;
            let mut images: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dn];
            for pair in all_pairs(n, d) {
                if pair.c().gcd(&d) != 1 {
                    continue;
                }
                let word = forward(&pair).map_err(e)?;
                ensure(word.is_fixed_by_shift(n), || format!("{pair}: image not symmetric"))?;
                ensure(word.cyclic_descent_count() == pair.c(), || format!("{pair}: descent count changed"))?;
                let back = inverse_bijection(&word, n, d).map_err(e)?;
                ensure(back.pair == pair, || format!("{pair}: inverse gave {}", back.pair))?;
                ensure(images[pair.c()].insert(word.word().to_vec()), || format!("{pair}: image repeated"))?;
                pairs_checked += 1;
            }
            for c in (1..dn).filter(|c| c.gcd(&d) == 1) {
                let fixed: BTreeSet<Vec<usize>> = list_fixed_circular(dn - 1, c as i64 - 1, d)
                    .map_err(e)?
                    .iter()
                    .map(|w| w.word().to_vec())
                    .collect();
                ensure(fixed == images[c], || format!("(n,d,c)=({n},{d},{c}): image differs from fixed set"))?;
            }
        }
    }
    let pair = PairWX::new(6, 3, vec![0, 1, 4, 3, 5, 2], vec![0, 1, 0, 0, 2, 1]).map_err(e)?;
    let p = build_p_sequence(&pair, 12).terms;
    ensure(p == [0, 1, 10, 15, 17, 32, 42, 43, 52, 57, 59, 74], || format!("p = {p:?}"))?;
    Ok(format!("{pairs_checked} pairs roundtrip, images equal fixed sets, worked p-sequence reproduced"))
}

fn lattice_points(m: usize, big_n: usize, k: u32) -> BTreeSet<ExponentVector> {
    let mut out = BTreeSet::new();
    let total = (k as usize + 1).pow(big_n as u32);
    for idx in 0..total {
        let mut rest = idx;
        let mut v = Vec::with_capacity(big_n);
        for _ in 0..big_n {
            v.push((rest % (k as usize + 1)) as u32);
            rest /= k as usize + 1;
        }
        if v.iter().sum::<u32>() == m as u32 * k {
            out.insert(ExponentVector::new(v));
        }
    }
    out
}

fn newton_polytopes() -> Check {
    let mut cases = 0;
    for big_n in 2..=5 {
        for m in 1..big_n {
            for k in 1..big_n {
                let p = pk_polynomial(m, big_n, k).map_err(e)?;
                ensure(p == pk_expand_oracle(m, big_n, k).map_err(e)?, || {
                    format!("P_{k} for (m,N)=({m},{big_n}) differs from expansion")
                })?;
                let support = newton_support(&p);
                ensure(support == lattice_points(m, big_n, k as u32), || {
                    format!("support of P_{k} for (m,N)=({m},{big_n}) is not the lattice point set")
                })?;
                let points: Vec<Vec<Rational>> = support
                    .iter()
                    .map(|e| e.entries().iter().map(|&a| rational_from_int(a as i64)).collect())
                    .collect();
                let hull = convex_hull(&points).map_err(e)?;
                ensure(hull == hypersimplex(m, big_n).map_err(e)?.scale_int(k as i64), || {
                    format!("Newton polytope of P_{k} for (m,N)=({m},{big_n})")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} polynomials"))
}

fn random_lattice_polytope(rng: &mut ChaCha8Rng, dim: usize) -> VPolytope {
    loop {
        let count = rng.random_range(dim + 1..=dim + 4);
        let points: Vec<Vec<Rational>> =
            (0..count).map(|_| (0..dim).map(|_| rational_from_int(rng.random_range(0..=3))).collect()).collect();
        let p = convex_hull(&points).expect("valid points");
        if p.affine_dim().expect("hull") == dim {
            return p;
        }
    }
}

fn mixed_volumes() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..20 {
        let dim = 1 + trial % 4;
        let p = random_lattice_polytope(&mut rng, dim);
        let copies = vec![p.clone(); dim];
        let mv = mixed_volume(&copies).map_err(e)?;
        let vol = p.volume().map_err(e)?.value();
        let want = vol * Rational::from_integer(factorial(dim as u64));
        ensure(mv == want, || format!("trial {trial}: MV {mv} vs n! vol {want}"))?;
    }
    for dim in 2..=3 {
        let family: Vec<VPolytope> = (0..dim).map(|_| random_lattice_polytope(&mut rng, dim)).collect();
        let base = mixed_volume(&family).map_err(e)?;
        let mut rotated = family.clone();
        for _ in 0..dim {
            rotated.rotate_left(1);
            ensure(mixed_volume(&rotated).map_err(e)? == base, || format!("rotation changed MV in R^{dim}"))?;
        }
        let mut swapped = family.clone();
        swapped.swap(0, 1);
        ensure(mixed_volume(&swapped).map_err(e)? == base, || format!("swap changed MV in R^{dim}"))?;
    }
    for big_n in 2..=4 {
        for m in (2..=4).filter(|&m| m < big_n) {
            let mv = mv_family(m, big_n).map_err(e)?;
            let want = factorial(big_n as u64) * eulerian(big_n - 1, m as i64 - 1);
            ensure(mv == want, || format!("mv_family({m},{big_n}) = {mv}, expected {want}"))?;
        }
    }
    Ok("20 random polytopes, permutation symmetry, mv_family for m,N in {2,3,4}".into())
}

fn ideal_degrees() -> Check {
    let mut summary = Vec::new();
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1), (2, 3), (3, 2)] {
        let start = Instant::now();
        let r = verify_theorem1(m, n).map_err(e)?;
        ensure(start.elapsed() < Duration::from_secs(60), || format!("({m},{n}) took {:?}", start.elapsed()))?;
        let want = eulerian(m + n - 1, m as i64 - 1);
        ensure(r.matches && r.degree.map(BigInt::from) == Some(want.clone()), || {
            format!("({m},{n}): degree {:?}, expected {want}", r.degree)
        })?;
        summary.push(format!("({m},{n})->{}", r.degree.unwrap()));
    }
    Ok(summary.join(" "))
}

fn sparse_ideal_degrees() -> Check {
    let mut summary = Vec::new();
    for (m, n, d, want) in [(3, 3, 2, 6u64), (2, 2, 2, 0), (1, 2, 3, 1)] {
        let r = verify_theorem5(m, n, d).map_err(e)?;
        ensure(r.matches && r.degree == Some(want), || format!("({m},{n},{d}): degree {:?}", r.degree))?;
        ensure(r.expected == want.to_string(), || format!("({m},{n},{d}): refined count {}", r.expected))?;
        if want == 0 {
            ensure(r.no_solutions, || "unit ideal not flagged".into())?;
        }
        summary.push(format!("({m},{n},{d})->{want}"));
    }
    Ok(summary.join(" "))
}

fn vanishing_law() -> Check {
    let mut zeros = 0;
    for n in 0..=9usize {
        for d in (1..=n + 1).filter(|d| (n + 1) % d == 0) {
            let row = refined_eulerian_row(n, d).map_err(e)?;
            for (k, value) in row.iter().enumerate() {
                if d.gcd(&(k + 1)) > 1 {
                    ensure(value.is_zero(), || format!("<{n},{k}>_{d} = {value}"))?;
                    zeros += 1;
                }
            }
        }
    }
    Ok(format!("{zeros} refined counts vanish"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("eulerian oracle equivalence", 5, eulerian_oracle),
        ("refined example", 1, refined_example),
        ("hexagon slice", 1, hexagon),
        ("hypersimplex volumes", 30, hypersimplex_volumes),
        ("fractional hypersimplex volumes", 120, fractional_volumes),
        ("bijection", 60, bijection),
        ("newton polytopes", 30, newton_polytopes),
        ("mixed volumes", 120, mixed_volumes),
        ("constant-term ideal degrees", 8 * 60, ideal_degrees),
        ("sparse constant-term ideal degrees", 60, sparse_ideal_degrees),
        ("vanishing law", 60, vanishing_law),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let outcome = match result {
            Ok(detail) if elapsed <= Duration::from_secs(*budget) => format!("PASS {detail}"),
            Ok(detail) => format!("FAIL over budget: {detail}"),
            Err(msg) => format!("FAIL {msg}"),
        };
        if outcome.starts_with("FAIL") {
            failed += 1;
        }
        println!("criterion {:>2} [{name}] {outcome} ({:.2}s / {budget}s)", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
