use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use eulvol::arith::{factorial, rational_from_int};
use eulvol::bijection::{forward, inverse_bijection, PairWX};
use eulvol::combinatorics::{eulerian, eulerian_row, refined_eulerian_via_pairs};
use eulvol::groebner::{buchberger, Ideal, MonomialOrder};
use eulvol::laurent::{coefficients_from_roots, constant_terms_numeric, pk_polynomial};
use eulvol::polytope::{convex_hull, minkowski_sum};
use eulvol::{ExponentVector, MultiPoly, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn lattice_points(dim: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec((-2i64..=2).prop_map(rational_from_int), dim), 1..9)
}

fn pair_strategy() -> impl Strategy<Value = PairWX> {
    (1usize..=6, 1usize..=4)
        .prop_flat_map(|(n, d)| {
            let tail = Just((1..n).collect::<Vec<_>>()).prop_shuffle();
            (Just(n), Just(d), tail, prop::collection::vec(0..d, n))
        })
        .prop_filter_map("valid pair", |(n, d, tail, x)| {
            let mut w = vec![0];
            w.extend(tail);
            PairWX::new(n, d, w, x).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn eulerian_rows_sum_to_factorial_and_are_symmetric(n in 1usize..12) {
        let row = eulerian_row(n);
        prop_assert_eq!(row.iter().sum::<BigInt>(), factorial(n as u64));
        for k in 0..n {
            prop_assert_eq!(eulerian(n, k as i64), eulerian(n, (n - 1 - k) as i64));
        }
    }

    #[test]
    fn refined_counts_with_d_one_are_eulerian(n in 1usize..8, c in 1usize..8) {
        prop_assume!(c < n);
        prop_assert_eq!(refined_eulerian_via_pairs(n, c, 1).unwrap(), eulerian(n - 1, c as i64 - 1));
    }

    #[test]
    fn constant_terms_match_pk_at_roots(
        m in 1usize..4,
        extra in 1usize..3,
        k in 1usize..=3,
        head in prop::collection::vec(nonzero_rational(), 3),
    ) {
        let big_n = m + extra;
        prop_assume!(big_n <= 4 && k < big_n);
        // the last root makes the product equal to 1
        let mut roots = head[..big_n - 1].to_vec();
        let product: Rational = roots.iter().product();
        roots.push(Rational::one() / product);
        let interior = coefficients_from_roots(&roots);
        let numeric = constant_terms_numeric(&interior, m, big_n - m, k).unwrap();
        let symbolic = pk_polynomial(m, big_n, k).unwrap().evaluate(&roots).unwrap();
        prop_assert_eq!(&numeric[k - 1], &symbolic);
    }

    #[test]
    fn sparse_constant_terms_vanish(
        m in 1usize..5,
        n in 1usize..5,
        d in 2usize..4,
        values in prop::collection::vec(small_rational(), 8),
    ) {
        prop_assume!((m + n) % d == 0);
        let interior: Vec<Rational> = (0..m + n - 1)
            .map(|i| {
                let e = i as i64 - m as i64 + 1;
                if (e - n as i64).rem_euclid(d as i64) == 0 { values[i].clone() } else { Rational::zero() }
            })
            .collect();
        let terms = constant_terms_numeric(&interior, m, n, m + n - 1).unwrap();
        for (i, t) in terms.iter().enumerate() {
            let k = i + 1;
            if (m * k) % d != 0 {
                prop_assert!(t.is_zero(), "k = {} gives {}", k, t);
            }
        }
    }

    #[test]
    fn bijection_roundtrips(pair in pair_strategy()) {
        prop_assume!(num_integer::gcd(pair.c(), pair.d()) == 1);
        let word = forward(&pair).unwrap();
        prop_assert!(word.is_fixed_by_shift(pair.n()));
        prop_assert_eq!(word.cyclic_descent_count(), pair.c());
        let back = inverse_bijection(&word, pair.n(), pair.d()).unwrap();
        prop_assert_eq!(back.pair, pair);
    }

    #[test]
    fn hull_contains_inputs(points in lattice_points(3)) {
        let hull = convex_hull(&points).unwrap();
        for v in hull.vertices() {
            prop_assert!(points.contains(v));
        }
        for facet in hull.facets().unwrap() {
            for p in &points {
                let lhs: Rational = facet.normal.iter().zip(p).map(|(a, x)| Rational::from_integer(a.clone()) * x).sum();
                prop_assert!(lhs <= facet.offset);
            }
        }
        let mut reversed = points.clone();
        reversed.reverse();
        prop_assert_eq!(convex_hull(&reversed).unwrap(), hull);
    }

    #[test]
    fn minkowski_volume_is_superadditive(a in lattice_points(2), b in lattice_points(2)) {
        let (p, q) = (convex_hull(&a).unwrap(), convex_hull(&b).unwrap());
        let sum = minkowski_sum(&p, &q).unwrap();
        let vol = |x: &eulvol::polytope::VPolytope| x.volume().unwrap().value();
        prop_assert!(vol(&sum) >= vol(&p) + vol(&q));
        prop_assert!(sum.vertices().len() <= p.vertices().len() + q.vertices().len());
    }

    #[test]
    fn groebner_bases_are_reduced(
        raw in prop::collection::vec(prop::collection::vec(((0u32..3, 0u32..3), small_rational()), 1..4), 1..4),
    ) {
        let gens: Vec<MultiPoly> = raw
            .into_iter()
            .map(|terms| {
                MultiPoly::from_terms(2, terms.into_iter().map(|((a, b), c)| (ExponentVector::new(vec![a, b]), c)))
                    .unwrap()
            })
            .collect();
        let ideal = Ideal::new(2, gens.clone()).unwrap();
        let basis = buchberger(&ideal, &MonomialOrder::grevlex(2)).unwrap();
        prop_assert!(basis.is_reduced());
        prop_assert!(basis.s_pairs_reduce_to_zero());
        for g in &gens {
            prop_assert!(basis.contains(g).unwrap());
        }
        let flipped = buchberger(&ideal, &MonomialOrder::with_ranking(vec![1, 0]).unwrap()).unwrap();
        prop_assert_eq!(basis.is_zero_dimensional(), flipped.is_zero_dimensional());
        if basis.is_zero_dimensional() {
            prop_assert_eq!(basis.degree().unwrap(), flipped.degree().unwrap());
        }
    }
}
