use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use superapollonian::real_line::{
    branch, euclid_reduce, expand_f64, expand_rational, mediant_convergents, romik_euclid, t_real, t_real_f64, RatPair,
};

#[test]
fn rationals_end_at_a_fixed_point() {
    for (p, q) in [(1, 3), (-7, 3), (5, 8), (0, 1)] {
        let (word, end) = expand_rational(&RatPair::new(p, q).unwrap());
        assert!(word.len() < 20, "{p}/{q}");
        assert!(end.is_infinite() || end.to_f64().abs() <= 1.0, "{p}/{q} ends at {end:?}");
    }
}

#[test]
fn comparison_algorithm_stops_on_a_diagonal() {
    let trace = romik_euclid(21, 13).unwrap();
    assert_eq!(trace.last().unwrap(), &(BigInt::from(1), BigInt::from(1)));
    assert!(romik_euclid(3, 5).is_err());
}

proptest! {
    #[test]
    fn euclid_trace_ends_at_the_gcd(p in -10_000i64..10_000, q in 1i64..10_000) {
        let t = euclid_reduce(p, q).unwrap();
        let g = BigInt::from(p.gcd(&q));
        prop_assert_eq!(&t.gcd, &g);
        let (x, y) = &t.bezout;
        prop_assert_eq!(x * p + y * q, g);
        let (a, b) = t.terminal();
        prop_assert!(a.is_zero() || b.is_zero() || a == b);
    }

    #[test]
    fn convergent_triples_stay_farey(x in 0.0f64..1.0) {
        let word = expand_f64(x, 25);
        let triples = mediant_convergents(&word, false).unwrap();
        for t in &triples {
            prop_assert!(t.is_farey());
        }
        let last = triples.last().unwrap();
        let lo = last.0.iter().map(|r| r.to_f64()).fold(f64::INFINITY, f64::min);
        let hi = last.0.iter().map(|r| r.to_f64()).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(lo - 1e-12 <= x && x <= hi + 1e-12);
    }

    #[test]
    fn float_map_matches_exact_map(p in -5000i64..5000, q in 1i64..5000) {
        let x = RatPair::new(p, q).unwrap();
        prop_assume!(branch(&x).is_some());
        let (_, exact) = t_real(&x).unwrap();
        let (_, float) = t_real_f64(x.to_f64()).unwrap();
        if !exact.is_infinite() {
            prop_assert!((exact.to_f64() - float).abs() <= 1e-9 * (1.0 + float.abs()));
        }
    }
}
