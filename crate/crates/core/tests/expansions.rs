use num_complex::Complex64;
use proptest::prelude::*;
use superapollonian::gaussian::{parity_class, GaussianInt, ProjectivePoint};
use superapollonian::geometry::{farey_region, Viewport};
use superapollonian::group::{normal_words, NormalForm};
use superapollonian::planar::{convergents, expand_exact, expand_float, reconstruct, RegionLabel, Side};

fn rational() -> impl Strategy<Value = ProjectivePoint> {
    (-400i64..=400, -400i64..=400, -300i64..=300, -300i64..=300)
        .prop_filter("nonzero denominator", |&(_, _, c, d)| c != 0 || d != 0)
        .prop_map(|(a, b, c, d)| ProjectivePoint::new(GaussianInt::new(a, b), GaussianInt::new(c, d)).unwrap())
}

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::A), Just(Side::B)]
}

#[test]
fn simple_rationals() {
    let third = ProjectivePoint::from_ints(1, 3).unwrap();
    let r = expand_exact(Side::B, &third, 100).unwrap();
    assert_eq!(r.word.to_string(), "S2 S4");
    assert_eq!(r.terminal.unwrap().label(), "1");

    let zero = ProjectivePoint::from_ints(0, 1).unwrap();
    assert!(expand_exact(Side::B, &zero, 100).unwrap().word.is_empty());
}

#[test]
fn regions_cover_their_side() {
    for side in [Side::A, Side::B] {
        assert_eq!(RegionLabel::all(side).len(), 8);
    }
    // every normal word of length 2 names a Farey region
    for w in normal_words(2, NormalForm::Swap) {
        let region = farey_region(Side::B, &w).unwrap();
        assert_eq!(region.word(), &w);
    }
    assert!(Viewport::new(1.0, 0.0, 0.0, 1.0).is_err());
}

#[test]
fn float_and_exact_agree_on_prefix() {
    let z = ProjectivePoint::new(GaussianInt::new(1234, 567), GaussianInt::new(2001, -13)).unwrap();
    let exact = expand_exact(Side::B, &z, 1000).unwrap();
    let float = expand_float(Side::B, z.to_complex(), 1e-12, 8);
    assert_eq!(float.word.letters(), &exact.word.letters()[..float.word.len()]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exact_expansions_end_at_the_parity_class(z in rational(), side in side()) {
        let r = expand_exact(side, &z, 100_000).unwrap();
        prop_assert!(!r.truncated);
        prop_assert_eq!(r.terminal, Some(parity_class(&z)));
        prop_assert_eq!(reconstruct(&r), Some(z));
    }

    #[test]
    fn expansion_words_are_normal(z in rational(), side in side()) {
        let r = expand_exact(side, &z, 100_000).unwrap();
        prop_assert!(r.word.is_normal(NormalForm::Swap) || r.word.is_normal(NormalForm::Invert));
        prop_assert_eq!(r.word.normalize(NormalForm::Swap).len(), r.word.len());
    }

    #[test]
    fn convergents_approach_the_point(x in 0.01f64..0.99, y in 0.01f64..0.99) {
        let r = expand_float(Side::B, Complex64::new(x, y), 1e-12, 30);
        prop_assume!(r.word.len() >= 12);
        let cs = convergents(&r.word, 12).unwrap();
        for c in &cs {
            if let Some(last) = c.last().filter(|p| !p.is_infinity()) {
                prop_assert!((last.to_complex() - Complex64::new(x, y)).norm() < 0.5);
            }
        }
    }
}
