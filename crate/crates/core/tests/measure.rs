use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use superapollonian::group::Word;
use superapollonian::measure::density::{f_a, f_b, symmetries, symmetry_defect, transfer_defect};
use superapollonian::measure::experiments::experiment_random_points;
use superapollonian::measure::extension::extension_region_check;
use superapollonian::measure::regions::{farey_measure, region_measure_with};
use superapollonian::planar::{RegionKind, RegionLabel, Side};

fn point() -> impl Strategy<Value = Complex64> {
    (-0.5f64..1.5, -0.5f64..1.5).prop_map(|(x, y)| Complex64::new(x, y))
}

#[test]
fn one_region_has_a_quarter_of_pi_squared() {
    let r = region_measure_with(RegionLabel::new(Side::B, RegionKind::Triangle, 2), 1e-8).unwrap();
    assert!((r.value - PI * PI / 4.0).abs() < 1e-7, "{r:?}");
}

#[test]
fn farey_measures_add_up() {
    // the children of a region split its measure
    let parent = farey_measure(Side::B, &"S1".parse::<Word>().unwrap()).unwrap();
    let children: f64 = ["S1 S2", "S1 S3", "S1 S4", "S1 S1P"]
        .iter()
        .map(|w| farey_measure(Side::B, &w.parse::<Word>().unwrap()).unwrap())
        .sum();
    assert!((parent - children).abs() < 1e-5, "{parent} vs {children}");
}

#[test]
fn random_points_are_reproducible() {
    let a = experiment_random_points(Side::B, 30, 60, 11).unwrap();
    let b = experiment_random_points(Side::B, 30, 60, 11).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.observed, experiment_random_points(Side::B, 30, 60, 12).unwrap().observed);
}

#[test]
fn extension_respects_the_region_pairing() {
    let report = extension_region_check(2_000, 5);
    assert_eq!(report.violations, 0, "{report:?}");
    assert!(report.max_roundtrip_error < 1e-9, "{report:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn densities_are_positive(z in point()) {
        prop_assert!(f_b(z) > 0.0);
        prop_assert!(f_a(z) > 0.0);
    }

    #[test]
    fn density_symmetries_hold(z in point()) {
        let scale = f_b(z).abs().max(1.0);
        for s in symmetries() {
            prop_assert!(symmetry_defect(&s, z).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn densities_are_transfer_invariant(z in point()) {
        for side in [Side::A, Side::B] {
            let scale = if side == Side::A { f_a(z) } else { f_b(z) };
            prop_assert!(transfer_defect(side, z).abs() <= 1e-8 * scale.max(1.0));
        }
    }
}
