//! Measures of base regions and Farey regions under μ_A and μ_B.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::density::region_formula;
use super::quadrature::{integrate_domain, Domain, QuadratureResult};
use crate::error::{domain, Result};
use crate::geometry::{farey_region, letter_region};
use crate::group::Word;
use crate::planar::{RegionKind, RegionLabel, Side};

/// Default absolute tolerance for region measures.
pub const MEASURE_TOLERANCE: f64 = 1e-7;

/// μ of the whole sphere on either side.
pub const TOTAL_MEASURE: f64 = 2.0 * PI * PI;

fn single(label: RegionLabel) -> Word {
    Word::new(vec![label.letter()])
}

pub fn region_measure_with(label: RegionLabel, tol: f64) -> Result<QuadratureResult> {
    let region = farey_region(label.side, &single(label))?;
    let g = move |z: Complex64| region_formula(label, z);
    integrate_domain(&Domain::from_region(&region), &g, &[], tol)
}

/// μ of one of the sixteen base regions, with its own side's density.
pub fn region_measure(label: RegionLabel) -> Result<f64> {
    Ok(region_measure_with(label, MEASURE_TOLERANCE)?.value)
}

/// μ_side(F_side(word)). The density on a Farey region is the formula of
/// the base region of its first letter.
pub fn farey_measure(side: Side, word: &Word) -> Result<f64> {
    let Some(&first) = word.letters().first() else {
        return domain("Farey regions need a nonempty word");
    };
    let region = farey_region(side, word)?;
    let label = letter_region(side, first);
    let g = move |z: Complex64| region_formula(label, z);
    Ok(integrate_domain(&Domain::from_region(&region), &g, &[], MEASURE_TOLERANCE)?.value)
}

/// The dual-side regions paired with `label` in the natural extension:
/// B_i pairs with A_i and the A_j′ (j ≠ i); B_i′ with every A_j′ and the
/// A_j (j ≠ i). The A side is symmetric.
pub fn paired_family(label: RegionLabel) -> Vec<RegionLabel> {
    let other = label.side.dual();
    let i = label.index;
    let mut out = Vec::new();
    for j in 1..=4 {
        let circle = RegionLabel::new(other, RegionKind::Circle, j);
        let triangle = RegionLabel::new(other, RegionKind::Triangle, j);
        match label.kind {
            RegionKind::Circle => {
                if j == i {
                    out.push(circle);
                } else {
                    out.push(triangle);
                }
            }
            RegionKind::Triangle => {
                out.push(triangle);
                if j != i {
                    out.push(circle);
                }
            }
        }
    }
    out.sort();
    out
}

/// The density at z computed from its definition: ∫ |z − w|⁻⁴ over the
/// regions paired with the region containing z. Independent of the closed
/// formulas, and slow.
pub fn density_by_integration(label: RegionLabel, z: Complex64) -> Result<f64> {
    let g = move |w: Complex64| (z - w).norm_sqr().powi(-2);
    let mut total = 0.0;
    for other in paired_family(label) {
        let region = farey_region(other.side, &single(other))?;
        total += integrate_domain(&Domain::from_region(&region), &g, &[z], 1e-9)?.value;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::density::DensityEvaluator;

    #[test]
    fn family_sizes() {
        for side in [Side::A, Side::B] {
            for l in RegionLabel::all(side) {
                let n = paired_family(l).len();
                assert_eq!(n, if l.kind == RegionKind::Circle { 4 } else { 7 });
            }
        }
    }

    #[test]
    fn all_sixteen_regions_have_equal_measure() {
        for side in [Side::A, Side::B] {
            let mut total = 0.0;
            for l in RegionLabel::all(side) {
                let m = region_measure(l).unwrap();
                assert!((m - PI * PI / 4.0).abs() < 1e-6, "{l}: {m}");
                total += m;
            }
            assert!((total - TOTAL_MEASURE).abs() < 1e-5);
        }
    }

    #[test]
    fn perp_and_inverse_preserve_measure() {
        use crate::group::{normal_words, NormalForm};
        let words: Vec<Word> = (1..=4).flat_map(|n| normal_words(n, NormalForm::Swap)).collect();
        for k in 0..10 {
            let m = &words[(k * 7919 + 13) % words.len()];
            let base = farey_measure(Side::B, m).unwrap();
            let perp = farey_measure(Side::B, &m.perp()).unwrap();
            let inv = farey_measure(Side::A, &m.inverse()).unwrap();
            assert!((base - perp).abs() < 1e-5, "{m}: {base} vs perp {perp}");
            assert!((base - inv).abs() < 1e-5, "{m}: {base} vs inverse {inv}");
        }
    }

    #[test]
    fn two_swap_regions_match_closed_form() {
        let mut total = 0.0;
        for i in 1..=4u8 {
            for j in (1..=4u8).filter(|&j| j != i) {
                let w = Word::new(vec![crate::group::Letter::swap(i), crate::group::Letter::swap(j)]);
                total += farey_measure(Side::B, &w).unwrap();
            }
        }
        let predicted = crate::measure::predicted_frequencies()["two_swaps"];
        assert!((total / TOTAL_MEASURE - predicted).abs() < 1e-4, "{}", total / TOTAL_MEASURE);
    }

    #[test]
    fn formulas_match_definition() {
        let pts = [
            (Side::B, Complex64::new(0.3, -0.4)),
            (Side::B, Complex64::new(0.1, 0.5)),
            (Side::B, Complex64::new(0.9, 0.4)),
            (Side::B, Complex64::new(0.5, 0.2)),
            (Side::B, Complex64::new(2.0, 0.5)),
            (Side::A, Complex64::new(0.5, 0.8)),
            (Side::A, Complex64::new(-0.5, 0.3)),
            (Side::A, Complex64::new(0.2, 0.5)),
        ];
        for (side, z) in pts {
            let class = crate::planar::classify_float(side, z, 1e-9);
            let crate::planar::Classification::Region(label) = class.class else { panic!() };
            let direct = density_by_integration(label, z).unwrap();
            let formula = DensityEvaluator::new(side).eval(z);
            assert!((direct - formula).abs() < 1e-7 * formula.max(1.0), "{label} {z}: {direct} vs {formula}");
        }
    }
}
