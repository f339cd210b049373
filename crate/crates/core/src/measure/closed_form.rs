//! Hyperbolic areas I and J and the frequencies predicted from them.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Hyperbolic area of a disk of radius r centred at height b in the upper
/// half-plane, α = b/r > 1.
pub fn closed_form_i(alpha: f64) -> Result<f64> {
    if !(alpha > 1.0) {
        return domain(format!("I(α) needs α > 1, got {alpha}"));
    }
    Ok(2.0 * PI * (alpha / (alpha * alpha - 1.0).sqrt() - 1.0))
}

/// Hyperbolic area of the ideal triangle 0, 1, ∞ translated up by α:
/// ∫₀¹ dx/(α + √(x(1−x))).
pub fn closed_form_j(alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return domain(format!("J(α) needs finite α ≥ 0, got {alpha}"));
    }
    if alpha == 0.0 {
        return Ok(PI);
    }
    let t = 1.0 / (2.0 * alpha);
    let ratio = if (t - 1.0).abs() < 1e-6 {
        // arccos t/√(1−t²) = 1 − (t−1)/3 + …, and the same for arccosh
        1.0 - (t - 1.0) / 3.0
    } else if t < 1.0 {
        t.acos() / (1.0 - t * t).sqrt()
    } else {
        t.acosh() / (t * t - 1.0).sqrt()
    };
    Ok(PI - 2.0 * ratio)
}

/// J by direct quadrature of its defining integral.
pub fn j_by_quadrature(alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return domain(format!("J(α) needs α ≥ 0, got {alpha}"));
    }
    let f = move |x: f64| 1.0 / (alpha + (x * (1.0 - x)).sqrt());
    Ok(super::quadrature::integrate_1d(&f, 0.0, 1.0, &[0.5], 1e-13)?.value)
}

/// I by direct quadrature.
pub fn i_by_quadrature(alpha: f64) -> Result<f64> {
    if !(alpha > 1.0) {
        return domain(format!("I(α) needs α > 1, got {alpha}"));
    }
    let f = move |x: f64| {
        let s = 1.0 - x * x;
        2.0 * s.max(0.0).sqrt() / (alpha * alpha - s)
    };
    Ok(super::quadrature::integrate_1d(&f, -1.0, 1.0, &[0.0], 1e-13)?.value)
}

/// Frequency of an alternating run of n swaps (or n inversions) on two fixed indices.
pub fn alt_run(n: u32) -> f64 {
    let n = f64::from(n);
    closed_form_j(n - 1.0).expect("n ≥ 1") / (8.0 * PI)
}

/// Frequency of a run fixing one vertex for exactly n steps.
pub fn schmidt(n: u32) -> f64 {
    let j = |k: f64| closed_form_j(k).expect("k ≥ 0");
    let n = f64::from(n);
    (j(n - 1.0) - 2.0 * j(n) + j(n + 1.0)) / (8.0 * PI)
}

/// Frequencies expected for almost every point if T_A and T_B are ergodic
/// (conjectural).
pub fn predicted_frequencies() -> BTreeMap<String, f64> {
    let j1 = closed_form_j(1.0).unwrap();
    let i4 = closed_form_i(4.0).unwrap();
    let two = 12.0 * (PI / 4.0) * j1 / (2.0 * PI * PI);
    let three = 12.0 / (8.0 * PI) * (j1 - i4);
    let mut m = BTreeMap::new();
    m.insert("two_swaps".into(), two);
    m.insert("two_inversions".into(), two);
    m.insert("three_swaps".into(), three);
    m.insert("three_inversions".into(), three);
    for n in 1..=3 {
        m.insert(format!("schmidt_{n}"), schmidt(n));
        m.insert(format!("alt_run_{n}"), alt_run(n));
    }
    m
}

/// Limiting first-digit law for Lorentz quadruples: (p_inversion, p_swap).
pub fn first_digit_distribution() -> (f64, f64) {
    let r3 = 3f64.sqrt();
    (2.0 * (1.0 - 1.0 / r3), 2.0 / r3 - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!((closed_form_j(1.0).unwrap() - PI * (1.0 - 4.0 / (3.0 * 3f64.sqrt()))).abs() < 1e-15);
        assert!((closed_form_j(1.0).unwrap() - 0.723193).abs() < 1e-6);
        assert!((closed_form_i(4.0).unwrap() - 0.2060606).abs() < 1e-7);
        assert_eq!(closed_form_j(0.0).unwrap(), PI);
        assert!(closed_form_i(1.0).is_err());
        assert!(closed_form_j(-1.0).is_err());
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for a in [0.0, 0.2, 0.5, 0.5000001, 1.0, 2.0, 3.0, 4.0, 10.0] {
            let d = closed_form_j(a).unwrap() - j_by_quadrature(a).unwrap();
            assert!(d.abs() < 1e-8, "J({a}) off by {d}");
        }
        for a in [1.5, 2.0, 4.0] {
            let d = closed_form_i(a).unwrap() - i_by_quadrature(a).unwrap();
            assert!(d.abs() < 1e-8, "I({a}) off by {d}");
        }
    }

    #[test]
    fn predictions() {
        // published values carry six places
        let six_places = |v: f64, lit: f64| (v - lit).abs() < 1e-6;
        let p = predicted_frequencies();
        assert!(six_places(p["two_swaps"], 0.345299));
        assert!(six_places(p["three_swaps"], 0.246913));
        assert!(six_places(p["schmidt_1"], 0.084117));
        assert!(six_places(p["schmidt_2"], 0.007180));
        assert!(six_places(p["schmidt_3"], 0.002249));
        let (inv, swap) = first_digit_distribution();
        assert!((inv - 0.84529946).abs() < 1e-8 && (swap - 0.15470053).abs() < 1e-8);
        assert!((inv + swap - 1.0).abs() < 1e-15);
    }
}
