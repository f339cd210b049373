//! Digit-frequency experiments: all Lorentz quadruples up to a height, and
//! floating expansions of random points.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_integer::Integer as _;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::closed_form::{first_digit_distribution, predicted_frequencies};
use super::transfer::{second_digit_swap_probability, SphereGrid};
use crate::error::{domain, Result};
use crate::group::Letter;
use crate::planar::{expand_float, Side, DEFAULT_EPSILON};
use crate::quadruple::t_l_word_small;

/// Sphere lattice size used for the second-digit prediction.
pub const TRANSFER_GRID: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyReport {
    pub experiment: String,
    pub observed: BTreeMap<String, f64>,
    pub predicted: BTreeMap<String, f64>,
    /// Where each prediction comes from.
    pub basis: BTreeMap<String, String>,
    pub sample_size: usize,
    /// Samples left out (boundary hits in floating expansions).
    pub excluded: usize,
    pub seed: Option<u64>,
    /// Agreement tolerance the experiment is judged by.
    pub tolerance: f64,
}

impl FrequencyReport {
    pub fn to_csv_rows(&self) -> Vec<[String; 4]> {
        self.observed
            .iter()
            .map(|(k, v)| {
                let p = self.predicted.get(k).map(|p| format!("{p}")).unwrap_or_default();
                let b = self.basis.get(k).cloned().unwrap_or_default();
                [k.clone(), format!("{v}"), p, b]
            })
            .collect()
    }
}

/// Pooled window counts over many words. Addition is order independent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WindowCounts {
    pub words: usize,
    pub pairs: usize,
    pub swap_pairs: usize,
    pub inversion_pairs: usize,
    pub triples: usize,
    pub swap_triples: usize,
    pub inversion_triples: usize,
    /// Words with at least one letter, and those starting with a swap.
    pub first: usize,
    pub first_swap: usize,
    pub second: usize,
    pub second_swap: usize,
}

impl WindowCounts {
    pub fn of_word(w: &[Letter]) -> Self {
        let runs = |n: usize| {
            let mut all = 0;
            let mut swaps = 0;
            let mut invs = 0;
            for win in w.windows(n) {
                all += 1;
                if win.iter().all(|l| l.is_swap()) {
                    swaps += 1;
                } else if win.iter().all(|l| !l.is_swap()) {
                    invs += 1;
                }
            }
            (all, swaps, invs)
        };
        let (pairs, swap_pairs, inversion_pairs) = runs(2);
        let (triples, swap_triples, inversion_triples) = runs(3);
        WindowCounts {
            words: 1,
            pairs,
            swap_pairs,
            inversion_pairs,
            triples,
            swap_triples,
            inversion_triples,
            first: usize::from(!w.is_empty()),
            first_swap: usize::from(w.first().is_some_and(|l| l.is_swap())),
            second: usize::from(w.len() >= 2),
            second_swap: usize::from(w.get(1).is_some_and(|l| l.is_swap())),
        }
    }

    pub fn add(self, o: Self) -> Self {
        WindowCounts {
            words: self.words + o.words,
            pairs: self.pairs + o.pairs,
            swap_pairs: self.swap_pairs + o.swap_pairs,
            inversion_pairs: self.inversion_pairs + o.inversion_pairs,
            triples: self.triples + o.triples,
            swap_triples: self.swap_triples + o.swap_triples,
            inversion_triples: self.inversion_triples + o.inversion_triples,
            first: self.first + o.first,
            first_swap: self.first_swap + o.first_swap,
            second: self.second + o.second,
            second_swap: self.second_swap + o.second_swap,
        }
    }

    fn rate(n: usize, d: usize) -> f64 {
        if d == 0 {
            0.0
        } else {
            n as f64 / d as f64
        }
    }

    /// Substring rates: matching windows over all windows of that length.
    pub fn substring_rates(&self) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        m.insert("two_swaps".into(), Self::rate(self.swap_pairs, self.pairs));
        m.insert("two_inversions".into(), Self::rate(self.inversion_pairs, self.pairs));
        m.insert("three_swaps".into(), Self::rate(self.swap_triples, self.triples));
        m.insert("three_inversions".into(), Self::rate(self.inversion_triples, self.triples));
        m
    }

    /// First and second digit rates among words long enough to have them.
    pub fn digit_rates(&self) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        m.insert("first_swap".into(), Self::rate(self.first_swap, self.first));
        m.insert("first_inversion".into(), Self::rate(self.first - self.first_swap, self.first));
        m.insert("second_swap".into(), Self::rate(self.second_swap, self.second));
        m.insert("second_inversion".into(), Self::rate(self.second - self.second_swap, self.second));
        m
    }
}

/// X_N: Lorentz quadruples with 0 < a ≤ N and gcd(b, c, d) = 1.
pub fn bounded_quadruples(n: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in -a..=a {
            for c in -a..=a {
                let r = a * a - b * b - c * c;
                if r < 0 {
                    continue;
                }
                let d = r.isqrt();
                if d * d != r {
                    continue;
                }
                let ds: &[i64] = if d == 0 { &[0] } else { &[-d, d] };
                for &d in ds {
                    if b.gcd(&c).gcd(&d) == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

fn conjectural(keys: &[&str]) -> (BTreeMap<String, f64>, BTreeMap<String, String>) {
    let all = predicted_frequencies();
    let mut p = BTreeMap::new();
    let mut b = BTreeMap::new();
    for &k in keys {
        p.insert(k.to_string(), all[k]);
        b.insert(k.to_string(), "conjectural (assumes ergodicity of T_A, T_B)".to_string());
    }
    (p, b)
}

const SUBSTRINGS: [&str; 4] = ["two_swaps", "two_inversions", "three_swaps", "three_inversions"];

/// Expand every element of X_N with T_L and tabulate digits and substrings.
pub fn experiment_bounded_quadruples(n: i64) -> Result<FrequencyReport> {
    if n < 1 {
        return domain("the height bound must be at least 1");
    }
    let quads = bounded_quadruples(n);
    let counts = quads
        .par_iter()
        .map(|&q| t_l_word_small(q).map(|w| WindowCounts::of_word(&w)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(WindowCounts::default(), WindowCounts::add);
    let mut observed = counts.substring_rates();
    observed.extend(counts.digit_rates());

    let (mut predicted, mut basis) = conjectural(&SUBSTRINGS);
    let (p_inv, p_swap) = first_digit_distribution();
    let limit = "proven limit as N grows".to_string();
    predicted.insert("first_swap".into(), p_swap);
    predicted.insert("first_inversion".into(), p_inv);
    basis.insert("first_swap".into(), limit.clone());
    basis.insert("first_inversion".into(), limit);
    let second = second_digit_swap_probability(&SphereGrid::fibonacci(TRANSFER_GRID));
    let numeric = format!("limit as N grows, transfer operator on {TRANSFER_GRID} sphere points");
    predicted.insert("second_swap".into(), second);
    predicted.insert("second_inversion".into(), 1.0 - second);
    basis.insert("second_swap".into(), numeric.clone());
    basis.insert("second_inversion".into(), numeric);

    Ok(FrequencyReport {
        experiment: format!("bounded Lorentz quadruples, a <= {n}"),
        observed,
        predicted,
        basis,
        sample_size: quads.len(),
        excluded: 0,
        seed: None,
        tolerance: 0.002,
    })
}

/// Expand `count` uniform points of the unit square for `steps` letters
/// and tabulate substrings. Expansions that come within the boundary
/// tolerance of a region boundary, or stop early, are excluded.
pub fn experiment_random_points(side: Side, count: usize, steps: usize, seed: u64) -> Result<FrequencyReport> {
    if count == 0 || steps < 3 {
        return domain("need at least one point and three steps");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Complex64> = (0..count).map(|_| Complex64::new(rng.gen(), rng.gen())).collect();
    let words: Vec<Option<Vec<Letter>>> = points
        .par_iter()
        .map(|&z| {
            let r = expand_float(side, z, DEFAULT_EPSILON, steps);
            (!r.boundary_hit && r.word.len() == steps).then(|| r.word.letters().to_vec())
        })
        .collect();
    let excluded = words.iter().filter(|w| w.is_none()).count();
    let counts =
        words.iter().flatten().map(|w| WindowCounts::of_word(w)).fold(WindowCounts::default(), WindowCounts::add);
    let (predicted, basis) = conjectural(&SUBSTRINGS);
    Ok(FrequencyReport {
        experiment: format!("random points of the unit square, T_{side:?}, {steps} letters"),
        observed: counts.substring_rates(),
        predicted,
        basis,
        sample_size: count - excluded,
        excluded,
        seed: Some(seed),
        tolerance: 0.03,
    })
}
