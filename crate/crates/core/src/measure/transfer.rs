//! The transfer operator of T_sph on a Fibonacci sphere lattice.

use rayon::prelude::*;

use crate::group::{Kind, Letter};
use crate::quadruple::t_sph_step_float;

/// Boundary tolerance for branch tests on the sphere.
const SPHERE_EPS: f64 = 1e-13;

/// Quasi-uniform points on S², each carrying weight 1/n of μ = dA/4π.
#[derive(Clone, Debug)]
pub struct SphereGrid {
    pub points: Vec<[f64; 3]>,
}

impl SphereGrid {
    pub fn fibonacci(n: usize) -> Self {
        let golden = std::f64::consts::PI * (1.0 + 5f64.sqrt());
        let points = (0..n)
            .into_par_iter()
            .map(|k| {
                let t = k as f64 + 0.5;
                let z = 1.0 - 2.0 * t / n as f64;
                let r = (1.0 - z * z).max(0.0).sqrt();
                let th = golden * t;
                [r * th.cos(), r * th.sin(), z]
            })
            .collect();
        SphereGrid { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// ∫ f dμ for grid values f.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        values.iter().sum::<f64>() / self.points.len() as f64
    }

    /// ∫ over the set where T_sph applies a swap.
    pub fn integrate_swap_region(&self, values: &[f64]) -> f64 {
        self.points
            .iter()
            .zip(values)
            .filter(|(p, _)| branch(**p).is_some_and(|l| l.kind() == Kind::Swap))
            .map(|(_, v)| v)
            .sum::<f64>()
            / self.points.len() as f64
    }
}

/// Letter T_sph uses at p, if any.
pub fn branch(p: [f64; 3]) -> Option<Letter> {
    t_sph_step_float(p, SPHERE_EPS).map(|(l, _)| l)
}

/// (𝓕f)(X̃) = Σ over letters L with T_sph(L X̃) using L of f(L X̃)/(L(1, X̃))₀².
/// The weight is the inverse Jacobian of T_sph for area on the sphere.
pub fn transfer_apply(grid: &SphereGrid, f: &(dyn Fn([f64; 3]) -> f64 + Sync)) -> Vec<f64> {
    grid.points
        .par_iter()
        .map(|&x| {
            let v = [1.0, x[0], x[1], x[2]];
            Letter::ALL
                .iter()
                .map(|&l| {
                    let m = l.lorentz_small();
                    let img: [f64; 4] =
                        std::array::from_fn(|i| (0..4).map(|k| m[i][k] as f64 * v[k]).sum::<f64>());
                    let y = [img[1] / img[0], img[2] / img[0], img[3] / img[0]];
                    if branch(y) == Some(l) {
                        f(y) / (img[0] * img[0])
                    } else {
                        0.0
                    }
                })
                .sum()
        })
        .collect()
}

/// Limiting second-digit swap probability of Lorentz quadruples: the swap
/// region's mass under 𝓕(1)dμ.
pub fn second_digit_swap_probability(grid: &SphereGrid) -> f64 {
    let values = transfer_apply(grid, &|_| 1.0);
    grid.integrate_swap_region(&values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::closed_form::first_digit_distribution;

    #[test]
    fn swap_area_matches_first_digit_law() {
        let grid = SphereGrid::fibonacci(200_000);
        let ones = vec![1.0; grid.len()];
        let (_, swap) = first_digit_distribution();
        assert!((grid.integrate_swap_region(&ones) - swap).abs() < 1e-4);
    }

    #[test]
    fn mass_is_conserved() {
        let grid = SphereGrid::fibonacci(200_000);
        let f1 = transfer_apply(&grid, &|_| 1.0);
        assert!((grid.integrate(&f1) - 1.0).abs() < 1e-4);
        // a non-constant function: mass of z² is 1/3
        let fz = transfer_apply(&grid, &|p| p[2] * p[2]);
        assert!((grid.integrate(&fz) - 1.0 / 3.0).abs() < 1e-4);
        let p = grid.integrate_swap_region(&f1);
        assert!((p - 0.3517).abs() < 2e-3, "{p}");
    }
}
