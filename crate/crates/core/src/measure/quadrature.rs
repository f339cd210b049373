//! Adaptive quadrature over planar regions cut out by oriented circles.
//!
//! A region is first moved by w = 1/(z − z₀), with z₀ a Gaussian integer
//! well outside it, so that it becomes bounded with no lines among its
//! sides. The integrand picks up the Jacobian 1/|w|⁴. The w-region is then
//! integrated as an iterated integral: for each x the y-section is a union
//! of intervals with exact endpoints, and the x-range is split wherever a
//! circle starts, ends, meets another, or passes a density singularity.
//! Each piece is refined by Gauss-Kronrod bisection until the error
//! estimate meets its share of the tolerance.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::gaussian::{ExtendedMobius, GaussianInt, ParityClass};
use crate::geometry::{AccCircle, FareyRegion};

/// Side condition of a region: strictly inside (form < 0) or outside (form ≥ 0).
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub circle: AccCircle,
    pub inside: bool,
}

/// Intersection of circle constraints.
#[derive(Clone, Debug, PartialEq)]
pub struct Domain {
    pub constraints: Vec<Constraint>,
}

impl Domain {
    pub fn from_region(region: &FareyRegion) -> Self {
        let constraints = match region {
            FareyRegion::Circle { circle, .. } => vec![Constraint { circle: circle.clone(), inside: true }],
            FareyRegion::Triangle { sides, circumcircle, .. } => sides
                .iter()
                .map(|s| Constraint { circle: s.clone(), inside: false })
                .chain(std::iter::once(Constraint { circle: circumcircle.clone(), inside: true }))
                .collect(),
        };
        Domain { constraints }
    }

    /// Amount by which z fails the worst constraint (negative when inside).
    fn violation(&self, z: Complex64) -> f64 {
        self.constraints
            .iter()
            .map(|c| {
                let d = c.circle.signed_distance(z);
                if c.inside {
                    d
                } else {
                    -d
                }
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.violation(z) < 0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Sum of the panel error estimates.
    pub error: f64,
}

/// Panel budget for a single 1-D piece.
const MAX_PANELS: usize = 4000;
/// Panel budget for the inner integrals of a planar region. Near the fixed
/// points the closed-form densities lose digits to cancellation and the
/// inner error stalls; the stalled error is carried into the outer result.
const INNER_PANELS: usize = 300;
const RELATIVE_FLOOR: f64 = 1e-10;

// Gauss-Kronrod 7/15 nodes on [-1, 1] (positive half) and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
/// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// Integral of the passive second component (inner error estimates).
    carried: f64,
}

fn finite(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

fn gk15(f: &dyn Fn(f64) -> (f64, f64), a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let eval = |x: f64| {
        let (v, e) = f(x);
        (finite(v), finite(e))
    };
    let (fc, ec) = eval(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut carried = WGK[7] * ec;
    for k in 0..7 {
        let (v1, e1) = eval(c - h * XGK[k]);
        let (v2, e2) = eval(c + h * XGK[k]);
        kronrod += WGK[k] * (v1 + v2);
        carried += WGK[k] * (e1 + e2);
        if k % 2 == 1 {
            gauss += WG[k / 2] * (v1 + v2);
        }
    }
    Panel { a, b, value: kronrod * h, error: ((kronrod - gauss) * h).abs(), carried: carried * h }
}

struct Outcome {
    value: f64,
    /// Panel error plus the carried error integral.
    error: f64,
    converged: bool,
}

/// Global adaptive bisection on ∫ₐᵇ after a smoothing substitution: always split the panel with the largest
/// error. The second component of `f` is an error density integrated
/// alongside and added to the final error.
fn adaptive(f: &dyn Fn(f64) -> (f64, f64), a: f64, b: f64, tol: f64, budget: usize) -> Outcome {
    // x = a + (b − a)·u²(3 − 2u) flattens endpoint singularities
    let width = b - a;
    let g = |u: f64| {
        let x = a + width * u * u * (3.0 - 2.0 * u);
        let jac = 6.0 * width * u * (1.0 - u);
        let (v, e) = f(x);
        (v * jac, e * jac)
    };
    let f = &g;
    let mut panels = vec![gk15(f, 0.0, 1.0)];
    let finish = |panels: &[Panel]| {
        let value = panels.iter().map(|p| p.value).sum();
        let error = panels.iter().map(|p| p.error + p.carried.abs()).sum::<f64>();
        Outcome { value, error, converged: error <= tol.max(RELATIVE_FLOOR * value.abs()) }
    };
    loop {
        let error: f64 = panels.iter().map(|p| p.error).sum();
        // roundoff floor: nested absolute tolerances can ask for more
        // digits than a large inner value carries
        let value: f64 = panels.iter().map(|p| p.value).sum();
        if error <= tol.max(RELATIVE_FLOOR * value.abs()) || panels.len() >= budget {
            return finish(&panels);
        }
        let (k, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("nonempty");
        let p = panels[k];
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            return finish(&panels);
        }
        panels.swap_remove(k);
        panels.push(gk15(f, p.a, m));
        panels.push(gk15(f, m, p.b));
    }
}

/// ∫ₐᵇ f with absolute tolerance `tol`, splitting at `breaks`.
pub fn integrate_1d(f: &dyn Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64], tol: f64) -> Result<QuadratureResult> {
    let cuts = cut_points(a, b, breaks);
    let share = tol / (cuts.len() - 1) as f64;
    let mut value = 0.0;
    let mut error = 0.0;
    let mut ok = true;
    let g = |x: f64| (f(x), 0.0);
    for w in cuts.windows(2) {
        let p = adaptive(&g, w[0], w[1], share, MAX_PANELS);
        value += p.value;
        error += p.error;
        ok &= p.converged;
    }
    if ok {
        Ok(QuadratureResult { value, error })
    } else {
        Err(Error::Quadrature { estimate: value, achieved: error })
    }
}

fn cut_points(a: f64, b: f64, breaks: &[f64]) -> Vec<f64> {
    let scale = (b - a).abs().max(1e-300);
    let mut cuts = vec![a];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(f64::total_cmp);
    for x in inner.into_iter().chain(std::iter::once(b)) {
        if x - cuts.last().unwrap() > 1e-13 * scale {
            cuts.push(x);
        } else if x == b {
            *cuts.last_mut().unwrap() = b;
        }
    }
    if cuts.len() == 1 {
        cuts.push(b);
    }
    cuts
}

/// A constraint circle in the bounded picture: keep the closed disk or its exterior.
#[derive(Clone, Copy, Debug)]
struct WCircle {
    cx: f64,
    cy: f64,
    r: f64,
    disk: bool,
}

fn intersect(a: &[(f64, f64)], lo: f64, hi: f64) -> Vec<(f64, f64)> {
    a.iter().filter_map(|&(x, y)| {
        let (l, h) = (x.max(lo), y.min(hi));
        (l < h).then_some((l, h))
    })
    .collect()
}

fn remove(a: &[(f64, f64)], lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(x, y) in a {
        if hi <= x || lo >= y {
            out.push((x, y));
            continue;
        }
        if x < lo {
            out.push((x, lo));
        }
        if hi < y {
            out.push((hi, y));
        }
    }
    out
}

fn y_section(circles: &[WCircle], x: f64, y0: f64, y1: f64) -> Vec<(f64, f64)> {
    let mut set = vec![(y0, y1)];
    for c in circles {
        let dx = x - c.cx;
        let h2 = c.r * c.r - dx * dx;
        if c.disk {
            if h2 <= 0.0 {
                return Vec::new();
            }
            let h = h2.sqrt();
            set = intersect(&set, c.cy - h, c.cy + h);
        } else if h2 > 0.0 {
            let h = h2.sqrt();
            set = remove(&set, c.cy - h, c.cy + h);
        }
        if set.is_empty() {
            break;
        }
    }
    set
}

/// x-coordinates where two circles meet (tangency counted once).
fn meeting_xs(a: &WCircle, b: &WCircle, out: &mut Vec<f64>) {
    let (dx, dy) = (b.cx - a.cx, b.cy - a.cy);
    let d = (dx * dx + dy * dy).sqrt();
    if d == 0.0 {
        return;
    }
    let slack = 1e-12 * (a.r + b.r);
    if d > a.r + b.r + slack || d < (a.r - b.r).abs() - slack {
        return;
    }
    let along = (a.r * a.r - b.r * b.r + d * d) / (2.0 * d);
    let h = (a.r * a.r - along * along).max(0.0).sqrt();
    let (ux, uy) = (dx / d, dy / d);
    let px = a.cx + along * ux;
    // rounding turns a tangency into a chord of height ~1e-8·r
    if h < 1e-6 * a.r.min(b.r) {
        out.push(px);
        return;
    }
    out.push(px - h * uy);
    out.push(px + h * uy);
}

/// Candidate z₀ among small Gaussian integers, best first: outside the
/// region and away from every constraint circle.
fn pole_candidates(region: &Domain) -> Result<Vec<GaussianInt>> {
    let mut scored = Vec::new();
    for re in -3..=3 {
        for im in -3..=3 {
            let z = Complex64::new(re as f64, im as f64);
            let clear = region
                .constraints
                .iter()
                .map(|c| c.circle.signed_distance(z).abs())
                .fold(f64::INFINITY, f64::min);
            let score = region.violation(z).min(clear);
            if score > 1e-3 {
                scored.push((score, re, im));
            }
        }
    }
    if scored.is_empty() {
        return domain("no Gaussian integer pole clear of the region");
    }
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(scored.into_iter().map(|(_, re, im)| GaussianInt::new(re, im)).collect())
}

/// Points where integrands of this module may be singular: the six fixed points.
fn singular_points() -> Vec<Option<Complex64>> {
    ParityClass::ALL
        .iter()
        .map(|p| {
            let z = p.point();
            (!z.is_infinity()).then(|| z.to_complex())
        })
        .collect()
}

/// ∫_domain g(z) dA(z) to absolute tolerance `tol`. `extra_singular` lists
/// further points where g blows up.
pub fn integrate_domain(
    domain: &Domain,
    g: &(dyn Fn(Complex64) -> f64 + Sync),
    extra_singular: &[Complex64],
    tol: f64,
) -> Result<QuadratureResult> {
    let targets: Vec<Option<Complex64>> =
        singular_points().into_iter().chain(extra_singular.iter().map(|&z| Some(z))).collect();
    // w = rot/(z − z₀). A singular point sitting on a boundary circle near
    // its leftmost or rightmost point makes the y-sections there collapse
    // onto the singularity, so try poles and quarter turns until none do.
    let mut best: Option<(usize, Complex64, Complex64, Vec<WCircle>, Vec<Complex64>)> = None;
    'search: for pole in pole_candidates(domain)? {
        let z0 = pole.to_complex();
        for rot in [GaussianInt::one(), GaussianInt::i()] {
            let r = rot.to_complex();
            let inversion = ExtendedMobius::new(GaussianInt::zero(), rot, GaussianInt::one(), -pole.clone(), false)?;
            let mut circles = Vec::new();
            for c in &domain.constraints {
                let img = c.circle.transform(&inversion)?;
                let (Some((cx, cy)), Some(radius)) = (img.center(), img.radius()) else {
                    return crate::error::internal("pole landed on a constraint circle");
                };
                let positive = img.row()[1] > num_rational::BigRational::from_integer(0.into());
                circles.push(WCircle { cx, cy, r: radius, disk: positive == c.inside });
            }
            let singular: Vec<Complex64> = targets
                .iter()
                .map(|z| match z {
                    None => Complex64::new(0.0, 0.0),
                    Some(z) => r / (z - z0),
                })
                .filter(|w| w.re.is_finite() && w.im.is_finite())
                .collect();
            let bad = singular
                .iter()
                .filter(|w| {
                    circles.iter().any(|c| {
                        let on = ((w.re - c.cx).hypot(w.im - c.cy) - c.r).abs() < 1e-9 * c.r.max(1.0);
                        on && (w.im - c.cy).abs() < 0.5 * c.r
                    })
                })
                .count();
            if best.as_ref().is_none_or(|b| bad < b.0) {
                best = Some((bad, z0, r, circles, singular));
                if bad == 0 {
                    break 'search;
                }
            }
        }
    }
    let (_, z0, rot, circles, singular) = best.expect("at least one pole candidate");
    let disks: Vec<&WCircle> = circles.iter().filter(|c| c.disk).collect();
    if disks.is_empty() {
        return crate::error::internal("inverted region is unbounded");
    }
    let x0 = disks.iter().map(|c| c.cx - c.r).fold(f64::NEG_INFINITY, f64::max);
    let x1 = disks.iter().map(|c| c.cx + c.r).fold(f64::INFINITY, f64::min);
    let y0 = disks.iter().map(|c| c.cy - c.r).fold(f64::NEG_INFINITY, f64::max);
    let y1 = disks.iter().map(|c| c.cy + c.r).fold(f64::INFINITY, f64::min);
    if x0 >= x1 || y0 >= y1 {
        return Ok(QuadratureResult { value: 0.0, error: 0.0 });
    }

    let mut xbreaks: Vec<f64> = Vec::new();
    for (k, c) in circles.iter().enumerate() {
        xbreaks.push(c.cx - c.r);
        xbreaks.push(c.cx + c.r);
        for d in &circles[k + 1..] {
            meeting_xs(c, d, &mut xbreaks);
        }
    }
    xbreaks.extend(singular.iter().map(|w| w.re));
    let ybreaks: Vec<f64> = singular.iter().map(|w| w.im).collect();

    let integrand = |w: Complex64| {
        let n = w.norm_sqr();
        let v = g(z0 + rot / w) / (n * n);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let inner_tol = 0.1 * tol / (x1 - x0);
    let inner = |x: f64| -> (f64, f64) {
        let mut value = 0.0;
        let mut error = 0.0;
        for (a, b) in y_section(&circles, x, y0, y1) {
            let f = |y: f64| (integrand(Complex64::new(x, y)), 0.0);
            let cuts = cut_points(a, b, &ybreaks);
            let share = inner_tol / (cuts.len() - 1) as f64;
            for w in cuts.windows(2) {
                let p = adaptive(&f, w[0], w[1], share, INNER_PANELS);
                value += p.value;
                error += p.error;
            }
        }
        (value, error)
    };

    let cuts = cut_points(x0, x1, &xbreaks);
    let share = tol / (cuts.len() - 1) as f64;
    let pieces: Vec<Outcome> =
        cuts.par_windows(2).map(|w| adaptive(&inner, w[0], w[1], share, MAX_PANELS)).collect();
    let value: f64 = pieces.iter().map(|p| p.value).sum();
    let error: f64 = pieces.iter().map(|p| p.error).sum();
    if error <= tol {
        Ok(QuadratureResult { value, error })
    } else {
        Err(Error::Quadrature { estimate: value, achieved: error })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::farey_region;
    use crate::group::Word;
    use crate::planar::Side;
    use std::f64::consts::PI;

    #[test]
    fn kronrod_rule_is_exact_for_polynomials() {
        for k in 0..=21 {
            let p = gk15(&|x: f64| (x.powi(k), 0.0), 0.0, 1.0);
            assert!((p.value - 1.0 / (k + 1) as f64).abs() < 1e-15, "x^{k}");
        }
        for k in 0..=13 {
            let p = gk15(&|x: f64| (x.powi(k), 0.0), -1.0, 1.0);
            assert!(p.error < 1e-14, "gauss part inexact for x^{k}");
        }
    }

    #[test]
    fn one_dimensional_with_endpoint_singularity() {
        let r = integrate_1d(&|x: f64| 1.0 / (x * (1.0 - x)).sqrt(), 0.0, 1.0, &[], 1e-10).unwrap();
        assert!((r.value - PI).abs() < 1e-9);
    }

    #[test]
    fn euclidean_areas() {
        // B3 is the disk of radius 1/2 about i/2
        let disk = farey_region(Side::B, &"S3P".parse::<Word>().unwrap()).unwrap();
        let r = integrate_domain(&Domain::from_region(&disk), &|_| 1.0, &[], 1e-10).unwrap();
        assert!((r.value - PI / 4.0).abs() < 1e-9, "{}", r.value);
        // B2' against a midpoint count
        let tri = farey_region(Side::B, &"S2".parse::<Word>().unwrap()).unwrap();
        let d = Domain::from_region(&tri);
        let r = integrate_domain(&d, &|_| 1.0, &[], 1e-10).unwrap();
        let mut hits = 0u64;
        let n = 2000;
        for i in 0..n {
            for j in 0..n {
                let z = Complex64::new((i as f64 + 0.5) / n as f64, -0.5 + (j as f64 + 0.5) / n as f64);
                if d.contains(z) {
                    hits += 1;
                }
            }
        }
        let grid = hits as f64 / (n * n) as f64;
        assert!((r.value - grid).abs() < 2e-3, "{} vs {grid}", r.value);
    }
}
