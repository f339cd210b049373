//! Invariant densities f_B and f_A. On a B triangle f_B is π/4 times the
//! hyperbolic area density of the dual disk or half-plane containing it; on
//! a B circle it is a sum of three terms built from h.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::gaussian::ExtendedMobius;
use crate::group::duality_mobius;
use crate::planar::{classify_float, Classification, RegionKind, RegionLabel, Side};

/// h(x, y) = arctan(x/y)/(4x²) − 1/(4xy), written as (arctan t − t)/(4x²)
/// with t = x/y and expanded in t where the difference cancels.
pub(crate) fn h(x: f64, y: f64) -> f64 {
    let t = x / y;
    if t.abs() < 0.05 {
        // (arctan t − t)/t² = Σ_{k≥1} (−1)^k t^(2k−1)/(2k+1)
        let t2 = t * t;
        let mut term = -t;
        let mut sum = 0.0;
        for k in 1..12 {
            sum += term / (2 * k + 1) as f64;
            term *= -t2;
        }
        sum / (4.0 * y * y)
    } else {
        (t.atan() - t) / (4.0 * x * x)
    }
}

/// A point held as a dyadic base plus an offset, so forms vanishing at the
/// base keep their relative accuracy when the offset is tiny.
#[derive(Clone, Copy, Debug)]
struct Split {
    base: (f64, f64),
    d: (f64, f64),
}

impl Split {
    /// Based at the nearest finite fixed point; the offset z − base is
    /// exact for nearby z.
    fn at(z: Complex64) -> Self {
        const BASES: [(f64, f64); 5] = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (0.5, 0.5)];
        let base = BASES
            .into_iter()
            .min_by(|p, q| {
                let dp = (z.re - p.0).hypot(z.im - p.1);
                let dq = (z.re - q.0).hypot(z.im - q.1);
                dp.total_cmp(&dq)
            })
            .expect("five bases");
        Split { base, d: (z.re - base.0, z.im - base.1) }
    }

    fn flip_x(self) -> Self {
        Split { base: (1.0 - self.base.0, self.base.1), d: (-self.d.0, self.d.1) }
    }

    fn flip_y(self) -> Self {
        Split { base: (self.base.0, 1.0 - self.base.1), d: (self.d.0, -self.d.1) }
    }

    /// e(x² + y²) + ax + by + c.
    fn form(&self, e: f64, a: f64, b: f64, c: f64) -> f64 {
        let (x, y) = self.base;
        let (dx, dy) = self.d;
        let at_base = e * (x * x + y * y) + a * x + b * y + c;
        let slope = (2.0 * e * x + a) * dx + (2.0 * e * y + b) * dy;
        at_base + slope + e * (dx * dx + dy * dy)
    }
}

/// φ(a) − φ(c) for φ(t) = (arctan t − t)/t², without forming either value.
fn phi_difference(a: f64, c: f64, diff: f64) -> f64 {
    if a.abs().max(c.abs()) < 0.05 {
        // φ(t) = Σ_{k≥1} (−1)^k t^(2k−1)/(2k+1); (aⁿ − cⁿ)/(a − c) = Σ aʲcⁿ⁻¹⁻ʲ
        let mut sum = 0.0;
        let mut sign = -1.0;
        for k in 1..12 {
            let n = 2 * k - 1;
            let quotient: f64 = (0..n).map(|j| a.powi(j) * c.powi(n - 1 - j)).sum();
            sum += sign * quotient / (2 * k + 1) as f64;
            sign = -sign;
        }
        return sum * diff;
    }
    // arctan a − arctan c = arctan((a − c)/(1 + ac)), valid as ac > 0 here
    (diff / (1.0 + a * c)).atan() / (a * a) - c.atan() * diff * (a + c) / (a * a * c * c) + diff / (a * c)
}

/// Σ h(uᵢ, s) over the given forms. Two arguments that nearly cancel are
/// summed through their exact sum: each is ~1/δ² near a fixed point while
/// the pair is ~1/δ.
fn h_sum(p: &Split, forms: &[[f64; 4]; 3], s: f64) -> f64 {
    let values = forms.map(|[e, a, b, c]| p.form(e, a, b, c));
    let mut pair: Option<(usize, usize, f64)> = None;
    for i in 0..3 {
        for j in i + 1..3 {
            let ratio = (values[i] + values[j]).abs() / values[i].abs().max(values[j].abs());
            if ratio < 0.25 && pair.is_none_or(|(_, _, r)| ratio < r) {
                pair = Some((i, j, ratio));
            }
        }
    }
    let Some((i, j, _)) = pair else {
        return values.iter().map(|&u| h(u, s)).sum();
    };
    let rest: f64 = (0..3).filter(|&k| k != i && k != j).map(|k| h(values[k], s)).sum();
    let [e1, a1, b1, c1] = forms[i];
    let [e2, a2, b2, c2] = forms[j];
    let total = p.form(e1 + e2, a1 + a2, b1 + b2, c1 + c2);
    // h(u, s) = φ(u/s)/(4s²) and φ is odd
    rest + phi_difference(values[i] / s, -values[j] / s, total / s) / (4.0 * s * s)
}

const FORM_X: [f64; 4] = [0.0, 1.0, 0.0, 0.0];

/// Density on B₁ = {y < 0}: h(x, y) + h(1 − x, y) + h(x² − x + y², y).
fn circle_h(p: Split) -> f64 {
    h_sum(&p, &[FORM_X, [0.0, -1.0, 0.0, 1.0], [1.0, -1.0, 0.0, 0.0]], p.form(0.0, 0.0, 1.0, 0.0))
}

/// Density on B₃ = the disk of radius ½ about i/2, with s = x² + y² − y:
/// h(x, s) + h(x² − x + y², s) + h(x² − x + (1 − y)², s).
fn circle_g(p: Split) -> f64 {
    h_sum(&p, &[FORM_X, [1.0, -1.0, 0.0, 0.0], [1.0, -1.0, -2.0, 1.0]], p.form(1.0, 0.0, -1.0, 0.0))
}

/// π/(4m²) with m = ¼ − |z − centre|².
fn disk_density(m: f64) -> f64 {
    PI / (4.0 * m * m)
}

fn split_formula(kind: RegionKind, index: usize, p: Split) -> f64 {
    match (kind, index) {
        (RegionKind::Circle, 1) => circle_h(p),
        (RegionKind::Circle, 2) => circle_h(p.flip_y()),
        (RegionKind::Circle, 3) => circle_g(p),
        (RegionKind::Circle, 4) => circle_g(p.flip_x()),
        (RegionKind::Triangle, 1) => disk_density(p.form(-1.0, 1.0, 2.0, -1.0)),
        (RegionKind::Triangle, 2) => disk_density(p.form(-1.0, 1.0, 0.0, 0.0)),
        (RegionKind::Triangle, 3) => PI / (4.0 * p.form(0.0, -1.0, 0.0, 1.0).powi(2)),
        (RegionKind::Triangle, 4) => PI / (4.0 * p.form(0.0, 1.0, 0.0, 0.0).powi(2)),
        _ => panic!("region index {index} out of range"),
    }
}

/// The formula f_B uses on B-region `kind`/`index`, evaluated at any point
/// (it is the analytic continuation outside the region).
pub fn f_b_formula(kind: RegionKind, index: usize, z: Complex64) -> f64 {
    split_formula(kind, index, Split::at(z))
}

/// 𝔡(w) = M(w̄) with M(u) = (u − 1 + i)/((1 − i)u + i), det M = −i. Near a
/// fixed point q the image is held as 𝔡(q) plus
/// M(w̄) − M(q̄) = det·(w̄ − q̄)/((cw̄ + d)(cq̄ + d)), and near ∞ as
/// (1+i)/2 plus (i − 1)/(2(cw̄ + d)); neither offset cancels.
fn split_duality(w: Complex64) -> Split {
    let c = Complex64::new(1.0, -1.0);
    let d = Complex64::i();
    let u = w.conj();
    if w.norm_sqr() > 16.0 {
        let off = Complex64::new(-1.0, 1.0) / (2.0 * (c * u + d));
        return Split { base: (0.5, 0.5), d: (off.re, off.im) };
    }
    // q ↦ 𝔡(q) on the fixed points with finite image
    const NEAR: [((f64, f64), (f64, f64)); 4] =
        [((0.0, 0.0), (1.0, 1.0)), ((1.0, 0.0), (0.0, 1.0)), ((0.0, 1.0), (1.0, 0.0)), ((1.0, 1.0), (0.0, 0.0))];
    let near = NEAR.into_iter().find(|((qx, qy), _)| (w.re - qx).hypot(w.im - qy) < 0.25);
    match near {
        Some(((qx, qy), base)) => {
            let v = Complex64::new(qx, -qy);
            let off = -Complex64::i() * (u - v) / ((c * u + d) * (c * v + d));
            Split { base, d: (off.re, off.im) }
        }
        None => Split::at(duality(w)),
    }
}

/// The duality map 𝔡 on doubles; ∞ is returned as a non-finite value.
pub fn duality(w: Complex64) -> Complex64 {
    duality_mobius().apply_complex(w).unwrap_or(Complex64::new(f64::INFINITY, f64::INFINITY))
}

/// |m'(z)|² for an extended Möbius map with unit determinant.
pub fn mobius_jacobian(m: &ExtendedMobius, z: Complex64) -> f64 {
    let zz = if m.conj { z.conj() } else { z };
    1.0 / (m.c.to_complex() * zz + m.d.to_complex()).norm_sqr().powi(2)
}

/// Density of a region's formula on its own side. A regions pull back to
/// the B region with the same label through 𝔡, which is not an isometry:
/// f_A(w) = f_B(𝔡w)·|𝔡'(w)|².
pub fn region_formula(label: RegionLabel, z: Complex64) -> f64 {
    match label.side {
        Side::B => f_b_formula(label.kind, label.index, z),
        Side::A => pulled_back(label.kind, label.index, z),
    }
}

/// f_B(𝔡w)·|𝔡'(w)|² for the formula of `kind`/`index`.
fn pulled_back(kind: RegionKind, index: usize, w: Complex64) -> f64 {
    let jac = mobius_jacobian(&duality_mobius(), w);
    split_formula(kind, index, split_duality(w)) * jac
}

/// Quarter turn about (1+i)/2 carrying the A partition onto the B partition.
pub fn quarter_turn(w: Complex64) -> Complex64 {
    let c = Complex64::new(0.5, 0.5);
    Complex64::i() * (w - c) + c
}

/// Piecewise evaluator of f_A or f_B.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DensityEvaluator {
    pub side: Side,
}

impl DensityEvaluator {
    pub fn new(side: Side) -> Self {
        DensityEvaluator { side }
    }

    /// +∞ at the six fixed points and at ∞. Boundary points take the
    /// triangle's value.
    pub fn eval(&self, z: Complex64) -> f64 {
        match self.side {
            Side::B => match classify_float(Side::B, z, 0.0).class {
                Classification::FixedPoint(_) => f64::INFINITY,
                Classification::Region(r) => f_b_formula(r.kind, r.index, z),
            },
            Side::A => {
                let u = duality(z);
                match classify_float(Side::B, u, 0.0).class {
                    Classification::FixedPoint(_) => f64::INFINITY,
                    Classification::Region(r) => pulled_back(r.kind, r.index, z),
                }
            }
        }
    }
}

pub fn f_b(z: Complex64) -> f64 {
    DensityEvaluator::new(Side::B).eval(z)
}

pub fn f_a(w: Complex64) -> f64 {
    DensityEvaluator::new(Side::A).eval(w)
}

/// Density sampled at cell centres of an nx × ny grid over the rectangle,
/// row by row from the bottom. Fixed points give +∞.
pub fn density_grid(side: Side, x: (f64, f64), y: (f64, f64), nx: usize, ny: usize) -> Vec<(f64, f64, f64)> {
    let eval = DensityEvaluator::new(side);
    let (dx, dy) = ((x.1 - x.0) / nx as f64, (y.1 - y.0) / ny as f64);
    (0..ny)
        .flat_map(|j| (0..nx).map(move |i| (x.0 + (i as f64 + 0.5) * dx, y.0 + (j as f64 + 0.5) * dy)))
        .map(|(u, v)| (u, v, eval.eval(Complex64::new(u, v))))
        .collect()
}

/// A symmetry of the B partition as an antiholomorphic or holomorphic map
/// together with its Jacobian |σ'(z)|².
#[derive(Clone, Copy, Debug)]
pub struct Symmetry {
    pub name: &'static str,
    pub map: fn(Complex64) -> Complex64,
    pub jacobian: fn(Complex64) -> f64,
}

fn one(_: Complex64) -> f64 {
    1.0
}

/// The S₃ maps fixing B₁ and the S₄ transpositions of B₁..B₄.
pub fn symmetries() -> Vec<Symmetry> {
    vec![
        Symmetry { name: "B1 (0 1): -conj(z)+1", map: |z| -z.conj() + 1.0, jacobian: one },
        Symmetry {
            name: "B1 (0 1 inf): -1/(z-1)",
            map: |z| -1.0 / (z - 1.0),
            jacobian: |z| 1.0 / (z - 1.0).norm_sqr().powi(2),
        },
        Symmetry { name: "(1 2): conj(z)+i", map: |z| z.conj() + Complex64::i(), jacobian: one },
        Symmetry {
            name: "(2 3): 1/conj(z)",
            map: |z| 1.0 / z.conj(),
            jacobian: |z| 1.0 / z.norm_sqr().powi(2),
        },
        Symmetry { name: "(3 4): -conj(z)+1", map: |z| -z.conj() + 1.0, jacobian: one },
    ]
}

/// f_B(σz)·|σ'(z)|² − f_B(z).
pub fn symmetry_defect(s: &Symmetry, z: Complex64) -> f64 {
    f_b((s.map)(z)) * (s.jacobian)(z) - f_b(z)
}

/// Invariance of f_B under T_B written pointwise:
/// Σ over letters m with m(z) in m's region of f_B(m z)·|m'(z)|², minus f_B(z).
pub fn transfer_defect(side: Side, z: Complex64) -> f64 {
    let eval = DensityEvaluator::new(side);
    let mut sum = 0.0;
    for label in RegionLabel::all(side) {
        let m = label.letter().mobius();
        let Some(u) = m.apply_complex(z) else { continue };
        if let Classification::Region(r) = classify_float(side, u, 0.0).class {
            if r == label {
                sum += eval.eval(u) * mobius_jacobian(&m, z);
            }
        }
    }
    sum - eval.eval(z)
}
