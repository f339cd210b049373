//! The planar continued fraction maps T_A and T_B: region classification,
//! exact expansion of Gaussian rationals, floating expansion of irrational
//! points, convergents and the approximation-capture check.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{domain, internal, Error, Result};
use crate::gaussian::{gcd, ExtendedMobius, GaussianInt, ParityClass, ProjectivePoint};
use crate::geometry::base_rows;
use crate::group::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn dual(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Side::A),
            "B" | "b" => Ok(Side::B),
            _ => domain(format!("unknown side {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RegionKind {
    /// Open disk or half-plane.
    Circle,
    /// Closed curvilinear triangle.
    Triangle,
}

/// One of the eight regions of a side: B₁..B₄ and B₁′..B₄′, or the A analogues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegionLabel {
    pub side: Side,
    pub kind: RegionKind,
    /// 1..=4
    pub index: usize,
}

impl RegionLabel {
    pub fn new(side: Side, kind: RegionKind, index: usize) -> Self {
        assert!((1..=4).contains(&index));
        RegionLabel { side, kind, index }
    }

    pub fn all(side: Side) -> Vec<RegionLabel> {
        [RegionKind::Circle, RegionKind::Triangle]
            .into_iter()
            .flat_map(|k| (1..=4).map(move |i| RegionLabel::new(side, k, i)))
            .collect()
    }

    /// The letter applied on this region.
    pub fn letter(self) -> Letter {
        let i = self.index as u8;
        match (self.side, self.kind) {
            (Side::B, RegionKind::Circle) | (Side::A, RegionKind::Triangle) => Letter::inversion(i),
            _ => Letter::swap(i),
        }
    }

    /// Membership with the region's own convention: open circles, closed
    /// triangles (vertices included).
    pub fn contains_closed(self, z: &ProjectivePoint) -> bool {
        let own = base_rows(self.side);
        let dual = base_rows(self.side.dual());
        let k = self.index - 1;
        match self.kind {
            RegionKind::Circle => form(&own[k], z.p(), z.q()).is_negative(),
            RegionKind::Triangle => {
                own.iter().all(|row| !form(row, z.p(), z.q()).is_negative())
                    && !form(&dual[k], z.p(), z.q()).is_positive()
            }
        }
    }

    pub fn name(self) -> String {
        let side = match self.side {
            Side::A => "A",
            Side::B => "B",
        };
        match self.kind {
            RegionKind::Circle => format!("{side}{}", self.index),
            RegionKind::Triangle => format!("{side}{}'", self.index),
        }
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

/// Hermitian form a|p|² − 2Re(b̄ p q̄) + c|q|² of an integral ACC row (c, a, b1, b2).
fn form(row: &[i64; 4], p: &GaussianInt, q: &GaussianInt) -> BigInt {
    let [c, a, b1, b2] = *row;
    let w = p * &q.conj();
    p.norm() * a - (w.re * b1 + w.im * b2) * 2 + q.norm() * c
}

/// Signed distance to an integral ACC circle, negative inside.
fn signed_distance(row: &[i64; 4], z: Complex64) -> f64 {
    let [c, a, b1, b2] = row.map(|x| x as f64);
    if a == 0.0 {
        return (c - 2.0 * (b1 * z.re + b2 * z.im)) / 2.0;
    }
    let d = (z - Complex64::new(b1 / a, b2 / a)).norm() - 1.0 / a.abs();
    if a > 0.0 {
        d
    } else {
        -d
    }
}

pub const DEFAULT_EPSILON: f64 = 1e-12;
pub const DEFAULT_FLOAT_STEPS: usize = 256;

/// A point to expand: exact Gaussian rational or a double with a boundary tolerance.
#[derive(Clone, Debug, PartialEq)]
pub enum PlanarPoint {
    Exact(ProjectivePoint),
    Float { z: Complex64, eps: f64 },
}

impl PlanarPoint {
    pub fn float(re: f64, im: f64) -> Self {
        PlanarPoint::Float { z: Complex64::new(re, im), eps: DEFAULT_EPSILON }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            PlanarPoint::Exact(p) => p.to_complex(),
            PlanarPoint::Float { z, .. } => *z,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Region(RegionLabel),
    FixedPoint(ParityClass),
}

/// Classification of a float point, with a flag when it lies within eps of a
/// region boundary (the triangle wins such ties).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FloatClassification {
    pub class: Classification,
    pub near_boundary: bool,
}

pub fn classify_exact(side: Side, z: &ProjectivePoint) -> Result<Classification> {
    if let Some(fixed) = ParityClass::of_fixed_point(z) {
        return Ok(Classification::FixedPoint(fixed));
    }
    let own = base_rows(side);
    for (k, row) in own.iter().enumerate() {
        if form(row, z.p(), z.q()).is_negative() {
            return Ok(Classification::Region(RegionLabel::new(side, RegionKind::Circle, k + 1)));
        }
    }
    let dual = base_rows(side.dual());
    let mut hits = dual.iter().enumerate().filter(|(_, row)| form(row, z.p(), z.q()).is_negative());
    match (hits.next(), hits.next()) {
        (Some((k, _)), None) => Ok(Classification::Region(RegionLabel::new(side, RegionKind::Triangle, k + 1))),
        _ => internal(format!("point {z} is not in exactly one triangle")),
    }
}

pub fn classify_float(side: Side, z: Complex64, eps: f64) -> FloatClassification {
    if !z.re.is_finite() || !z.im.is_finite() {
        return FloatClassification { class: Classification::FixedPoint(ParityClass::Infinity), near_boundary: true };
    }
    for fixed in ParityClass::ALL {
        if fixed != ParityClass::Infinity && (fixed.point().to_complex() - z).norm() <= eps {
            return FloatClassification { class: Classification::FixedPoint(fixed), near_boundary: true };
        }
    }
    let own = base_rows(side);
    let dists: Vec<f64> = own.iter().map(|row| signed_distance(row, z)).collect();
    let near_boundary = dists.iter().any(|d| d.abs() <= eps);
    if let Some(k) = dists.iter().position(|&d| d < -eps) {
        return FloatClassification {
            class: Classification::Region(RegionLabel::new(side, RegionKind::Circle, k + 1)),
            near_boundary,
        };
    }
    let dual = base_rows(side.dual());
    let (k, _) = dual
        .iter()
        .map(|row| signed_distance(row, z))
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("four circles");
    FloatClassification {
        class: Classification::Region(RegionLabel::new(side, RegionKind::Triangle, k + 1)),
        near_boundary,
    }
}

pub fn classify(side: Side, z: &PlanarPoint) -> Result<Classification> {
    match z {
        PlanarPoint::Exact(p) => classify_exact(side, p),
        PlanarPoint::Float { z, eps } => Ok(classify_float(side, *z, *eps).class),
    }
}

fn generator_maps() -> [ExtendedMobius; 8] {
    Letter::ALL.map(|l| l.mobius())
}

/// One step of the map. Fixed points return `None`.
pub fn step(side: Side, z: &PlanarPoint) -> Result<Option<(Letter, PlanarPoint)>> {
    match classify(side, z)? {
        Classification::FixedPoint(_) => Ok(None),
        Classification::Region(r) => {
            let letter = r.letter();
            let m = letter.mobius();
            let next = match z {
                PlanarPoint::Exact(p) => PlanarPoint::Exact(m.apply(p)),
                PlanarPoint::Float { z, eps } => PlanarPoint::Float {
                    z: m.apply_complex(*z).unwrap_or(Complex64::new(f64::INFINITY, f64::INFINITY)),
                    eps: *eps,
                },
            };
            Ok(Some((letter, next)))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionResult {
    pub word: Word,
    pub terminal: Option<ParityClass>,
    pub steps: usize,
    pub truncated: bool,
    pub boundary_hit: bool,
    /// First step whose input was within eps of a boundary; letters from
    /// here on are unreliable.
    pub boundary_step: Option<usize>,
}

/// Exact expansion; rational points always reach a fixed point well before
/// `max_steps` for any sensible cap.
pub fn expand_exact(side: Side, z: &ProjectivePoint, max_steps: usize) -> Result<ExpansionResult> {
    let maps = generator_maps();
    let mut cur = z.clone();
    let mut word = Word::empty();
    loop {
        match classify_exact(side, &cur)? {
            Classification::FixedPoint(t) => {
                let steps = word.len();
                return Ok(ExpansionResult {
                    word,
                    terminal: Some(t),
                    steps,
                    truncated: false,
                    boundary_hit: false,
                    boundary_step: None,
                });
            }
            Classification::Region(r) => {
                if word.len() >= max_steps {
                    let steps = word.len();
                    return Ok(ExpansionResult {
                        word,
                        terminal: None,
                        steps,
                        truncated: true,
                        boundary_hit: false,
                        boundary_step: None,
                    });
                }
                let letter = r.letter();
                cur = maps[letter.slot()].apply(&cur);
                word.push(letter);
            }
        }
    }
}

/// Floating expansion for `steps` letters (fewer if a fixed point is hit).
pub fn expand_float(side: Side, z: Complex64, eps: f64, steps: usize) -> ExpansionResult {
    let maps = generator_maps();
    let mut cur = z;
    let mut word = Word::empty();
    let mut boundary_step = None;
    let mut terminal = None;
    while word.len() < steps {
        let c = classify_float(side, cur, eps);
        if c.near_boundary && boundary_step.is_none() {
            boundary_step = Some(word.len());
        }
        match c.class {
            Classification::FixedPoint(t) => {
                terminal = Some(t);
                break;
            }
            Classification::Region(r) => {
                let letter = r.letter();
                cur = maps[letter.slot()]
                    .apply_complex(cur)
                    .unwrap_or(Complex64::new(f64::INFINITY, f64::INFINITY));
                word.push(letter);
            }
        }
    }
    let n = word.len();
    ExpansionResult {
        word,
        terminal,
        steps: n,
        truncated: terminal.is_none(),
        boundary_hit: boundary_step.is_some(),
        boundary_step,
    }
}

pub fn expand(side: Side, z: &PlanarPoint, max_steps: usize) -> Result<ExpansionResult> {
    match z {
        PlanarPoint::Exact(p) => expand_exact(side, p, max_steps),
        PlanarPoint::Float { z, eps } => Ok(expand_float(side, *z, *eps, max_steps)),
    }
}

/// For each base point α (in `ParityClass::ALL` order) the images of α under
/// the prefixes of length 0..=n.
pub fn convergents(word: &Word, n: usize) -> Result<[Vec<ProjectivePoint>; 6]> {
    if n > word.len() {
        return domain(format!("word has {} letters, {n} convergents requested", word.len()));
    }
    let maps = generator_maps();
    let mut out: [Vec<ProjectivePoint>; 6] = Default::default();
    let mut prefix = ExtendedMobius::identity();
    for k in 0..=n {
        if k > 0 {
            prefix = prefix.compose(&maps[word.letters()[k - 1].slot()]);
        }
        for (seq, alpha) in out.iter_mut().zip(ParityClass::ALL) {
            seq.push(prefix.apply(&alpha.point()));
        }
    }
    Ok(out)
}

/// √2/(1+√2): approximations closer than C/|q|² are convergents.
pub fn capture_constant() -> f64 {
    std::f64::consts::SQRT_2 / (1.0 + std::f64::consts::SQRT_2)
}

/// 1/√3, the constant of the nearest-integer Gaussian continued fraction.
pub fn ford_constant() -> f64 {
    1.0 / 3f64.sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaptureReport {
    pub z: (f64, f64),
    pub q_max: u64,
    pub constant: f64,
    pub ford_constant: f64,
    /// Letters of the expansion used.
    pub horizon: usize,
    pub candidates: usize,
    /// Approximations p/q meeting the bound that are not convergents.
    pub misses: Vec<String>,
}

/// Enumerate every reduced p/q with |q| ≤ q_max and |z − p/q| < C/|q|², and
/// check each against the six convergent sequences of the T_B expansion.
pub fn capture_check(z: Complex64, q_max: u64, constant: f64) -> Result<CaptureReport> {
    if q_max == 0 || !z.re.is_finite() || !z.im.is_finite() {
        return domain("capture check needs q_max ≥ 1 and a finite point");
    }
    let qmax2 = BigInt::from(q_max) * BigInt::from(q_max);
    let expansion = expand_float(Side::B, z, DEFAULT_EPSILON, DEFAULT_FLOAT_STEPS);
    let reliable = expansion.boundary_step.unwrap_or(expansion.word.len());
    let seqs = convergents(&expansion.word, reliable)?;
    // horizon: first k where every sequence has left the |q| ≤ q_max range
    // for good (checked over a few more steps)
    let exceeds = |k: usize| seqs.iter().all(|s| s[k].q().norm() > qmax2);
    let slack = 4;
    let horizon = (0..=reliable)
        .find(|&k| k + slack <= reliable && (k..=k + slack).all(exceeds))
        .ok_or_else(|| {
            Error::Inconclusive(format!(
                "expansion of {z} is reliable for {reliable} letters, not enough to pass |q| = {q_max}"
            ))
        })?;
    let found: HashSet<ProjectivePoint> = seqs.iter().flat_map(|s| s[..=horizon].iter().cloned()).collect();
    let mut candidates = 0;
    let mut misses = Vec::new();
    let qm = q_max as i64;
    for qa in 0..=qm {
        for qb in -qm..=qm {
            let q = GaussianInt::new(qa, qb);
            if q.is_zero() || q.norm() > qmax2 || q.unit_normalized() != q {
                continue;
            }
            let qn = q.norm().to_f64().unwrap();
            let qc = q.to_complex();
            let radius = constant / qn.sqrt();
            let centre = z * qc;
            let (lo_re, hi_re) = ((centre.re - radius).floor() as i64, (centre.re + radius).ceil() as i64);
            let (lo_im, hi_im) = ((centre.im - radius).floor() as i64, (centre.im + radius).ceil() as i64);
            for pr in lo_re..=hi_re {
                for pi in lo_im..=hi_im {
                    let p = GaussianInt::new(pr, pi);
                    if (z - p.to_complex() / qc).norm() >= constant / qn {
                        continue;
                    }
                    if !gcd(&p, &q)?.is_unit() {
                        continue;
                    }
                    candidates += 1;
                    let point = ProjectivePoint::new(p.clone(), q.clone())?;
                    if !found.contains(&point) {
                        misses.push(point.to_string());
                    }
                }
            }
        }
    }
    Ok(CaptureReport {
        z: (z.re, z.im),
        q_max,
        constant,
        ford_constant: ford_constant(),
        horizon,
        candidates,
        misses,
    })
}

/// Word applied to its terminal; equals the input for a terminated expansion.
pub fn reconstruct(result: &ExpansionResult) -> Option<ProjectivePoint> {
    result.terminal.map(|t| result.word.mobius().apply(&t.point()))
}
