//! Circles in augmented curvature-center (ACC) coordinates, the base
//! quadruples R_B and R_A, the group action on quadruples, Farey regions
//! and SVG export.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, internal, Result};
use crate::gaussian::{ExtendedMobius, GaussianInt, Integer, ProjectivePoint};
use crate::group::{IntMatrix4, NormalForm, Word};
use crate::planar::{RegionKind, RegionLabel, Side};

pub type Rational = BigRational;

fn rat(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn rat_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Complex number with rational parts; only what the circle transforms need.
#[derive(Clone, Debug, PartialEq)]
struct CRat {
    re: Rational,
    im: Rational,
}

impl CRat {
    fn new(re: Rational, im: Rational) -> Self {
        CRat { re, im }
    }
    fn zero() -> Self {
        CRat::new(Rational::zero(), Rational::zero())
    }
    fn from_gauss(z: &GaussianInt) -> Self {
        CRat::new(Rational::from_integer(z.re.clone()), Rational::from_integer(z.im.clone()))
    }
    fn conj(&self) -> Self {
        CRat::new(self.re.clone(), -&self.im)
    }
    fn add(&self, o: &CRat) -> CRat {
        CRat::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn mul(&self, o: &CRat) -> CRat {
        CRat::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// A circle or line with an orientation: the interior is where the
/// Hermitian form a|z|² − 2Re(b̄z) + c is negative, b = b1 + i·b2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AccCircle {
    pub cocurvature: Rational,
    pub curvature: Rational,
    pub b1: Rational,
    pub b2: Rational,
}

impl AccCircle {
    pub fn new(cocurvature: Rational, curvature: Rational, b1: Rational, b2: Rational) -> Result<Self> {
        let c = AccCircle { cocurvature, curvature, b1, b2 };
        if c.determinant() != rat(-1) {
            return domain(format!("ACC row {c:?} violates a·c − |b|² = −1"));
        }
        Ok(c)
    }

    /// Row (c, a, b1, b2) of small integers; panics if not a valid circle.
    pub fn from_ints(row: [i64; 4]) -> Self {
        let [c, a, b1, b2] = row.map(rat);
        AccCircle::new(c, a, b1, b2).expect("valid constant circle")
    }

    pub fn from_row(row: [Rational; 4]) -> Result<Self> {
        let [c, a, b1, b2] = row;
        AccCircle::new(c, a, b1, b2)
    }

    pub fn row(&self) -> [Rational; 4] {
        [self.cocurvature.clone(), self.curvature.clone(), self.b1.clone(), self.b2.clone()]
    }

    fn determinant(&self) -> Rational {
        &self.curvature * &self.cocurvature - &self.b1 * &self.b1 - &self.b2 * &self.b2
    }

    pub fn negated(&self) -> AccCircle {
        AccCircle {
            cocurvature: -&self.cocurvature,
            curvature: -&self.curvature,
            b1: -&self.b1,
            b2: -&self.b2,
        }
    }

    /// Same point set, either orientation.
    pub fn same_circle(&self, other: &AccCircle) -> bool {
        self == other || *self == other.negated()
    }

    pub fn is_line(&self) -> bool {
        self.curvature.is_zero()
    }

    pub fn center(&self) -> Option<(f64, f64)> {
        if self.is_line() {
            return None;
        }
        Some((rat_to_f64(&(&self.b1 / &self.curvature)), rat_to_f64(&(&self.b2 / &self.curvature))))
    }

    pub fn radius(&self) -> Option<f64> {
        if self.is_line() {
            return None;
        }
        Some(1.0 / rat_to_f64(&self.curvature).abs())
    }

    /// The form evaluated at the homogeneous pair (p, q); negative inside.
    pub fn form_exact(&self, p: &GaussianInt, q: &GaussianInt) -> Rational {
        let w = p * &q.conj();
        let np = Rational::from_integer(p.norm());
        let nq = Rational::from_integer(q.norm());
        let cross = &self.b1 * Rational::from_integer(w.re) + &self.b2 * Rational::from_integer(w.im);
        &self.curvature * np - rat(2) * cross + &self.cocurvature * nq
    }

    /// Strictly inside (open interior).
    pub fn contains_exact(&self, z: &ProjectivePoint) -> bool {
        self.form_exact(z.p(), z.q()).is_negative()
    }

    /// Signed Euclidean distance to the circle, negative in the interior.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        let a = rat_to_f64(&self.curvature);
        let (b1, b2) = (rat_to_f64(&self.b1), rat_to_f64(&self.b2));
        if a == 0.0 {
            let c = rat_to_f64(&self.cocurvature);
            return (c - 2.0 * (b1 * z.re + b2 * z.im)) / 2.0;
        }
        let d = (z - Complex64::new(b1 / a, b2 / a)).norm() - 1.0 / a.abs();
        if a > 0.0 {
            d
        } else {
            -d
        }
    }

    /// Image under an extended Möbius map with |det| a perfect square
    /// (always 1 for group elements). Orientation follows the map.
    pub fn transform(&self, t: &ExtendedMobius) -> Result<AccCircle> {
        // Hermitian matrix H = [[a, -b], [-b̄, c]]; conjugation replaces b by b̄.
        let b = CRat::new(self.b1.clone(), self.b2.clone());
        let b = if t.conj { b.conj() } else { b };
        let neg = |z: &CRat| CRat::new(-&z.re, -&z.im);
        let h = [
            [CRat::new(self.curvature.clone(), Rational::zero()), neg(&b)],
            [neg(&b.conj()), CRat::new(self.cocurvature.clone(), Rational::zero())],
        ];
        // N = adj(M); the image form is N* H N / |det M|.
        let n = [
            [CRat::from_gauss(&t.d), CRat::from_gauss(&-&t.b)],
            [CRat::from_gauss(&-&t.c), CRat::from_gauss(&t.a)],
        ];
        let mut out = [[CRat::zero(), CRat::zero()], [CRat::zero(), CRat::zero()]];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut s = CRat::zero();
                for k in 0..2 {
                    for l in 0..2 {
                        s = s.add(&n[k][i].conj().mul(&h[k][l]).mul(&n[l][j]));
                    }
                }
                *cell = s;
            }
        }
        let det_norm = t.det().norm();
        let root = det_norm.sqrt();
        if &root * &root != det_norm {
            return domain("circle transform needs |det| to be an integer");
        }
        let scale = Rational::from_integer(root);
        let a = &out[0][0].re / &scale;
        let c = &out[1][1].re / &scale;
        let bnew = CRat::new(-&out[0][1].re / &scale, -&out[0][1].im / &scale);
        AccCircle::new(c, a, bnew.re, bnew.im)
    }

    /// Point of tangency of two tangent circles with disjoint interiors.
    pub fn tangency_point(&self, other: &AccCircle) -> Result<ProjectivePoint> {
        let asum = &self.curvature + &other.curvature;
        let bsum = CRat::new(&self.b1 + &other.b1, &self.b2 + &other.b2);
        let (p, q) = if !asum.is_zero() || !bsum.is_zero() {
            (bsum, CRat::new(asum, Rational::zero()))
        } else {
            // both sums vanish only for parallel lines: use the inverted picture
            let csum = &self.cocurvature + &other.cocurvature;
            (CRat::new(csum, Rational::zero()), bsum.conj())
        };
        if p.is_zero() && q.is_zero() {
            return internal("degenerate tangency data");
        }
        rational_pair_to_point(&p, &q)
    }

    /// The curve meets the closed rectangle [x0,x1]×[y0,y1].
    pub fn meets_rect(&self, rect: &Viewport) -> bool {
        let corners = rect.corners();
        match (self.center(), self.radius()) {
            (Some((cx, cy)), Some(r)) => {
                let nx = cx.clamp(rect.x0, rect.x1);
                let ny = cy.clamp(rect.y0, rect.y1);
                let near = ((nx - cx).powi(2) + (ny - cy).powi(2)).sqrt();
                let far = corners
                    .iter()
                    .map(|&(x, y)| ((x - cx).powi(2) + (y - cy).powi(2)).sqrt())
                    .fold(0.0, f64::max);
                near <= r && far >= r
            }
            _ => {
                let vals: Vec<f64> =
                    corners.iter().map(|&(x, y)| self.signed_distance(Complex64::new(x, y))).collect();
                vals.iter().any(|&v| v <= 0.0) && vals.iter().any(|&v| v >= 0.0)
            }
        }
    }
}

fn rational_pair_to_point(p: &CRat, q: &CRat) -> Result<ProjectivePoint> {
    let mut den = BigInt::one();
    for x in [&p.re, &p.im, &q.re, &q.im] {
        den = den.lcm(x.denom());
    }
    let to_int = |x: &Rational| (x * Rational::from_integer(den.clone())).to_integer();
    let gp = GaussianInt { re: to_int(&p.re), im: to_int(&p.im) };
    let gq = GaussianInt { re: to_int(&q.re), im: to_int(&q.im) };
    ProjectivePoint::new(gp, gq)
}

/// Four circles as the rows of a 4×4 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AccQuadruple {
    pub rows: [AccCircle; 4],
}

impl AccQuadruple {
    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        AccQuadruple { rows: rows.map(AccCircle::from_ints) }
    }

    pub fn matrix(&self) -> [[Rational; 4]; 4] {
        std::array::from_fn(|i| self.rows[i].row())
    }

    /// CᵀQ_D C with Q_D = I − ½·11ᵀ, which for a Descartes configuration equals
    /// [[0,−4,0,0],[−4,0,0,0],[0,0,2,0],[0,0,0,2]].
    pub fn gram(&self) -> [[Rational; 4]; 4] {
        let c = self.matrix();
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let g = |i: usize, k: usize| if i == k { half.clone() } else { -&half };
        std::array::from_fn(|r| {
            std::array::from_fn(|s| {
                let mut total = Rational::zero();
                for i in 0..4 {
                    for k in 0..4 {
                        total += &c[i][r] * g(i, k) * &c[k][s];
                    }
                }
                total
            })
        })
    }

    pub fn is_descartes_configuration(&self) -> bool {
        let target = [[0, -4, 0, 0], [-4, 0, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]].map(|r| r.map(rat));
        self.gram() == target
    }

    /// Row-mixing action of an integer matrix.
    pub fn left_multiply(&self, m: &IntMatrix4) -> Result<AccQuadruple> {
        let c = self.matrix();
        let rows: Vec<AccCircle> = (0..4)
            .map(|i| {
                let row: [Rational; 4] = std::array::from_fn(|j| {
                    let mut s = Rational::zero();
                    for (k, ck) in c.iter().enumerate() {
                        s += Rational::from_integer(m.0[i][k].clone()) * &ck[j];
                    }
                    s
                });
                AccCircle::from_row(row)
            })
            .collect::<Result<_>>()?;
        Ok(AccQuadruple { rows: rows.try_into().expect("four rows") })
    }

    /// Tangency point of rows i and j.
    pub fn tangency(&self, i: usize, j: usize) -> Result<ProjectivePoint> {
        self.rows[i].tangency_point(&self.rows[j])
    }

    pub fn tangency_points(&self) -> Result<Vec<ProjectivePoint>> {
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                out.push(self.tangency(i, j)?);
            }
        }
        Ok(out)
    }
}

/// R_B (rows B₁..B₄) and its dual R_A (rows A₁..A₄).
pub fn base_quadruples() -> (AccQuadruple, AccQuadruple) {
    (base_quadruple(Side::B), base_quadruple(Side::A))
}

pub fn base_quadruple(side: Side) -> AccQuadruple {
    AccQuadruple::from_ints(base_rows(side))
}

pub(crate) fn base_rows(side: Side) -> [[i64; 4]; 4] {
    match side {
        Side::B => [[0, 0, 0, -1], [2, 0, 0, 1], [0, 2, 0, 1], [2, 2, 2, 1]],
        Side::A => [[2, 2, 1, 2], [0, 2, 1, 0], [2, 0, 1, 0], [0, 0, -1, 0]],
    }
}

/// Mₙ⋯M₁·q for the Möbius-order word m₁⋯mₙ; circle i of the result is
/// m₁⋯mₙ applied to circle i of q.
pub fn act_on_quadruple(word: &Word, q: &AccQuadruple) -> Result<AccQuadruple> {
    if !q.is_descartes_configuration() {
        return domain("quadruple is not in Descartes configuration");
    }
    let out = q.left_multiply(&word.inverse().descartes_product())?;
    if !out.is_descartes_configuration() {
        return internal("group action broke the Descartes configuration");
    }
    Ok(out)
}

/// Image of a base region under a normal-form word.
#[derive(Clone, Debug, PartialEq)]
pub enum FareyRegion {
    /// Open interior of an oriented circle.
    Circle { word: Word, base: RegionLabel, circle: AccCircle },
    /// Closed curvilinear triangle. `sides[k]` is the side opposite `vertices[k]`.
    Triangle {
        word: Word,
        base: RegionLabel,
        vertices: [ProjectivePoint; 3],
        sides: [AccCircle; 3],
        /// Circle through the three vertices (image of the dual base circle).
        circumcircle: AccCircle,
    },
}

impl FareyRegion {
    pub fn word(&self) -> &Word {
        match self {
            FareyRegion::Circle { word, .. } | FareyRegion::Triangle { word, .. } => word,
        }
    }

    pub fn base(&self) -> RegionLabel {
        match self {
            FareyRegion::Circle { base, .. } | FareyRegion::Triangle { base, .. } => *base,
        }
    }

    /// The circle drawn for this region: its own circle, or the dual circle
    /// through a triangle's vertices.
    pub fn display_circle(&self) -> &AccCircle {
        match self {
            FareyRegion::Circle { circle, .. } => circle,
            FareyRegion::Triangle { circumcircle, .. } => circumcircle,
        }
    }

    /// Membership of an exact point: pull back by the word prefix and test
    /// the base region (closed for triangles, open for circles).
    pub fn contains(&self, z: &ProjectivePoint) -> bool {
        let w = self.word();
        let prefix = w.prefix(w.len() - 1).mobius();
        let pulled = prefix.inverse().apply(z);
        self.base().contains_closed(&pulled)
    }
}

/// Base region of a single letter on the given side.
pub fn letter_region(side: Side, letter: crate::group::Letter) -> RegionLabel {
    let kind = match (side, letter.is_swap()) {
        (Side::B, false) | (Side::A, true) => RegionKind::Circle,
        _ => RegionKind::Triangle,
    };
    RegionLabel::new(side, kind, letter.index())
}

/// F(m₁⋯mₙ) = m₁⋯mₙ₋₁(R), R the base region of mₙ. B side needs swap normal
/// form, A side invert normal form.
pub fn farey_region(side: Side, word: &Word) -> Result<FareyRegion> {
    let form = match side {
        Side::B => NormalForm::Swap,
        Side::A => NormalForm::Invert,
    };
    let Some(&last) = word.letters().last() else {
        return domain("Farey regions need a nonempty word");
    };
    if !word.is_normal(form) {
        return domain(format!("word {word} is not in {form:?} normal form"));
    }
    let prefix = word.prefix(word.len() - 1).mobius();
    let base = letter_region(side, last);
    let own = base_quadruple(side);
    let dual = base_quadruple(side.dual());
    let i = last.index() - 1;
    match base.kind {
        RegionKind::Circle => {
            Ok(FareyRegion::Circle { word: word.clone(), base, circle: own.rows[i].transform(&prefix)? })
        }
        RegionKind::Triangle => {
            let others: Vec<usize> = (0..4).filter(|&j| j != i).collect();
            // vertex k is the tangency of the two sides other than side k
            let sides: [AccCircle; 3] = std::array::from_fn(|k| own.rows[others[k]].clone());
            let vertices: [ProjectivePoint; 3] = std::array::from_fn(|k| {
                let (x, y) = match k {
                    0 => (others[1], others[2]),
                    1 => (others[0], others[2]),
                    _ => (others[0], others[1]),
                };
                own.tangency(x, y).expect("base circles are tangent")
            });
            Ok(FareyRegion::Triangle {
                word: word.clone(),
                base,
                vertices: vertices.map(|v| prefix.apply(&v)),
                sides: sides.map(|s| s.transform(&prefix)).into_iter().collect::<Result<Vec<_>>>()?.try_into().unwrap(),
                circumcircle: dual.rows[i].transform(&prefix)?,
            })
        }
    }
}

/// Rectangle [x0, x1] × [y0, y1] in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Viewport {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        if !(x0 < x1 && y0 < y1) || ![x0, y0, x1, y1].iter().all(|v| v.is_finite()) {
            return domain("viewport needs x0 < x1 and y0 < y1");
        }
        Ok(Viewport { x0, y0, x1, y1 })
    }

    pub fn unit_square() -> Self {
        Viewport { x0: 0.0, y0: 0.0, x1: 1.0, y1: 1.0 }
    }

    fn corners(&self) -> [(f64, f64); 4] {
        [(self.x0, self.y0), (self.x1, self.y0), (self.x0, self.y1), (self.x1, self.y1)]
    }
}

pub const MAX_RENDER_DEPTH: usize = 8;

/// One drawable element: a circle with its exact data and provenance word.
#[derive(Clone, Debug)]
pub struct RenderElement {
    pub circle: AccCircle,
    pub word: Word,
    pub kind: RegionKind,
}

/// One element per Farey region of the side's normal-form words of length
/// 1..=depth whose drawn circle meets the viewport, ordered by word.
pub fn partition_elements(side: Side, depth: usize, viewport: &Viewport) -> Result<Vec<RenderElement>> {
    if depth > MAX_RENDER_DEPTH {
        return domain(format!("render depth {depth} exceeds the maximum {MAX_RENDER_DEPTH}"));
    }
    let form = match side {
        Side::B => NormalForm::Swap,
        Side::A => NormalForm::Invert,
    };
    let mut words: Vec<Word> = (1..=depth).flat_map(|n| crate::group::normal_words(n, form)).collect();
    words.sort();
    let mut out = Vec::new();
    for w in words {
        let region = farey_region(side, &w)?;
        let circle = region.display_circle().clone();
        if circle.meets_rect(viewport) {
            out.push(RenderElement { circle, word: w, kind: region.base().kind });
        }
    }
    Ok(out)
}

/// Format with 12 significant digits.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{:.*e}", 11, x);
    let v: f64 = s.parse().unwrap();
    let mag = v.abs().log10().floor() as i32;
    if (-5..12).contains(&mag) {
        let decimals = (11 - mag).max(0) as usize;
        let t = format!("{:.*}", decimals, v);
        if t.contains('.') {
            t.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            t
        }
    } else {
        s
    }
}

/// Deterministic SVG; the complex plane is flipped so that y points up.
pub fn render_svg(elements: &[RenderElement], viewport: &Viewport, pixels: f64) -> String {
    let scale = pixels / (viewport.x1 - viewport.x0).max(viewport.y1 - viewport.y0);
    let w = (viewport.x1 - viewport.x0) * scale;
    let h = (viewport.y1 - viewport.y0) * scale;
    let px = |x: f64| (x - viewport.x0) * scale;
    let py = |y: f64| (viewport.y1 - y) * scale;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        fmt12(w),
        fmt12(h),
        fmt12(w),
        fmt12(h)
    );
    let _ = writeln!(s, r#"<g fill="none" stroke="black" stroke-width="0.5">"#);
    for e in elements {
        let meta = format!(
            r#"data-curvature="{}" data-word="{}" data-kind="{}""#,
            e.circle.curvature,
            e.word,
            match e.kind {
                RegionKind::Circle => "circle",
                RegionKind::Triangle => "triangle",
            }
        );
        match (e.circle.center(), e.circle.radius()) {
            (Some((cx, cy)), Some(r)) => {
                let _ = writeln!(
                    s,
                    r#"<circle cx="{}" cy="{}" r="{}" {meta}/>"#,
                    fmt12(px(cx)),
                    fmt12(py(cy)),
                    fmt12(r * scale)
                );
            }
            _ => {
                if let Some(((x1, y1), (x2, y2))) = clip_line(&e.circle, viewport) {
                    let _ = writeln!(
                        s,
                        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {meta}/>"#,
                        fmt12(px(x1)),
                        fmt12(py(y1)),
                        fmt12(px(x2)),
                        fmt12(py(y2))
                    );
                }
            }
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

/// The segment of the line b1·x + b2·y = c/2 inside the viewport.
fn clip_line(line: &AccCircle, v: &Viewport) -> Option<((f64, f64), (f64, f64))> {
    let (b1, b2) = (rat_to_f64(&line.b1), rat_to_f64(&line.b2));
    let k = rat_to_f64(&line.cocurvature) / 2.0;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    if b2.abs() > 1e-15 {
        for x in [v.x0, v.x1] {
            let y = (k - b1 * x) / b2;
            if y >= v.y0 - 1e-12 && y <= v.y1 + 1e-12 {
                pts.push((x, y));
            }
        }
    }
    if b1.abs() > 1e-15 {
        for y in [v.y0, v.y1] {
            let x = (k - b2 * y) / b1;
            if x >= v.x0 - 1e-12 && x <= v.x1 + 1e-12 {
                pts.push((x, y));
            }
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    if pts.len() >= 2 {
        Some((pts[0], pts[pts.len() - 1]))
    } else {
        None
    }
}

/// Integer ACC row of a circle whose coordinates are all integers.
pub fn integral_row(c: &AccCircle) -> Option<[Integer; 4]> {
    let r = c.row();
    if r.iter().all(|x| x.is_integer()) {
        Some(r.map(|x| x.to_integer()))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::ParityClass;
    use crate::group::Letter;
    use std::collections::HashSet;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn base_quadruple_rows() {
        let (rb, ra) = base_quadruples();
        assert_eq!(rb.rows[0], AccCircle::from_ints([0, 0, 0, -1]));
        assert_eq!(ra.rows[3], AccCircle::from_ints([0, 0, -1, 0]));
        assert!(rb.is_descartes_configuration());
        assert!(ra.is_descartes_configuration());
        // R_A = D·R_B
        let d = IntMatrix4::from_small(&crate::group::TWO_D);
        let doubled = rb.left_multiply(&d).map(|_| ()).err();
        assert!(doubled.is_some(), "2D·R_B is not a unit-normalized quadruple");
        let m = rb.matrix();
        for i in 0..4 {
            for j in 0..4 {
                let mut s = Rational::zero();
                for k in 0..4 {
                    s += rat(crate::group::TWO_D[i][k]) * &m[k][j];
                }
                assert_eq!(s / rat(2), ra.rows[i].row()[j].clone());
            }
        }
    }

    #[test]
    fn tangency_points_are_the_six_fixed_points() {
        let (rb, ra) = base_quadruples();
        let expect: HashSet<ProjectivePoint> = ParityClass::ALL.iter().map(|c| c.point()).collect();
        let got: HashSet<ProjectivePoint> = rb.tangency_points().unwrap().into_iter().collect();
        assert_eq!(got, expect);
        let got_a: HashSet<ProjectivePoint> = ra.tangency_points().unwrap().into_iter().collect();
        assert_eq!(got_a, expect);
    }

    #[test]
    fn action_examples() {
        let (rb, _) = base_quadruples();
        assert_eq!(act_on_quadruple(&Word::empty(), &rb).unwrap(), rb);
        assert_eq!(act_on_quadruple(&w("S1 S1"), &rb).unwrap(), rb);
        let q = act_on_quadruple(&w("S1P"), &rb).unwrap();
        assert!(q.rows[0].same_circle(&rb.rows[0]));
        // rows 2..4 are the inversions (complex conjugates) of R_B rows in the real axis
        let refl = Letter::inversion(1).mobius();
        for i in 1..4 {
            assert_eq!(q.rows[i], rb.rows[i].transform(&refl).unwrap());
            assert!(!q.rows[i].same_circle(&rb.rows[i]));
        }
    }

    #[test]
    fn swaps_of_ra_are_inversions_of_rb() {
        let (rb, ra) = base_quadruples();
        for i in 1..=4u8 {
            // s_i is inversion in A_i: it fixes A_i and the circles B_j (j ≠ i)
            let s = Letter::swap(i).mobius();
            let k = i as usize - 1;
            assert!(ra.rows[k].transform(&s).unwrap().same_circle(&ra.rows[k]));
            for j in (0..4).filter(|&j| j != k) {
                assert!(rb.rows[j].transform(&s).unwrap().same_circle(&rb.rows[j]));
            }
            let sp = Letter::inversion(i).mobius();
            assert!(rb.rows[k].transform(&sp).unwrap().same_circle(&rb.rows[k]));
            for j in (0..4).filter(|&j| j != k) {
                assert!(ra.rows[j].transform(&sp).unwrap().same_circle(&ra.rows[j]));
            }
        }
    }

    #[test]
    fn farey_region_examples() {
        let r = farey_region(Side::B, &w("S3P")).unwrap();
        let FareyRegion::Circle { circle, .. } = &r else { panic!("expected a circle") };
        assert_eq!(circle.center(), Some((0.0, 0.5)));
        assert_eq!(circle.radius(), Some(0.5));
        let t = farey_region(Side::B, &w("S1")).unwrap();
        let FareyRegion::Triangle { vertices, .. } = &t else { panic!("expected a triangle") };
        let got: HashSet<_> = vertices.iter().cloned().collect();
        let expect: HashSet<_> =
            [ParityClass::I, ParityClass::OnePlusI, ParityClass::HalfOnePlusI].map(|c| c.point()).into();
        assert_eq!(got, expect);
        assert!(farey_region(Side::B, &w("S1 S2P")).is_err());
        assert!(farey_region(Side::B, &Word::empty()).is_err());
    }

    #[test]
    fn render_examples() {
        let big = Viewport::new(-10.0, -10.0, 10.0, 10.0).unwrap();
        let one = partition_elements(Side::B, 1, &big).unwrap();
        assert_eq!(one.len(), 8);
        let empty = render_svg(&[], &Viewport::unit_square(), 500.0);
        assert!(empty.contains("<svg") && empty.contains("</svg>") && !empty.contains("<circle"));
        let svg = render_svg(&one, &big, 400.0);
        assert_eq!(svg.matches("data-word=").count(), 8);
        assert_eq!(svg, render_svg(&one, &big, 400.0));
    }

    #[test]
    fn fmt12_digits() {
        assert_eq!(fmt12(0.5), "0.5");
        assert_eq!(fmt12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt12(123456.789), "123456.789");
        assert_eq!(fmt12(2.0), "2");
        assert_eq!(fmt12(-0.25), "-0.25");
        assert_eq!(fmt12(1e-9), "1.00000000000e-9");
    }
}
