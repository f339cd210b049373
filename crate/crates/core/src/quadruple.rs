//! Reduction systems on integer quadruples: T_L on Lorentz quadruples and
//! its projection T_sph to the sphere, the Descartes systems T_S and T_I,
//! root quadruples, and the height-descent system T_D with its graph checks.

use std::collections::{HashMap, HashSet, VecDeque};

use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{domain, internal, Error, Result};
use crate::gaussian::{GaussianInt, Integer, ProjectivePoint};
use crate::group::{apply_small, descartes_small, IntMatrix4, Kind, Letter, TWO_J};

pub type Quad = [Integer; 4];

pub fn quad(a: i64, b: i64, c: i64, d: i64) -> Quad {
    [a, b, c, d].map(Integer::from)
}

fn small(q: &Quad) -> Option<[i64; 4]> {
    let v: Vec<i64> = q.iter().filter_map(|x| x.to_i64()).collect();
    v.try_into().ok()
}

pub fn content(q: &Quad) -> Integer {
    q.iter().fold(Integer::zero(), |g, x| g.gcd(x))
}

pub fn is_lorentz(q: &Quad) -> bool {
    let [a, b, c, d] = q;
    a.is_positive() && a * a == b * b + c * c + d * d
}

pub fn is_descartes(q: &Quad) -> bool {
    let s: Integer = q.iter().sum();
    let sq: Integer = q.iter().map(|x| x * x).sum();
    &s * &s == sq * 2
}

/// y = J·x. Entry sums of both kinds of quadruple are even, so valid inputs
/// always give integers.
fn j_map(q: &Quad) -> Result<Quad> {
    let doubled = apply_small(&TWO_J, q);
    if doubled.iter().any(|x| x.is_odd()) {
        return domain(format!("J-image of {} has half-integer entries", fmt_quad(q)));
    }
    Ok(doubled.map(|x| x / 2))
}

pub fn lorentz_to_descartes(q: &Quad) -> Result<Quad> {
    if !is_lorentz(q) {
        return domain(format!("{} is not a Lorentz quadruple", fmt_quad(q)));
    }
    j_map(q)
}

pub fn descartes_to_lorentz(q: &Quad) -> Result<Quad> {
    if !is_descartes(q) {
        return domain(format!("{} is not a Descartes quadruple", fmt_quad(q)));
    }
    j_map(q)
}

pub fn fmt_quad(q: &Quad) -> String {
    format!("({},{},{},{})", q[0], q[1], q[2], q[3])
}

/// Which concrete system produced a trace; decides how letters print.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Realization {
    Lorentz,
    Descartes,
    Height,
}

pub trait TraceLetter: Copy {
    fn token(&self, realization: Realization) -> String;
}

impl TraceLetter for Letter {
    fn token(&self, realization: Realization) -> String {
        match realization {
            Realization::Lorentz => self.lorentz_token().to_string(),
            _ => Letter::token(*self).to_string(),
        }
    }
}

/// `states[0]` is the input, `states[k] = W_{k}⁻¹ states[k-1]`, and the
/// last state is the terminal; the input equals W₁⋯Wₙ·terminal.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionTrace<L> {
    pub realization: Realization,
    pub letters: Vec<L>,
    pub states: Vec<Quad>,
    pub gcd: Integer,
}

fn int_json(x: &Integer) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn quad_json(q: &Quad) -> Value {
    Value::Array(q.iter().map(int_json).collect())
}

impl<L: TraceLetter> ReductionTrace<L> {
    pub fn input(&self) -> &Quad {
        &self.states[0]
    }

    pub fn terminal(&self) -> &Quad {
        self.states.last().expect("trace has its input state")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn tokens(&self) -> Vec<String> {
        self.letters.iter().map(|l| l.token(self.realization)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "input": quad_json(self.input()),
            "gcd": int_json(&self.gcd),
            "word": self.tokens(),
            "states": self.states.iter().map(quad_json).collect::<Vec<_>>(),
            "terminal": quad_json(self.terminal()),
        })
    }
}

fn scale_small<T: Signed + Clone>(k: i64, x: &T) -> T {
    let mut s = T::zero();
    for _ in 0..k.abs() {
        s = s + x.clone();
    }
    if k < 0 {
        -s
    } else {
        s
    }
}

fn apply_generic<T: Signed + Clone>(m: &[[i64; 4]; 4], v: &[T; 4]) -> [T; 4] {
    std::array::from_fn(|i| {
        v.iter().enumerate().fold(T::zero(), |s, (k, x)| s + scale_small(m[i][k], x))
    })
}

/// T_L priority order: L1P..L4P, then L1..L4.
const TL_ORDER: [Letter; 8] = [
    Letter::inversion(1),
    Letter::inversion(2),
    Letter::inversion(3),
    Letter::inversion(4),
    Letter::swap(1),
    Letter::swap(2),
    Letter::swap(3),
    Letter::swap(4),
];

/// Terminal iff a ≥ |b|+|c|+|d|; on the cone this means two of b, c, d vanish.
fn lorentz_terminal<T: Signed + Clone + PartialOrd>(v: &[T; 4]) -> bool {
    v[0] >= v[1].abs() + v[2].abs() + v[3].abs()
}

/// First generator in priority order whose image has strictly smaller
/// first coordinate.
fn lorentz_select<T: Signed + Clone + PartialOrd>(v: &[T; 4]) -> Option<Letter> {
    TL_ORDER.into_iter().find(|l| {
        let row = l.lorentz_small()[0];
        let head = (0..4).fold(T::zero(), |s, k| s + scale_small(row[k], &v[k]));
        head < v[0]
    })
}

pub fn t_l_is_terminal(q: &Quad) -> bool {
    lorentz_terminal(q)
}

pub fn t_l_step(q: &Quad) -> Result<Option<(Letter, Quad)>> {
    if !is_lorentz(q) {
        return domain(format!("{} is not a Lorentz quadruple", fmt_quad(q)));
    }
    if lorentz_terminal(q) {
        return Ok(None);
    }
    match lorentz_select(q) {
        Some(l) => Ok(Some((l, apply_small(l.lorentz_small(), q)))),
        None => internal(format!("no strict T_L move from {}", fmt_quad(q))),
    }
}

fn run<L: Copy>(
    realization: Realization,
    q: &Quad,
    step: impl Fn(&Quad) -> Result<Option<(L, Quad)>>,
) -> Result<ReductionTrace<L>> {
    let mut states = vec![q.clone()];
    let mut letters = Vec::new();
    // each system strictly decreases a positive size at least every other step
    let size: Integer = q.iter().map(|x| x.abs()).sum();
    let cap = size.to_usize().map_or(usize::MAX, |s| s.saturating_mul(2).saturating_add(64));
    while let Some((l, next)) = step(states.last().unwrap())? {
        letters.push(l);
        states.push(next);
        if letters.len() > cap {
            return internal(format!("reduction of {} did not terminate", fmt_quad(q)));
        }
    }
    Ok(ReductionTrace { realization, letters, states, gcd: content(q) })
}

pub fn t_l_reduce(q: &Quad) -> Result<ReductionTrace<Letter>> {
    run(Realization::Lorentz, q, t_l_step)
}

/// T_L letters for a quadruple with small entries, without BigInt.
/// Entries stay bounded by the input's, so i64 cannot overflow for |a| < 2⁶⁰.
pub fn t_l_word_small(q: [i64; 4]) -> Result<Vec<Letter>> {
    let [a, b, c, d] = q;
    if a * a != b * b + c * c + d * d || a.abs() >= 1 << 30 {
        return domain(format!("({a}, {b}, {c}, {d}) is not a small Lorentz quadruple"));
    }
    let mut v = q;
    let mut letters = Vec::new();
    let cap = 2 * (a.abs() + b.abs() + c.abs() + d.abs()) as usize + 64;
    while !lorentz_terminal(&v) {
        let Some(l) = lorentz_select(&v) else {
            return internal(format!("no strict T_L move from {v:?}"));
        };
        let m = l.lorentz_small();
        v = std::array::from_fn(|i| (0..4).map(|k| m[i][k] * v[k]).sum());
        letters.push(l);
        if letters.len() > cap {
            return internal(format!("reduction of {q:?} did not terminate"));
        }
    }
    Ok(letters)
}

/// Product of the letters' matrices in word order applied to the terminal.
pub fn reconstruct(trace: &ReductionTrace<Letter>) -> Quad {
    let m = trace.letters.iter().fold(IntMatrix4::identity(), |m, l| {
        m.mul(&match trace.realization {
            Realization::Lorentz => l.lorentz(),
            _ => l.descartes(),
        })
    });
    m.apply(trace.terminal())
}

/// Point (X, Y, Z) of the unit sphere.
pub type SpherePoint = [BigRational; 3];

pub fn project(q: &Quad) -> Result<SpherePoint> {
    if !is_lorentz(q) {
        return domain(format!("{} is not a Lorentz quadruple", fmt_quad(q)));
    }
    let a = BigRational::from_integer(q[0].clone());
    Ok(std::array::from_fn(|i| BigRational::from_integer(q[i + 1].clone()) / &a))
}

fn sphere_step_generic<T: Signed + Clone + PartialOrd + std::ops::Div<Output = T>>(
    p: &[T; 3],
) -> Option<(Letter, [T; 3])> {
    let v = [T::one(), p[0].clone(), p[1].clone(), p[2].clone()];
    if lorentz_terminal(&v) {
        return None;
    }
    let l = lorentz_select(&v)?;
    let w = apply_generic(l.lorentz_small(), &v);
    Some((l, [w[1].clone() / w[0].clone(), w[2].clone() / w[0].clone(), w[3].clone() / w[0].clone()]))
}

/// T_sph on an exact point; `None` at the images (±1,0,0),… of the terminals.
pub fn t_sph_step(p: &SpherePoint) -> Result<Option<(Letter, SpherePoint)>> {
    let n: BigRational = p.iter().map(|x| x * x).sum();
    if !n.is_one() {
        return domain("point is not on the unit sphere");
    }
    Ok(sphere_step_generic(p))
}

/// T_sph in double precision; points within `eps` of a terminal halt.
pub fn t_sph_step_float(p: [f64; 3], eps: f64) -> Option<(Letter, [f64; 3])> {
    if 1.0 + eps >= p.iter().map(|x| x.abs()).sum::<f64>() {
        return None;
    }
    sphere_step_generic(&p)
}

/// φ∘π: (a+c−d + bi)/(a+b−d−ci), with a second chart where both vanish.
pub fn phi_pi(q: &Quad) -> Result<ProjectivePoint> {
    if !is_lorentz(q) {
        return domain(format!("{} is not a Lorentz quadruple", fmt_quad(q)));
    }
    let [a, b, c, d] = q;
    let p = GaussianInt { re: a + c - d, im: b.clone() };
    let r = GaussianInt { re: a + b - d, im: -c };
    if !p.is_zero() || !r.is_zero() {
        return ProjectivePoint::new(p, r);
    }
    // p·(b − i(a+c+d)) and q·(b − i(a+c+d)) simplified on the cone
    let p2 = GaussianInt { re: b.clone(), im: a + c + d };
    let r2 = GaussianInt { re: a + b + d, im: c.clone() };
    ProjectivePoint::new(p2, r2)
}

/// Simplest Descartes quadruples: permutations of (g,g,0,0), g > 0.
pub fn is_simplest_descartes(q: &Quad) -> bool {
    let nz: Vec<&Integer> = q.iter().filter(|x| !x.is_zero()).collect();
    nz.len() == 2 && nz[0] == nz[1] && nz[0].is_positive()
}

fn descartes_checked(q: &Quad) -> Result<()> {
    if !is_descartes(q) {
        return domain(format!("{} is not a Descartes quadruple", fmt_quad(q)));
    }
    if !q.iter().sum::<Integer>().is_positive() {
        return domain(format!("{} has non-positive curvature sum", fmt_quad(q)));
    }
    Ok(())
}

fn inversion_move(q: &Quad) -> Option<Letter> {
    (0..4).find(|&i| q[i].is_negative()).map(|i| Letter::inversion(i as u8 + 1))
}

fn swap_move(q: &Quad) -> Option<Letter> {
    let total: Integer = q.iter().sum();
    // entry i exceeds the sum of the others
    (0..4).find(|&i| &q[i] * 2 > total).map(|i| Letter::swap(i as u8 + 1))
}

fn descartes_apply(l: Letter, q: &Quad) -> Quad {
    apply_small(&descartes_small(l), q)
}

pub fn t_s_step(q: &Quad) -> Result<Option<(Letter, Quad)>> {
    descartes_checked(q)?;
    if is_simplest_descartes(q) {
        return Ok(None);
    }
    match inversion_move(q).or_else(|| swap_move(q)) {
        Some(l) => Ok(Some((l, descartes_apply(l, q)))),
        None => internal(format!("no T_S move from {}", fmt_quad(q))),
    }
}

pub fn t_i_step(q: &Quad) -> Result<Option<(Letter, Quad)>> {
    descartes_checked(q)?;
    if is_simplest_descartes(q) {
        return Ok(None);
    }
    match swap_move(q).or_else(|| inversion_move(q)) {
        Some(l) => Ok(Some((l, descartes_apply(l, q)))),
        None => internal(format!("no T_I move from {}", fmt_quad(q))),
    }
}

pub fn t_s_reduce(q: &Quad) -> Result<ReductionTrace<Letter>> {
    run(Realization::Descartes, q, t_s_step)
}

pub fn t_i_reduce(q: &Quad) -> Result<ReductionTrace<Letter>> {
    run(Realization::Descartes, q, t_i_step)
}

fn sorted(q: &Quad) -> Quad {
    let mut s = q.clone();
    s.sort();
    s
}

/// a ≤ 0 ≤ b ≤ c ≤ d and a + b + c ≥ d after sorting.
pub fn is_root(q: &Quad) -> bool {
    let [a, b, c, d] = sorted(q);
    !a.is_positive() && !b.is_negative() && a + b + c >= d
}

/// Runs T_I and tests the state at which the first inversion is applied
/// (or the terminal, if none is).
pub fn swap_run_root_check(q: &Quad) -> Result<bool> {
    let trace = t_i_reduce(q)?;
    let k = trace.letters.iter().position(|l| l.kind() == Kind::Inversion).unwrap_or(trace.letters.len());
    Ok(is_root(&trace.states[k]))
}

/// S_ii = S_i⊥·S_i.
pub fn s_ii(i: u8) -> IntMatrix4 {
    Letter::inversion(i).descartes().mul(&Letter::swap(i).descartes())
}

/// Recovery letter of T_D. D4 is the sign-corrected matrix with first row
/// (2,1,1,1); the other six are as usually tabulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DLetter(u8);

const D_MATRICES: [[[i64; 4]; 4]; 7] = [
    [[2, 1, -1, -1], [-1, 0, 1, 1], [-1, -1, 0, 1], [-1, -1, 1, 0]],
    [[2, -1, 1, -1], [-1, 0, -1, 1], [-1, 1, 0, 1], [-1, 1, -1, 0]],
    [[2, -1, -1, 1], [-1, 0, 1, -1], [-1, 1, 0, -1], [-1, 1, 1, 0]],
    [[2, 1, 1, 1], [-1, 0, -1, -1], [-1, -1, 0, -1], [-1, -1, -1, 0]],
    [[2, -1, 1, 1], [-1, 0, -1, -1], [-1, 1, 0, -1], [-1, 1, -1, 0]],
    [[2, 1, -1, 1], [-1, 0, 1, -1], [-1, -1, 0, -1], [-1, -1, 1, 0]],
    [[2, 1, 1, -1], [-1, 0, -1, 1], [-1, -1, 0, 1], [-1, -1, -1, 0]],
];

/// The uncorrected D4 as printed in the usual table; only reconstructs
/// the impossible all-positive sign pattern.
pub const D4_AS_TABULATED: [[i64; 4]; 4] = [[2, -1, -1, -1], [-1, 0, 1, 1], [-1, 1, 0, 1], [-1, 1, 1, 0]];

impl DLetter {
    pub fn new(index: u8) -> Result<Self> {
        if (1..=7).contains(&index) {
            Ok(DLetter(index))
        } else {
            domain(format!("D-letter index {index} out of range"))
        }
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn matrix(self) -> &'static [[i64; 4]; 4] {
        &D_MATRICES[self.0 as usize - 1]
    }

    pub fn all() -> [DLetter; 7] {
        std::array::from_fn(|i| DLetter(i as u8 + 1))
    }
}

impl TraceLetter for DLetter {
    fn token(&self, _: Realization) -> String {
        format!("D{}", self.0)
    }
}

fn abs_quad(q: &Quad) -> Quad {
    q.clone().map(|x| x.abs())
}

fn nonneg_lorentz_checked(q: &Quad) -> Result<()> {
    if !is_lorentz(q) || q.iter().any(|x| x.is_negative()) {
        return domain(format!("{} is not a nonnegative Lorentz quadruple", fmt_quad(q)));
    }
    Ok(())
}

/// (g, g, 0, 0) up to moving the g among b, c, d.
pub fn is_origin(q: &Quad) -> bool {
    let nz: Vec<&Integer> = q[1..].iter().filter(|x| !x.is_zero()).collect();
    q[0].is_positive() && nz.len() == 1 && *nz[0] == q[0]
}

/// Normalized form: absolute values sorted in decreasing order. Heights
/// compare these lexicographically.
pub fn height_key(q: &Quad) -> Quad {
    let mut s = abs_quad(q);
    s.sort_by(|x, y| y.cmp(x));
    s
}

pub fn t_d_step(q: &Quad) -> Result<Option<(DLetter, Quad)>> {
    nonneg_lorentz_checked(q)?;
    if is_origin(q) {
        return Ok(None);
    }
    let next = abs_quad(&apply_small(Letter::swap(1).lorentz_small(), q));
    match DLetter::all().into_iter().find(|d| abs_quad(&apply_small(d.matrix(), &next)) == *q) {
        Some(d) => Ok(Some((d, next))),
        None => internal(format!("no D-letter recovers {}", fmt_quad(q))),
    }
}

pub fn t_d_reduce(q: &Quad) -> Result<ReductionTrace<DLetter>> {
    run(Realization::Height, q, t_d_step)
}

/// Signs flipped on the last three rows: (R·D_i) maps each state to its
/// predecessor without absolute values, so the input is Π(R·D_i)·terminal.
pub fn t_d_word_product(trace: &ReductionTrace<DLetter>) -> Quad {
    let r = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]];
    let m = trace.letters.iter().fold(IntMatrix4::identity(), |m, d| {
        m.mul(&IntMatrix4::from_small(&r)).mul(&IntMatrix4::from_small(d.matrix()))
    });
    m.apply(trace.terminal())
}

/// Neighbours in the graph on nonnegative quadruples: |L·q| over the eight
/// generators, self-loops dropped.
pub fn graph_neighbours(q: &Quad) -> Vec<Quad> {
    let mut out: Vec<Quad> = Letter::ALL
        .iter()
        .map(|l| abs_quad(&apply_small(l.lorentz_small(), q)))
        .filter(|n| n != q)
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn min_height_neighbour(q: &Quad) -> Quad {
    graph_neighbours(q).into_iter().min_by_key(height_key).expect("eight neighbours")
}

/// All primitive Lorentz quadruples with 0 < a ≤ max_a, optionally only
/// those with nonnegative entries, in lexicographic order.
pub fn lorentz_quadruples(max_a: i64, nonneg: bool) -> Vec<Quad> {
    let mut out = Vec::new();
    for a in 1..=max_a {
        let lo = if nonneg { 0 } else { -a };
        for b in lo..=a {
            for c in lo..=a {
                let r = a * a - b * b - c * c;
                if r < 0 {
                    continue;
                }
                let d = r.isqrt();
                if d * d != r {
                    continue;
                }
                let ds: &[i64] = if d == 0 || nonneg { &[d][..] } else { &[-d, d][..] };
                for &dd in ds {
                    if a.gcd(&b).gcd(&c).gcd(&dd) == 1 {
                        out.push(quad(a, b, c, dd));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Distances to the nearest origin in the graph restricted to a ≤ max_a.
pub fn bfs_distances(max_a: i64) -> HashMap<Quad, usize> {
    let bound = Integer::from(max_a);
    let mut dist = HashMap::new();
    let mut queue = VecDeque::new();
    for o in [quad(1, 1, 0, 0), quad(1, 0, 1, 0), quad(1, 0, 0, 1)] {
        dist.insert(o.clone(), 0);
        queue.push_back(o);
    }
    while let Some(q) = queue.pop_front() {
        let d = dist[&q];
        for n in graph_neighbours(&q) {
            if n[0] <= bound && !dist.contains_key(&n) {
                dist.insert(n.clone(), d + 1);
                queue.push_back(n);
            }
        }
    }
    dist
}

/// Graph distance from q to the origins, searching quadruples with
/// a ≤ radius.
pub fn bfs_oracle(q: &Quad, radius: i64) -> Result<usize> {
    nonneg_lorentz_checked(q)?;
    let g = content(q);
    let prim = q.clone().map(|x| x / &g);
    bfs_distances(radius)
        .get(&prim)
        .copied()
        .ok_or_else(|| Error::Inconclusive(format!("{} not reached within a ≤ {radius}", fmt_quad(q))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphReport {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    /// Length of the shortest cycle, if any.
    pub girth: Option<usize>,
    /// Edges joining distinct quadruples of equal height.
    pub level_edges: usize,
}

/// Checks on the induced subgraph of primitive nonnegative quadruples with
/// a ≤ max_a.
pub fn graph_check(max_a: i64) -> GraphReport {
    let verts = lorentz_quadruples(max_a, true);
    let index: HashMap<&Quad, usize> = verts.iter().enumerate().map(|(i, q)| (q, i)).collect();
    let adj: Vec<HashSet<usize>> = verts
        .iter()
        .map(|q| graph_neighbours(q).iter().filter_map(|n| index.get(n).copied()).collect())
        .collect();
    let edges = adj.iter().map(|s| s.len()).sum::<usize>() / 2;
    let mut triangles = 0;
    let mut level_edges = 0;
    for (u, nu) in adj.iter().enumerate() {
        for &v in nu.iter().filter(|&&v| v > u) {
            if height_key(&verts[u]) == height_key(&verts[v]) {
                level_edges += 1;
            }
            triangles += nu.intersection(&adj[v]).filter(|&&w| w > v).count();
        }
    }
    // shortest cycle via BFS from every vertex
    let mut girth: Option<usize> = None;
    for s in 0..verts.len() {
        let mut dist = vec![usize::MAX; verts.len()];
        let mut parent = vec![usize::MAX; verts.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    girth = Some(girth.map_or(len, |g| g.min(len)));
                }
            }
        }
    }
    GraphReport { vertices: verts.len(), edges, triangles, girth, level_edges }
}

/// Random primitive Lorentz quadruple with a ≤ max_a (max_a ≥ 1) from
/// a = m²+n²+p²+q², b = m²+n²−p²−q², c = 2(mq+np), d = 2(nq−mp), reduced
/// by the gcd and with random coordinate order.
pub fn random_lorentz<R: Rng>(rng: &mut R, max_a: i64) -> Quad {
    let r = (max_a as f64).sqrt() as i64;
    loop {
        let [m, n, p, q] = [(); 4].map(|_| rng.gen_range(-r..=r));
        let a = m * m + n * n + p * p + q * q;
        if a == 0 || a > max_a {
            continue;
        }
        let mut v = [m * m + n * n - p * p - q * q, 2 * (m * q + n * p), 2 * (n * q - m * p)];
        let g = v.iter().fold(a, |g, x| g.gcd(x));
        let perm = rng.gen_range(0..6);
        let [x, y, z] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]][perm];
        v = [v[x], v[y], v[z]];
        return quad(a / g, v[0] / g, v[1] / g, v[2] / g);
    }
}

/// Primitive Descartes quadruples with positive sum and max |entry| ≤ bound.
pub fn descartes_quadruples(bound: i64) -> Vec<Quad> {
    let mut out = HashSet::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                let disc = a * b + b * c + c * a;
                if disc < 0 {
                    continue;
                }
                let s = disc.isqrt();
                if s * s != disc {
                    continue;
                }
                for d in [a + b + c + 2 * s, a + b + c - 2 * s] {
                    if d.abs() <= bound && a + b + c + d > 0 && a.gcd(&b).gcd(&c).gcd(&d) == 1 {
                        out.insert(quad(a, b, c, d));
                    }
                }
            }
        }
    }
    let mut v: Vec<Quad> = out.into_iter().collect();
    v.sort();
    v
}

/// Compact i64 view for callers that know entries are small.
pub fn to_small(q: &Quad) -> Option<[i64; 4]> {
    small(q)
}
