//! The restriction to P¹(R): reflections a(x) = -x, b(x) = x/(2x-1),
//! c(x) = 2-x in the sides of the ideal triangle {0, 1, ∞}, the
//! homogenized Euclidean algorithm, mediant convergents, the invariant
//! density and the conjugate systems on triples and on the unit circle.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{domain, Result};
use crate::gaussian::Integer;
use crate::measure::quadrature::integrate_1d;

/// A point p/q of P¹(Q). Canonical pairs are coprime with q ≥ 0 and
/// p > 0 when q = 0; mediant entries such as -1/0 are kept as built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPair {
    pub p: Integer,
    pub q: Integer,
}

impl RatPair {
    pub fn new(p: impl Into<Integer>, q: impl Into<Integer>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return domain("0/0 is not a point of the line");
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Ok(RatPair { p, q })
    }

    /// Keeps signs and common factors.
    pub fn raw(p: impl Into<Integer>, q: impl Into<Integer>) -> Self {
        RatPair { p: p.into(), q: q.into() }
    }

    pub fn canonical(&self) -> RatPair {
        RatPair::new(self.p.clone(), self.q.clone()).expect("pairs are never 0/0")
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        if self.q.is_zero() {
            return f64::INFINITY;
        }
        BigRational::new(self.p.clone(), self.q.clone()).to_f64().unwrap_or(f64::NAN)
    }

    pub fn mediant(&self, other: &RatPair) -> RatPair {
        RatPair::raw(&self.p + &other.p, &self.q + &other.q)
    }

    /// p·s - q·r.
    pub fn det(&self, other: &RatPair) -> Integer {
        &self.p * &other.q - &self.q * &other.p
    }
}

impl fmt::Display for RatPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl Serialize for RatPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TripleLetter {
    A,
    B,
    C,
}

impl TripleLetter {
    pub const ALL: [TripleLetter; 3] = [TripleLetter::A, TripleLetter::B, TripleLetter::C];

    pub fn position(self) -> usize {
        self as usize
    }

    /// Apply the reflection to a homogeneous pair.
    pub fn apply(self, x: &RatPair) -> RatPair {
        let (p, q) = (&x.p, &x.q);
        match self {
            TripleLetter::A => RatPair::raw(-p, q.clone()),
            TripleLetter::B => RatPair::raw(p.clone(), p * 2 - q),
            TripleLetter::C => RatPair::raw(q * 2 - p, q.clone()),
        }
    }

    pub fn apply_f64(self, x: f64) -> f64 {
        match self {
            TripleLetter::A => -x,
            TripleLetter::B => x / (2.0 * x - 1.0),
            TripleLetter::C => 2.0 - x,
        }
    }

    /// 2x2 matrix acting on column vectors (p, q).
    pub fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            TripleLetter::A => [[-1, 0], [0, 1]],
            TripleLetter::B => [[1, 0], [2, -1]],
            TripleLetter::C => [[-1, 2], [0, 1]],
        }
    }
}

impl fmt::Display for TripleLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripleLetter::A => "a",
            TripleLetter::B => "b",
            TripleLetter::C => "c",
        })
    }
}

pub fn word_string(word: &[TripleLetter]) -> String {
    word.iter().map(|l| l.to_string()).collect()
}

/// Which branch of t handles p/q, or None at the fixed points 0, 1, ∞.
/// Works for any sign convention of the pair.
pub fn branch(x: &RatPair) -> Option<TripleLetter> {
    let (p, q) = (&x.p, &x.q);
    if p.is_zero() || q.is_zero() || p == q {
        return None;
    }
    let (p, q) = if q.is_negative() { (-p, -q) } else { (p.clone(), q.clone()) };
    Some(if p.is_negative() {
        TripleLetter::A
    } else if p < q {
        TripleLetter::B
    } else {
        TripleLetter::C
    })
}

pub fn branch_f64(x: f64) -> Option<TripleLetter> {
    if x == 0.0 || x == 1.0 || !x.is_finite() {
        None
    } else if x < 0.0 {
        Some(TripleLetter::A)
    } else if x < 1.0 {
        Some(TripleLetter::B)
    } else {
        Some(TripleLetter::C)
    }
}

/// One step of t. Fixed points are a domain error.
pub fn t_real(x: &RatPair) -> Result<(TripleLetter, RatPair)> {
    match branch(x) {
        Some(l) => Ok((l, l.apply(x).canonical())),
        None => domain(format!("{x} is a fixed point of t")),
    }
}

pub fn t_real_f64(x: f64) -> Result<(TripleLetter, f64)> {
    match branch_f64(x) {
        Some(l) => Ok((l, l.apply_f64(x))),
        None => domain(format!("{x} is a fixed point of t")),
    }
}

/// Full word of a rational, ending at one of 0, 1, ∞.
pub fn expand_rational(x: &RatPair) -> (Vec<TripleLetter>, RatPair) {
    let mut cur = x.canonical();
    let mut word = Vec::new();
    while let Some(l) = branch(&cur) {
        cur = l.apply(&cur).canonical();
        word.push(l);
    }
    (word, cur)
}

/// First `steps` letters of a float orbit; stops early on a fixed point.
pub fn expand_f64(x: f64, steps: usize) -> Vec<TripleLetter> {
    let mut cur = x;
    let mut word = Vec::with_capacity(steps);
    while word.len() < steps {
        match branch_f64(cur) {
            Some(l) => {
                cur = l.apply_f64(cur);
                word.push(l);
            }
            None => break,
        }
    }
    word
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergentTriple(pub [RatPair; 3]);

impl ConvergentTriple {
    /// (1/1, ±1/0, 0/1).
    pub fn start(negative: bool) -> Self {
        let inf = if negative { RatPair::raw(-1, 0) } else { RatPair::raw(1, 0) };
        ConvergentTriple([RatPair::raw(1, 1), inf, RatPair::raw(0, 1)])
    }

    pub fn step(&self, letter: TripleLetter) -> Self {
        let k = letter.position();
        let mut next = self.0.clone();
        next[k] = self.0[(k + 1) % 3].mediant(&self.0[(k + 2) % 3]);
        ConvergentTriple(next)
    }

    pub fn is_farey(&self) -> bool {
        let e = &self.0;
        (0..3).all(|i| e[i].det(&e[(i + 1) % 3]).abs().is_one())
    }
}

impl fmt::Display for ConvergentTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Triples along the word, starting triple included.
pub fn mediant_convergents(word: &[TripleLetter], negative: bool) -> Result<Vec<ConvergentTriple>> {
    if word.windows(2).any(|w| w[0] == w[1]) {
        return domain("consecutive letters must differ");
    }
    let mut out = vec![ConvergentTriple::start(negative)];
    for &l in word {
        let next = out.last().expect("nonempty").step(l);
        out.push(next);
    }
    Ok(out)
}

/// Invariant density dμ/dx. Not integrable at 0, 1 and ∞.
pub fn real_density(x: f64) -> f64 {
    if x < 0.0 {
        -1.0 / x
    } else if x < 1.0 {
        1.0 / (x * (1.0 - x))
    } else {
        1.0 / (x - 1.0)
    }
}

/// Return time of the geodesic (y, x) with y < 0 < 1 < x.
pub fn return_time(y: f64, x: f64) -> Result<f64> {
    if !(y < 0.0 && x > 1.0) {
        return domain(format!("({y}, {x}) is not in (-∞,0)×(1,∞)"));
    }
    Ok(0.5 * ((x * (1.0 - y)) / (y * (1.0 - x))).ln())
}

/// ∫∫ r(y,x) dx dy / (x-y)² over (-∞,0)×(1,∞). Both rays are folded onto
/// [0,1) by s ↦ s/(1-s).
pub fn return_time_integral(tol: f64) -> Result<f64> {
    let inner = |v: f64| -> f64 {
        let y = -v / (1.0 - v);
        let dy = 1.0 / ((1.0 - v) * (1.0 - v));
        let f = |s: f64| {
            if s >= 1.0 || v >= 1.0 {
                return 0.0;
            }
            let x = 1.0 + s / (1.0 - s);
            let dx = 1.0 / ((1.0 - s) * (1.0 - s));
            let r = 0.5 * ((x * (1.0 - y)) / (y * (1.0 - x))).ln();
            r * dx * dy / ((x - y) * (x - y))
        };
        integrate_1d(&f, 0.0, 1.0, &[], 0.1 * tol).map(|r| r.value).unwrap_or(f64::NAN)
    };
    Ok(integrate_1d(&inner, 0.0, 1.0, &[], tol)?.value)
}

/// One run of the homogenized algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclidTrace {
    pub start: (Integer, Integer),
    pub steps: Vec<(TripleLetter, Integer, Integer)>,
    pub gcd: Integer,
    /// x·p + y·q = gcd.
    pub bezout: (Integer, Integer),
}

impl EuclidTrace {
    pub fn pairs(&self) -> Vec<(Integer, Integer)> {
        std::iter::once(self.start.clone()).chain(self.steps.iter().map(|(_, p, q)| (p.clone(), q.clone()))).collect()
    }

    pub fn terminal(&self) -> (Integer, Integer) {
        self.pairs().pop().expect("trace starts with the input")
    }
}

/// Reflective gcd: iterate a, b, c on (p, q) until p = q or an entry is zero.
/// The Bézout pair comes from multiplying the step matrices back out.
pub fn euclid_reduce(p: impl Into<Integer>, q: impl Into<Integer>) -> Result<EuclidTrace> {
    let (p0, q0): (Integer, Integer) = (p.into(), q.into());
    if p0.is_zero() && q0.is_zero() {
        return domain("gcd(0, 0) has no trace");
    }
    // rows of the accumulated matrix: current = m · (p0, q0)
    let mut m = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    let mut cur = RatPair::raw(p0.clone(), q0.clone());
    let mut steps = Vec::new();
    while let Some(l) = branch(&cur) {
        cur = l.apply(&cur);
        let s = l.matrix();
        let row = |i: usize| -> [BigInt; 2] {
            [&m[0][0] * s[i][0] + &m[1][0] * s[i][1], &m[0][1] * s[i][0] + &m[1][1] * s[i][1]]
        };
        m = [row(0), row(1)];
        steps.push((l, cur.p.clone(), cur.q.clone()));
    }
    let row = if cur.p.is_zero() { 1 } else { 0 };
    let entry = if row == 0 { &cur.p } else { &cur.q };
    let sign = if entry.is_negative() { -BigInt::one() } else { BigInt::one() };
    let gcd = entry * &sign;
    let bezout = (&m[row][0] * &sign, &m[row][1] * &sign);
    Ok(EuclidTrace { start: (p0, q0), steps, gcd, bezout })
}

/// The comparison algorithm on p > q ≥ 0; halts at q = 0 or p = q.
pub fn romik_euclid(p: impl Into<Integer>, q: impl Into<Integer>) -> Result<Vec<(Integer, Integer)>> {
    let (mut p, mut q): (Integer, Integer) = (p.into(), q.into());
    if q.is_negative() || p <= q {
        return domain(format!("need p > q ≥ 0, got ({p}, {q})"));
    }
    let mut trace = vec![(p.clone(), q.clone())];
    while !q.is_zero() && p != q {
        let r: Integer = &p - &q * 2;
        (p, q) = if r > q {
            (r, q)
        } else if r.is_positive() {
            (q, r)
        } else {
            let s: Integer = &q * 2 - &p;
            (q, s)
        };
        trace.push((p.clone(), q.clone()));
    }
    Ok(trace)
}

/// Step of the Pythagorean triple system on a² = b² + c², a > 0. None at
/// the terminals (g,-g,0) and (g,0,±g).
pub fn triple_system_step(t: &[Integer; 3]) -> Result<Option<[Integer; 3]>> {
    let [a, b, c]: &[Integer; 3] = t;
    if !a.is_positive() || a * a != b * b + c * c {
        return domain(format!("({a}, {b}, {c}) is not a Pythagorean triple with a > 0"));
    }
    if b.is_zero() || (c.is_zero() && b.is_negative()) {
        return Ok(None);
    }
    Ok(Some(if b.is_positive() {
        [a.clone(), -b, c.clone()]
    } else if c.is_negative() {
        let (a2, b2, c2): (Integer, Integer, Integer) = (a * 2, b * 2, c * 2);
        [a * 3 + &b2 + &c2, -&a2 - b - &c2, -&a2 - &b2 - c]
    } else {
        let (a2, b2, c2): (Integer, Integer, Integer) = (a * 2, b * 2, c * 2);
        [a * 3 + &b2 - &c2, -&a2 - b + &c2, &a2 + &b2 - c]
    }))
}

pub fn triple_system_run(t: [Integer; 3]) -> Result<Vec<[Integer; 3]>> {
    let mut out = vec![t];
    while let Some(next) = triple_system_step(out.last().expect("nonempty"))? {
        out.push(next);
    }
    Ok(out)
}

/// Step of the circle map on x² + y² = 1. None at (-1,0) and (0,±1).
pub fn pyth_circle_step(pt: &(BigRational, BigRational)) -> Result<Option<(BigRational, BigRational)>> {
    let (x, y) = pt;
    if x * x + y * y != BigRational::one() {
        return domain(format!("({x}, {y}) is off the unit circle"));
    }
    let one = BigRational::one();
    let two = &one + &one;
    let three = &two + &one;
    if x.is_zero() || (y.is_zero() && x.is_negative()) {
        return Ok(None);
    }
    Ok(Some(if x.is_positive() {
        (-x, y.clone())
    } else if y.is_negative() {
        let d = &three + x * &two + y * &two;
        ((-&two - x - y * &two) / &d, (-&two - x * &two - y) / &d)
    } else {
        let d = &three + x * &two - y * &two;
        ((-&two - x + y * &two) / &d, (&two + x * &two - y) / &d)
    }))
}

/// Coordinate change conjugating t to the circle map: s = 2x - 1 followed
/// by the rational parametrization ((1-s²)/(1+s²), 2s/(1+s²)). Sends
/// 0, 1, ∞ to (0,-1), (0,1), (-1,0).
pub fn circle_point(x: &RatPair) -> (BigRational, BigRational) {
    if x.q.is_zero() {
        return (-BigRational::one(), BigRational::zero());
    }
    let s = BigRational::new(&x.p * 2 - &x.q, x.q.clone());
    let one = BigRational::one();
    let n = &one + &s * &s;
    ((&one - &s * &s) / &n, (&s + &s) / &n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(int(p), int(q))
    }

    #[test]
    fn single_steps() {
        assert_eq!(t_real(&RatPair::new(-2, 1).unwrap()).unwrap(), (TripleLetter::A, RatPair::new(2, 1).unwrap()));
        assert_eq!(t_real(&RatPair::new(1, 3).unwrap()).unwrap(), (TripleLetter::B, RatPair::new(-1, 1).unwrap()));
        assert_eq!(t_real(&RatPair::new(355, 113).unwrap()).unwrap(), (TripleLetter::C, RatPair::new(-129, 113).unwrap()));
        for fixed in [(0, 1), (1, 1), (1, 0)] {
            assert!(t_real(&RatPair::new(fixed.0, fixed.1).unwrap()).is_err());
        }
        assert_eq!(t_real_f64(-2.0).unwrap(), (TripleLetter::A, 2.0));
    }

    #[test]
    fn convergent_triples_of_the_worked_example() {
        let x = RatPair::new(4189513796210592i64, 10_000_000_000_000_000i64).unwrap();
        let (word, _) = expand_rational(&x);
        assert_eq!(word_string(&word[..20]), "bacabcacbcacacababac");
        let triples = mediant_convergents(&word[..20], false).unwrap();
        assert_eq!(triples.len(), 21);
        assert_eq!(triples[1].to_string(), "(1/1, 1/2, 0/1)");
        assert_eq!(triples[2].to_string(), "(1/3, 1/2, 0/1)");
        assert_eq!(triples[20].to_string(), "(871/2079, 703/1678, 1574/3757)");
        assert!(triples.iter().all(ConvergentTriple::is_farey));
    }

    #[test]
    fn float_word_agrees_with_exact_prefix() {
        let w = expand_f64(0.4189513796210592, 20);
        assert_eq!(word_string(&w), "bacabcacbcacacababac");
    }

    #[test]
    fn negative_start() {
        let t = mediant_convergents(&[TripleLetter::A], true).unwrap();
        assert_eq!(t[1].to_string(), "(-1/1, -1/0, 0/1)");
        assert!(mediant_convergents(&[TripleLetter::A, TripleLetter::A], false).is_err());
    }

    #[test]
    fn gcd_trace_246_113() {
        let t = euclid_reduce(246, 113).unwrap();
        let expect = [
            (246, 113), (-20, 113), (20, 113), (20, -73), (-20, -73), (-20, 33), (20, 33), (20, 7),
            (-6, 7), (6, 7), (6, 5), (4, 5), (4, 3), (2, 3), (2, 1), (0, 1),
        ];
        let got: Vec<(Integer, Integer)> = t.pairs();
        let want: Vec<(Integer, Integer)> = expect.iter().map(|&(p, q)| (int(p), int(q))).collect();
        assert_eq!(got, want);
        assert_eq!(t.gcd, int(1));
        assert_eq!(&t.bezout.0 * 246 + &t.bezout.1 * 113, int(1));
    }

    #[test]
    fn gcd_small_cases() {
        let t = euclid_reduce(4, 2).unwrap();
        assert_eq!(t.gcd, int(2));
        let (p, q) = t.terminal();
        assert!(p.abs() == int(2) || q.abs() == int(2));
        let t = euclid_reduce(1, 0).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.gcd, int(1));
        assert!(euclid_reduce(0, 0).is_err());
    }

    #[test]
    fn romik_trace_246_113() {
        let t = romik_euclid(246, 113).unwrap();
        let expect = [(246, 113), (113, 20), (73, 20), (33, 20), (20, 7), (7, 6), (6, 5), (5, 4), (4, 3), (3, 2), (2, 1), (1, 0)];
        let want: Vec<(Integer, Integer)> = expect.iter().map(|&(p, q)| (int(p), int(q))).collect();
        assert_eq!(t, want);
        assert_eq!(romik_euclid(2, 1).unwrap().len(), 2);
        assert!(euclid_reduce(246, 113).unwrap().steps.len() > t.len() - 1);
        assert!(romik_euclid(1, 2).is_err());
    }

    #[test]
    fn parity_decides_the_terminal() {
        for p in -200i64..=200 {
            for q in -200i64..=200 {
                if p == 0 && q == 0 {
                    continue;
                }
                let t = euclid_reduce(p, q).unwrap();
                let g = num_integer::gcd(p, q);
                let (tp, tq) = t.terminal();
                let kind = match ((p / g).rem_euclid(2), (q / g).rem_euclid(2)) {
                    (0, _) => 0,
                    (_, 0) => 2,
                    _ => 1,
                };
                let got = if tp.is_zero() { 0 } else if tq.is_zero() { 2 } else { 1 };
                assert_eq!(kind, got, "({p}, {q})");
                assert_eq!(t.gcd, int(g));
                assert_eq!(&t.bezout.0 * p + &t.bezout.1 * q, int(g));
            }
        }
    }

    #[test]
    fn density_values_and_invariance() {
        assert_eq!(real_density(0.5), 4.0);
        assert_eq!(real_density(-1.0), 1.0);
        assert_eq!(real_density(2.0), 1.0);
        // each region has exactly two preimage branches, both isometric
        for &x in &[-3.7, -0.2, 0.13, 0.5, 0.91, 1.4, 6.0] {
            let pre: f64 = TripleLetter::ALL
                .iter()
                .filter_map(|&l| {
                    let y = l.apply_f64(x);
                    (branch_f64(y) == Some(l)).then(|| {
                        let d = match l {
                            TripleLetter::B => 1.0 / ((2.0 * y - 1.0) * (2.0 * y - 1.0)),
                            _ => 1.0,
                        };
                        real_density(y) / d
                    })
                })
                .sum();
            assert!((pre - real_density(x)).abs() < 1e-12 * real_density(x), "{x}");
        }
    }

    #[test]
    fn return_time_domain() {
        assert!(return_time(-1.0, 2.0).unwrap() > 0.0);
        assert!(return_time(0.5, 2.0).is_err());
        assert!(return_time(-1e-9, 1.0 + 1e-9).unwrap().is_finite());
    }

    #[test]
    fn return_time_integral_is_zeta_two() {
        let v = return_time_integral(1e-7).unwrap();
        assert!((v - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-4, "{v}");
    }

    #[test]
    fn triple_system_examples() {
        let run = triple_system_run([int(5), int(3), int(4)]).unwrap();
        assert_eq!(run.last().unwrap(), &[int(1), int(-1), int(0)]);
        assert_eq!(run[1], [int(5), int(-3), int(4)]);
        assert!(triple_system_step(&[int(5), int(3), int(3)]).is_err());
        let run = triple_system_run([int(15), int(9), int(-12)]).unwrap();
        let last = run.last().unwrap();
        assert_eq!(last[0], int(3));
    }

    #[test]
    fn circle_examples() {
        let p = (rat(3, 5), rat(4, 5));
        let q = pyth_circle_step(&p).unwrap().unwrap();
        assert_eq!(q, (rat(-3, 5), rat(4, 5)));
        let r = pyth_circle_step(&q).unwrap().unwrap();
        assert_eq!(r, (rat(1, 1), rat(0, 1)));
        let s = pyth_circle_step(&r).unwrap().unwrap();
        assert_eq!(s, (rat(-1, 1), rat(0, 1)));
        assert_eq!(pyth_circle_step(&s).unwrap(), None);
        assert!(pyth_circle_step(&(rat(1, 2), rat(1, 2))).is_err());
    }

    #[test]
    fn circle_map_is_conjugate_to_t() {
        let mut n = 0;
        for q in 1i64..=40 {
            for p in -60i64..=60 {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let x = RatPair::new(p, q).unwrap();
                let img = pyth_circle_step(&circle_point(&x)).unwrap();
                match t_real(&x) {
                    Ok((_, tx)) => assert_eq!(img, Some(circle_point(&tx)), "{x}"),
                    Err(_) => assert_eq!(img, None, "{x}"),
                }
                n += 1;
            }
        }
        assert!(n >= 1000);
    }

    proptest! {
        #[test]
        fn words_alternate_and_rebuild(p in -100_000i64..100_000, q in 1i64..100_000) {
            let x = RatPair::new(p, q).unwrap();
            let (word, end) = expand_rational(&x);
            prop_assert!(word.windows(2).all(|w| w[0] != w[1]));
            let mut back = end.clone();
            for l in word.iter().rev() {
                back = l.apply(&back).canonical();
            }
            prop_assert_eq!(back, x);
        }

        #[test]
        fn triples_stay_farey(p in -100_000i64..100_000, q in 1i64..100_000) {
            let x = RatPair::new(p, q).unwrap();
            let (word, _) = expand_rational(&x);
            let t = mediant_convergents(&word, p < 0).unwrap();
            prop_assert!(t.iter().all(ConvergentTriple::is_farey));
            // the last triple contains x itself
            prop_assert!(t.last().unwrap().0.iter().any(|e| e.canonical() == x));
        }

        #[test]
        fn bezout_holds(p in -1_000_000i64..1_000_000, q in -1_000_000i64..1_000_000) {
            prop_assume!(p != 0 || q != 0);
            let t = euclid_reduce(p, q).unwrap();
            prop_assert_eq!(&t.bezout.0 * p + &t.bezout.1 * q, t.gcd.clone());
            prop_assert_eq!(t.gcd, int(num_integer::gcd(p, q)));
        }

        #[test]
        fn triple_run_ends_at_gcd(m in 1i64..60, n in 1i64..60, k in 1i64..5, sb in any::<bool>(), sc in any::<bool>(), swap in any::<bool>()) {
            prop_assume!(m != n);
            let (m, n) = (m.max(n), m.min(n));
            let (mut b, mut c) = (k * (m * m - n * n), k * 2 * m * n);
            if swap { std::mem::swap(&mut b, &mut c); }
            if sb { b = -b; }
            if sc { c = -c; }
            let a = k * (m * m + n * n);
            let run = triple_system_run([int(a), int(b), int(c)]).unwrap();
            prop_assert!(run.windows(2).all(|w| w[1][0] <= w[0][0]));
            let last = run.last().unwrap();
            let g = num_integer::gcd(a, num_integer::gcd(b, c));
            prop_assert_eq!(&last[0], &int(g));
        }
    }
}
