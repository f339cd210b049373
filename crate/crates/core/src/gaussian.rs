//! Gaussian integers, points of the projective line over Q(i), and extended
//! Möbius maps z ↦ (a·σz + b)/(c·σz + d) with σ optional conjugation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// Arbitrary precision integer used throughout the crate.
pub type Integer = BigInt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GaussianInt {
    pub re: Integer,
    pub im: Integer,
}

impl GaussianInt {
    pub fn new(re: impl Into<Integer>, im: impl Into<Integer>) -> Self {
        GaussianInt { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        GaussianInt::new(0, 0)
    }

    pub fn one() -> Self {
        GaussianInt::new(1, 0)
    }

    pub fn i() -> Self {
        GaussianInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianInt { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> Integer {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// The four units 1, i, -1, -i.
    pub fn units() -> [GaussianInt; 4] {
        [
            GaussianInt::new(1, 0),
            GaussianInt::new(0, 1),
            GaussianInt::new(-1, 0),
            GaussianInt::new(0, -1),
        ]
    }

    /// Both coordinates even, i.e. divisible by 2 in Z[i].
    pub fn is_zero_mod2(&self) -> bool {
        self.re.is_even() && self.im.is_even()
    }

    /// True when re > 0 and im >= 0: the normalized associate class.
    fn in_first_quadrant(&self) -> bool {
        self.re.is_positive() && !self.im.is_negative()
    }

    /// The unit u with u·self in the first quadrant (re > 0, im ≥ 0).
    /// Returns 1 for zero.
    pub fn normalizing_unit(&self) -> GaussianInt {
        if self.is_zero() {
            return GaussianInt::one();
        }
        for u in GaussianInt::units() {
            if (&u * self).in_first_quadrant() {
                return u;
            }
        }
        unreachable!("every nonzero Gaussian integer has an associate in the first quadrant")
    }

    pub fn unit_normalized(&self) -> GaussianInt {
        &self.normalizing_unit() * self
    }

    /// Nearest-integer quotient: round(self / other) componentwise.
    pub fn div_round(&self, other: &GaussianInt) -> GaussianInt {
        let n = other.norm();
        assert!(!n.is_zero(), "division by zero Gaussian integer");
        let num = self * &other.conj();
        GaussianInt { re: round_div(&num.re, &n), im: round_div(&num.im, &n) }
    }

    /// Remainder of nearest-integer division; norm(r) <= norm(other)/2.
    pub fn rem_round(&self, other: &GaussianInt) -> GaussianInt {
        let q = self.div_round(other);
        self - &(&q * other)
    }

    /// Exact division, or `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &GaussianInt) -> Option<GaussianInt> {
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &other.conj();
        if (&num.re % &n).is_zero() && (&num.im % &n).is_zero() {
            Some(GaussianInt { re: &num.re / &n, im: &num.im / &n })
        } else {
            None
        }
    }

    pub fn divides(&self, other: &GaussianInt) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }
}

fn to_f64(x: &Integer) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// round(x / n) for n > 0, halves rounded up.
fn round_div(x: &Integer, n: &Integer) -> Integer {
    let two = Integer::from(2);
    (&two * x + n).div_floor(&(&two * n))
}

/// Greatest common divisor by nearest-integer Euclidean division,
/// normalized into the first quadrant.
pub fn gcd(a: &GaussianInt, b: &GaussianInt) -> Result<GaussianInt> {
    if a.is_zero() && b.is_zero() {
        return domain("gcd(0, 0) is undefined");
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem_round(&y);
        x = y;
        y = r;
    }
    Ok(x.unit_normalized())
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a GaussianInt> for &'a GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: &'a GaussianInt) -> GaussianInt {
                let f: fn(&GaussianInt, &GaussianInt) -> GaussianInt = $body;
                f(self, rhs)
            }
        }
        impl $trait<GaussianInt> for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: GaussianInt) -> GaussianInt {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a GaussianInt> for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: &'a GaussianInt) -> GaussianInt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianInt { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(Sub, sub, |a, b| GaussianInt { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(Mul, mul, |a, b| GaussianInt {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt { re: -&self.re, im: -&self.im }
    }
}

impl From<i64> for GaussianInt {
    fn from(x: i64) -> Self {
        GaussianInt::new(x, 0)
    }
}

impl From<Integer> for GaussianInt {
    fn from(x: Integer) -> Self {
        GaussianInt { re: x, im: Integer::zero() }
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &Integer| -> String {
            if im.is_one() {
                "i".to_string()
            } else if *im == Integer::from(-1) {
                "-i".to_string()
            } else {
                format!("{im}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                let mag = self.im.abs();
                let mag = if mag.is_one() { "i".to_string() } else { format!("{mag}i") };
                write!(f, "{}{}{}", self.re, sign, mag)
            }
        }
    }
}

impl FromStr for GaussianInt {
    type Err = Error;

    /// Accepts forms like `3`, `-2`, `i`, `-4i`, `3+2i`, `1-i`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Domain(format!("cannot parse Gaussian integer from {s:?}"));
        if t.is_empty() {
            return Err(bad());
        }
        let parse_int = |x: &str| Integer::from_str(x).map_err(|_| bad());
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussianInt::from(parse_int(&t)?));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re_str, im_str) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_str {
            "" | "+" => Integer::one(),
            "-" => -Integer::one(),
            x => parse_int(x.strip_prefix('+').unwrap_or(x))?,
        };
        Ok(GaussianInt { re: parse_int(re_str)?, im })
    }
}

impl Serialize for GaussianInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A point p/q of P¹(Q(i)), kept in canonical form: gcd(p, q) = 1 and the
/// denominator (the numerator when q = 0) lies in the first quadrant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjectivePoint {
    p: GaussianInt,
    q: GaussianInt,
}

impl ProjectivePoint {
    pub fn new(p: GaussianInt, q: GaussianInt) -> Result<Self> {
        let g = gcd(&p, &q)?;
        let p = p.div_exact(&g).expect("gcd divides p");
        let q = q.div_exact(&g).expect("gcd divides q");
        Ok(Self::unit_normalize(p, q))
    }

    /// Skip the gcd when the caller knows p and q are coprime.
    pub(crate) fn from_coprime(p: GaussianInt, q: GaussianInt) -> Self {
        debug_assert!(gcd(&p, &q).map(|g| g.is_unit()).unwrap_or(false));
        Self::unit_normalize(p, q)
    }

    fn unit_normalize(p: GaussianInt, q: GaussianInt) -> Self {
        let u = if q.is_zero() { p.normalizing_unit() } else { q.normalizing_unit() };
        ProjectivePoint { p: &u * &p, q: &u * &q }
    }

    pub fn from_ints(p: i64, q: i64) -> Result<Self> {
        Self::new(GaussianInt::from(p), GaussianInt::from(q))
    }

    pub fn from_gaussian(z: GaussianInt) -> Self {
        Self::from_coprime(z, GaussianInt::one())
    }

    pub fn infinity() -> Self {
        ProjectivePoint { p: GaussianInt::one(), q: GaussianInt::zero() }
    }

    pub fn p(&self) -> &GaussianInt {
        &self.p
    }

    pub fn q(&self) -> &GaussianInt {
        &self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    /// Floating value; infinity maps to a non-finite complex number.
    pub fn to_complex(&self) -> Complex64 {
        if self.q.is_zero() {
            return Complex64::new(f64::INFINITY, f64::INFINITY);
        }
        // divide in exact arithmetic first to avoid overflow of huge parts
        let n = self.q.norm();
        let num = &self.p * &self.q.conj();
        Complex64::new(ratio_to_f64(&num.re, &n), ratio_to_f64(&num.im, &n))
    }

    /// Same point up to a nonzero scalar (canonical forms make this equality).
    pub fn cross_eq(&self, other: &ProjectivePoint) -> bool {
        &self.p * &other.q == &self.q * &other.p
    }
}

pub(crate) fn ratio_to_f64(num: &Integer, den: &Integer) -> f64 {
    let (a, b) = (to_f64(num), to_f64(den));
    if a.is_finite() && b.is_finite() {
        return a / b;
    }
    // scale both down until they fit
    let shift = num.bits().max(den.bits()).saturating_sub(1000);
    to_f64(&(num >> shift)) / to_f64(&(den >> shift))
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "inf")
        } else if self.q == GaussianInt::one() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "({})/({})", self.p, self.q)
        }
    }
}

/// The six points fixed by the planar maps; each rational point reaches
/// the one sharing its parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParityClass {
    Zero,
    One,
    Infinity,
    I,
    OnePlusI,
    /// 1/(1-i) = (1+i)/2
    HalfOnePlusI,
}

impl ParityClass {
    pub const ALL: [ParityClass; 6] = [
        ParityClass::Zero,
        ParityClass::One,
        ParityClass::Infinity,
        ParityClass::I,
        ParityClass::OnePlusI,
        ParityClass::HalfOnePlusI,
    ];

    pub fn point(self) -> ProjectivePoint {
        let g = GaussianInt::new;
        match self {
            ParityClass::Zero => ProjectivePoint::from_coprime(g(0, 0), g(1, 0)),
            ParityClass::One => ProjectivePoint::from_coprime(g(1, 0), g(1, 0)),
            ParityClass::Infinity => ProjectivePoint::infinity(),
            ParityClass::I => ProjectivePoint::from_coprime(g(0, 1), g(1, 0)),
            ParityClass::OnePlusI => ProjectivePoint::from_coprime(g(1, 1), g(1, 0)),
            ParityClass::HalfOnePlusI => ProjectivePoint::from_coprime(g(1, 0), g(1, -1)),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ParityClass::Zero => "0",
            ParityClass::One => "1",
            ParityClass::Infinity => "inf",
            ParityClass::I => "i",
            ParityClass::OnePlusI => "1+i",
            ParityClass::HalfOnePlusI => "1/(1-i)",
        }
    }

    /// The class whose point is exactly `z`, if any.
    pub fn of_fixed_point(z: &ProjectivePoint) -> Option<ParityClass> {
        ParityClass::ALL.into_iter().find(|c| c.point() == *z)
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ParityClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ParityClass::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::Domain(format!("unknown parity class {s:?}")))
    }
}

impl Serialize for ParityClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for ParityClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The fixed point r/s with p·s ≡ q·r (mod 2).
pub fn parity_class(z: &ProjectivePoint) -> ParityClass {
    let matches: Vec<ParityClass> = ParityClass::ALL
        .into_iter()
        .filter(|c| {
            let w = c.point();
            (&(z.p() * w.q()) - &(z.q() * w.p())).is_zero_mod2()
        })
        .collect();
    assert_eq!(matches.len(), 1, "coprime pairs fall in exactly one parity class");
    matches[0]
}

/// z ↦ (a·σz + b)/(c·σz + d), σ = complex conjugation when `conj` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedMobius {
    pub a: GaussianInt,
    pub b: GaussianInt,
    pub c: GaussianInt,
    pub d: GaussianInt,
    pub conj: bool,
}

impl ExtendedMobius {
    pub fn new(a: GaussianInt, b: GaussianInt, c: GaussianInt, d: GaussianInt, conj: bool) -> Result<Self> {
        let m = ExtendedMobius { a, b, c, d, conj };
        if m.det().is_zero() {
            return domain("singular Möbius matrix");
        }
        Ok(m)
    }

    /// Build from small integer pairs (re, im); panics on a singular matrix.
    pub fn from_parts(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64), conj: bool) -> Self {
        let g = |(x, y): (i64, i64)| GaussianInt::new(x, y);
        Self::new(g(a), g(b), g(c), g(d), conj).expect("nonsingular constant")
    }

    pub fn identity() -> Self {
        Self::from_parts((1, 0), (0, 0), (0, 0), (1, 0), false)
    }

    pub fn det(&self) -> GaussianInt {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    fn conj_entries(&self) -> Self {
        ExtendedMobius {
            a: self.a.conj(),
            b: self.b.conj(),
            c: self.c.conj(),
            d: self.d.conj(),
            conj: self.conj,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ExtendedMobius) -> ExtendedMobius {
        let o = if self.conj { other.conj_entries() } else { other.clone() };
        ExtendedMobius {
            a: &(&self.a * &o.a) + &(&self.b * &o.c),
            b: &(&self.a * &o.b) + &(&self.b * &o.d),
            c: &(&self.c * &o.a) + &(&self.d * &o.c),
            d: &(&self.c * &o.b) + &(&self.d * &o.d),
            conj: self.conj ^ other.conj,
        }
    }

    /// Inverse map, using the adjugate (exact up to the scalar det).
    pub fn inverse(&self) -> ExtendedMobius {
        let adj = ExtendedMobius {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
            conj: false,
        };
        // t(z) = M σz, so t⁻¹(w) = σ(adj M · w) = σ(adj M) · σw
        if self.conj {
            let mut inv = adj.conj_entries();
            inv.conj = true;
            inv
        } else {
            adj
        }
    }

    /// Homogeneous action on a pair, without canonicalization.
    pub fn apply_pair(&self, p: &GaussianInt, q: &GaussianInt) -> (GaussianInt, GaussianInt) {
        let (p, q) = if self.conj { (p.conj(), q.conj()) } else { (p.clone(), q.clone()) };
        (&(&self.a * &p) + &(&self.b * &q), &(&self.c * &p) + &(&self.d * &q))
    }

    pub fn apply(&self, z: &ProjectivePoint) -> ProjectivePoint {
        let (p, q) = self.apply_pair(z.p(), z.q());
        if self.det().is_unit() {
            ProjectivePoint::from_coprime(p, q)
        } else {
            ProjectivePoint::new(p, q).expect("nonsingular map keeps the pair nonzero")
        }
    }

    /// Floating evaluation; `None` at the pole.
    pub fn apply_complex(&self, z: Complex64) -> Option<Complex64> {
        let z = if self.conj { z.conj() } else { z };
        let num = self.a.to_complex() * z + self.b.to_complex();
        let den = self.c.to_complex() * z + self.d.to_complex();
        if den.norm_sqr() == 0.0 {
            None
        } else {
            Some(num / den)
        }
    }

    /// Equal as maps: same conjugation flag and proportional matrices.
    pub fn projectively_eq(&self, other: &ExtendedMobius) -> bool {
        if self.conj != other.conj {
            return false;
        }
        let s = [&self.a, &self.b, &self.c, &self.d];
        let o = [&other.a, &other.b, &other.c, &other.d];
        (0..4).all(|i| (0..4).all(|j| s[i] * o[j] == s[j] * o[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn ring_basics() {
        assert_eq!(&g(1, 1) * &g(1, -1), g(2, 0));
        assert_eq!(g(3, -2).conj(), g(3, 2));
        assert_eq!(g(2, 1).norm(), Integer::from(5));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&g(3, 1), &g(1, 1)).unwrap(), g(1, 1));
        assert_eq!(&g(1, 1) * &g(2, -1), g(3, 1));
        assert_eq!(gcd(&g(2, 0), &g(1, 1)).unwrap(), g(1, 1));
        assert_eq!(&g(0, -1) * &(&g(1, 1) * &g(1, 1)), g(2, 0));
        assert_eq!(gcd(&g(0, -5), &g(0, 0)).unwrap(), g(5, 0));
        assert!(gcd(&g(0, 0), &g(0, 0)).is_err());
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "3", "-2", "i", "-i", "4i", "-4i", "3+2i", "1-i", "-7+i"] {
            let z: GaussianInt = s.parse().unwrap();
            assert_eq!(z.to_string(), s);
        }
        assert!("x".parse::<GaussianInt>().is_err());
    }

    #[test]
    fn canonical_points() {
        let z = ProjectivePoint::new(g(2, 0), g(6, 0)).unwrap();
        assert_eq!((z.p(), z.q()), (&g(1, 0), &g(3, 0)));
        let w = ProjectivePoint::new(g(0, 2), g(0, 6)).unwrap();
        assert_eq!(z, w);
        let inf = ProjectivePoint::new(g(0, -3), g(0, 0)).unwrap();
        assert_eq!(inf, ProjectivePoint::infinity());
        assert!(ProjectivePoint::new(g(0, 0), g(0, 0)).is_err());
    }

    #[test]
    fn mobius_examples() {
        let id = ExtendedMobius::identity();
        let z = ProjectivePoint::from_ints(1, 3).unwrap();
        assert_eq!(id.apply(&z), z);
        let s4 = ExtendedMobius::from_parts((-1, 0), (0, 0), (0, 0), (1, 0), true);
        assert_eq!(s4.apply(&z), ProjectivePoint::from_ints(-1, 3).unwrap());
        // z̄/(2z̄ - 1) on a pair gives (p̄, 2p̄ - q̄)
        let s2 = ExtendedMobius::from_parts((1, 0), (0, 0), (2, 0), (-1, 0), true);
        let (p, q) = (g(2, 3), g(-1, 5));
        let (p2, q2) = s2.apply_pair(&p, &q);
        assert_eq!(p2, p.conj());
        assert_eq!(q2, &(&g(2, 0) * &p.conj()) - &q.conj());
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_class(&ProjectivePoint::from_ints(0, 1).unwrap()), ParityClass::Zero);
        assert_eq!(parity_class(&ProjectivePoint::from_ints(1, 3).unwrap()), ParityClass::One);
        let z = ProjectivePoint::new(g(1, 1), g(2, 0)).unwrap();
        assert_eq!(parity_class(&z), ParityClass::HalfOnePlusI);
        for c in ParityClass::ALL {
            assert_eq!(parity_class(&c.point()), c);
            assert_eq!(c.label().parse::<ParityClass>().unwrap(), c);
        }
    }

    fn arb_gauss(r: i64) -> impl Strategy<Value = GaussianInt> {
        (-r..=r, -r..=r).prop_map(|(a, b)| g(a, b))
    }

    fn arb_mobius() -> impl Strategy<Value = ExtendedMobius> {
        (arb_gauss(5), arb_gauss(5), arb_gauss(5), arb_gauss(5), any::<bool>())
            .prop_filter_map("singular", |(a, b, c, d, f)| ExtendedMobius::new(a, b, c, d, f).ok())
    }

    fn arb_point() -> impl Strategy<Value = ProjectivePoint> {
        (arb_gauss(50), arb_gauss(50)).prop_filter_map("zero", |(p, q)| ProjectivePoint::new(p, q).ok())
    }

    proptest! {
        #[test]
        fn gcd_divides_and_is_greatest(a in arb_gauss(10_000), b in arb_gauss(10_000), k in arb_gauss(30)) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let d = gcd(&a, &b).unwrap();
            prop_assert!(d.divides(&a) && d.divides(&b));
            prop_assert!(d.in_first_quadrant());
            // a common multiple structure: gcd(ka, kb) = k·gcd(a, b) up to units
            prop_assume!(!k.is_zero());
            let dk = gcd(&(&k * &a), &(&k * &b)).unwrap();
            prop_assert_eq!(dk, (&k * &d).unit_normalized());
        }

        #[test]
        fn remainder_is_small(a in arb_gauss(1_000_000), b in arb_gauss(1_000)) {
            prop_assume!(!b.is_zero());
            let r = a.rem_round(&b);
            prop_assert!(Integer::from(2) * r.norm() <= b.norm());
        }

        #[test]
        fn composition_respects_action(t1 in arb_mobius(), t2 in arb_mobius(), z in arb_point()) {
            let lhs = t1.compose(&t2).apply(&z);
            let rhs = t1.apply(&t2.apply(&z));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_undoes(t in arb_mobius(), z in arb_point()) {
            prop_assert_eq!(t.inverse().apply(&t.apply(&z)), z.clone());
            prop_assert!(t.inverse().compose(&t).projectively_eq(&ExtendedMobius::identity()));
        }

        #[test]
        fn canonical_form_is_unique(p in arb_gauss(40), q in arb_gauss(40), u in 0usize..4, k in arb_gauss(6)) {
            prop_assume!(!(p.is_zero() && q.is_zero()) && !k.is_zero());
            let unit = &GaussianInt::units()[u];
            let scaled = ProjectivePoint::new(&(unit * &k) * &p, &(unit * &k) * &q).unwrap();
            prop_assert_eq!(scaled, ProjectivePoint::new(p, q).unwrap());
        }
    }
}
