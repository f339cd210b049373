//! The eight generators in their Lorentz, Descartes and Möbius realizations,
//! words over them, and the swap/invert normal forms.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{internal, Error, Result};
use crate::gaussian::{ExtendedMobius, Integer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Swap,
    Inversion,
}

/// One of S1..S4 (swaps) or S1P..S4P (inversions).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    kind: Kind,
    index: u8,
}

impl Letter {
    pub const ALL: [Letter; 8] = [
        Letter::swap(1),
        Letter::swap(2),
        Letter::swap(3),
        Letter::swap(4),
        Letter::inversion(1),
        Letter::inversion(2),
        Letter::inversion(3),
        Letter::inversion(4),
    ];

    pub const fn swap(index: u8) -> Letter {
        assert!(index >= 1 && index <= 4);
        Letter { kind: Kind::Swap, index }
    }

    pub const fn inversion(index: u8) -> Letter {
        assert!(index >= 1 && index <= 4);
        Letter { kind: Kind::Inversion, index }
    }

    pub fn kind(self) -> Kind {
        self.kind
    }

    /// 1..=4
    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn is_swap(self) -> bool {
        self.kind == Kind::Swap
    }

    pub fn perp(self) -> Letter {
        match self.kind {
            Kind::Swap => Letter::inversion(self.index),
            Kind::Inversion => Letter::swap(self.index),
        }
    }

    pub fn token(self) -> &'static str {
        const TOKENS: [&str; 8] = ["S1", "S2", "S3", "S4", "S1P", "S2P", "S3P", "S4P"];
        TOKENS[self.slot()]
    }

    /// Token naming the Lorentz matrix of this letter, e.g. `L3P`.
    pub fn lorentz_token(self) -> &'static str {
        const TOKENS: [&str; 8] = ["L1", "L2", "L3", "L4", "L1P", "L2P", "L3P", "L4P"];
        TOKENS[self.slot()]
    }

    /// Position in `Letter::ALL`.
    pub fn slot(self) -> usize {
        let base = if self.is_swap() { 0 } else { 4 };
        base + self.index() - 1
    }

    pub fn lorentz(self) -> IntMatrix4 {
        IntMatrix4::from_small(&LORENTZ[self.slot()])
    }

    pub fn descartes(self) -> IntMatrix4 {
        IntMatrix4::from_small(&descartes_small(self))
    }

    pub(crate) fn lorentz_small(self) -> &'static [[i64; 4]; 4] {
        &LORENTZ[self.slot()]
    }

    pub fn mobius(self) -> ExtendedMobius {
        let f = ExtendedMobius::from_parts;
        match (self.kind, self.index) {
            (Kind::Swap, 1) => f((1, 2), (-2, 0), (2, 0), (-1, 2), true),
            (Kind::Swap, 2) => f((1, 0), (0, 0), (2, 0), (-1, 0), true),
            (Kind::Swap, 3) => f((-1, 0), (2, 0), (0, 0), (1, 0), true),
            (Kind::Swap, 4) => f((-1, 0), (0, 0), (0, 0), (1, 0), true),
            (Kind::Inversion, 1) => f((1, 0), (0, 0), (0, 0), (1, 0), true),
            (Kind::Inversion, 2) => f((1, 0), (0, 2), (0, 0), (1, 0), true),
            (Kind::Inversion, 3) => f((1, 0), (0, 0), (0, -2), (1, 0), true),
            (Kind::Inversion, 4) => f((1, -2), (0, 2), (0, -2), (1, 2), true),
            _ => unreachable!(),
        }
    }
}

/// Lorentz generators in `Letter::ALL` order (L1..L4, L1P..L4P).
const LORENTZ: [[[i64; 4]; 4]; 8] = [
    [[2, -1, -1, -1], [1, 0, -1, -1], [1, -1, 0, -1], [1, -1, -1, 0]],
    [[2, -1, 1, 1], [1, 0, 1, 1], [-1, 1, 0, -1], [-1, 1, -1, 0]],
    [[2, 1, -1, 1], [-1, 0, 1, -1], [1, 1, 0, 1], [-1, -1, 1, 0]],
    [[2, 1, 1, -1], [-1, 0, -1, 1], [-1, -1, 0, 1], [1, 1, 1, 0]],
    [[2, 1, 1, 1], [-1, 0, -1, -1], [-1, -1, 0, -1], [-1, -1, -1, 0]],
    [[2, 1, -1, -1], [-1, 0, 1, 1], [1, 1, 0, -1], [1, 1, -1, 0]],
    [[2, -1, 1, -1], [1, 0, 1, -1], [-1, 1, 0, 1], [1, -1, 1, 0]],
    [[2, -1, -1, 1], [1, 0, -1, 1], [1, -1, 0, 1], [-1, 1, 1, 0]],
];

/// S_i: row i becomes (2,2,2,2) with -1 on the diagonal.
/// S_i⊥: column i becomes 2 with -1 on the diagonal.
pub(crate) fn descartes_small(l: Letter) -> [[i64; 4]; 4] {
    let k = l.index() - 1;
    let mut m = [[0i64; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for j in 0..4 {
        match l.kind() {
            Kind::Swap => m[k][j] = if j == k { -1 } else { 2 },
            Kind::Inversion => m[j][k] = if j == k { -1 } else { 2 },
        }
    }
    m
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Letter {
    type Err = Error;

    /// Accepts `S1`..`S4P` and the Lorentz names `L1`..`L4P`.
    fn from_str(s: &str) -> Result<Self> {
        Letter::ALL
            .into_iter()
            .find(|l| l.token() == s || l.lorentz_token() == s)
            .ok_or_else(|| Error::Domain(format!("unknown letter {s:?}")))
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalForm {
    Swap,
    Invert,
}

/// A word in Möbius order: the first letter is applied to the point first
/// in the sense m₁(m₂(…mₙ(z))), i.e. it is the outermost map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    pub fn is_swap_normal(&self) -> bool {
        self.0.windows(2).all(|w| {
            let (x, y) = (w[0], w[1]);
            x != y && !(x.is_swap() && !y.is_swap() && x.index() != y.index())
        })
    }

    pub fn is_invert_normal(&self) -> bool {
        self.0.windows(2).all(|w| {
            let (x, y) = (w[0], w[1]);
            x != y && !(!x.is_swap() && y.is_swap() && x.index() != y.index())
        })
    }

    pub fn is_normal(&self, form: NormalForm) -> bool {
        match form {
            NormalForm::Swap => self.is_swap_normal(),
            NormalForm::Invert => self.is_invert_normal(),
        }
    }

    /// Rewrite into the requested normal form using only the relations
    /// x² = 1 and S_j S_k⊥ = S_k⊥ S_j (j ≠ k).
    pub fn normalize(&self, form: NormalForm) -> Word {
        // Letters of the "mobile" kind travel left past commuting letters of
        // the other kind: inversions for swap normal form, swaps for invert.
        let mobile = |l: Letter| match form {
            NormalForm::Swap => !l.is_swap(),
            NormalForm::Invert => l.is_swap(),
        };
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &x in &self.0 {
            if mobile(x) {
                let mut pos = out.len();
                while pos > 0 && !mobile(out[pos - 1]) && out[pos - 1].index() != x.index() {
                    pos -= 1;
                }
                if pos > 0 && out[pos - 1] == x {
                    out.remove(pos - 1);
                } else {
                    out.insert(pos, x);
                }
            } else if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Word(out)
    }

    /// Reverse and perp each letter: 𝔪⊥ = 𝔡 𝔪⁻¹ 𝔡.
    pub fn perp(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.perp()).collect())
    }

    /// Reverse (every letter is an involution).
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// The map m₁ ∘ m₂ ∘ … ∘ mₙ.
    pub fn mobius(&self) -> ExtendedMobius {
        self.0.iter().fold(ExtendedMobius::identity(), |acc, l| acc.compose(&l.mobius()))
    }

    /// M₁M₂⋯Mₙ in the Descartes realization (the action on column vectors
    /// matching the order of the Möbius action on points).
    pub fn descartes_product(&self) -> IntMatrix4 {
        self.0.iter().fold(IntMatrix4::identity(), |acc, l| acc.mul(&l.descartes()))
    }

    pub fn lorentz_product(&self) -> IntMatrix4 {
        self.0.iter().fold(IntMatrix4::identity(), |acc, l| acc.mul(&l.lorentz()))
    }

    /// Tokens joined with spaces; `lorentz` selects L-names.
    pub fn to_tokens(&self, lorentz: bool) -> String {
        self.0
            .iter()
            .map(|l| if lorentz { l.lorentz_token() } else { l.token() })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Matrix-order listing Mₙ ⋯ M₁ (the letters reversed).
    pub fn to_matrix_order_tokens(&self) -> String {
        self.inverse().to_tokens(false)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tokens(false))
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>().map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<Letter>::deserialize(d).map(Word)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// All words of length `n` in the given normal form, lexicographic in
/// `Letter::ALL` order.
pub fn normal_words(n: usize, form: NormalForm) -> Vec<Word> {
    let mut words = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(words.len() * 5);
        for w in &words {
            for l in Letter::ALL {
                let mut v = w.0.clone();
                v.push(l);
                let cand = Word(v);
                let tail_ok = cand.len() < 2 || Word(cand.0[cand.len() - 2..].to_vec()).is_normal(form);
                if tail_ok {
                    next.push(cand);
                }
            }
        }
        words = next;
    }
    words
}

/// A 4×4 integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix4(pub [[Integer; 4]; 4]);

impl IntMatrix4 {
    pub fn from_small(m: &[[i64; 4]; 4]) -> Self {
        IntMatrix4(m.map(|row| row.map(Integer::from)))
    }

    pub fn identity() -> Self {
        let mut m = [[0i64; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        Self::from_small(&m)
    }

    pub fn mul(&self, other: &IntMatrix4) -> IntMatrix4 {
        let mut out: [[Integer; 4]; 4] = Default::default();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut s = Integer::zero();
                for k in 0..4 {
                    s += &self.0[i][k] * &other.0[k][j];
                }
                *cell = s;
            }
        }
        IntMatrix4(out)
    }

    pub fn transpose(&self) -> IntMatrix4 {
        let mut out = self.clone();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = self.0[j][i].clone();
            }
        }
        out
    }

    pub fn apply(&self, v: &[Integer; 4]) -> [Integer; 4] {
        std::array::from_fn(|i| {
            let mut s = Integer::zero();
            for (k, x) in v.iter().enumerate() {
                s += &self.0[i][k] * x;
            }
            s
        })
    }

    pub fn scale_div(&self, k: i64) -> Option<IntMatrix4> {
        let k = Integer::from(k);
        let mut out = self.clone();
        for row in out.0.iter_mut() {
            for x in row.iter_mut() {
                let (q, r) = x.div_rem(&k);
                if !r.is_zero() {
                    return None;
                }
                *x = q;
            }
        }
        Some(out)
    }
}

/// Apply a small constant matrix to a big-integer vector.
pub(crate) fn apply_small(m: &[[i64; 4]; 4], v: &[Integer; 4]) -> [Integer; 4] {
    std::array::from_fn(|i| {
        let mut s = Integer::zero();
        for (k, x) in v.iter().enumerate() {
            match m[i][k] {
                0 => {}
                1 => s += x,
                -1 => s -= x,
                c => s += x * c,
            }
        }
        s
    })
}

/// Gram matrix of Q_L = x₀² − x₁² − x₂² − x₃².
pub fn gram_lorentz() -> IntMatrix4 {
    IntMatrix4::from_small(&[[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
}

/// Gram matrix of Q_D(y) = (Σy)² − 2Σy².
pub fn gram_descartes() -> IntMatrix4 {
    IntMatrix4::from_small(&[[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]])
}

/// 2J, where J is the involutive change of variables with 2·Q_D(Jx) = Q_L(x).
pub const TWO_J: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];

/// 2D, where D is the duality operator exchanging swaps and inversions.
pub const TWO_D: [[i64; 4]; 4] = [[-1, 1, 1, 1], [1, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]];

/// J·m·J, required to be integral.
pub fn j_conjugate(m: &IntMatrix4) -> Result<IntMatrix4> {
    let k = IntMatrix4::from_small(&TWO_J);
    match k.mul(m).mul(&k).scale_div(4) {
        Some(r) => Ok(r),
        None => internal("J-conjugate is not integral"),
    }
}

/// D·m·D, required to be integral.
pub fn d_conjugate(m: &IntMatrix4) -> Result<IntMatrix4> {
    let k = IntMatrix4::from_small(&TWO_D);
    match k.mul(m).mul(&k).scale_div(4) {
        Some(r) => Ok(r),
        None => internal("D-conjugate is not integral"),
    }
}

/// The Möbius duality 𝔡(z) = (z̄ − 1 + i)/((1 − i)z̄ + i).
pub fn duality_mobius() -> ExtendedMobius {
    ExtendedMobius::from_parts((1, 0), (-1, 1), (1, -1), (0, 1), true)
}
