//! The affine model of the four-letter group: `A = Z₂²` with track 1 as the
//! first coordinate, configurations as pairs of Laurent series, and every
//! generated automaton as `y ↦ M·y + c^Z` with `M ∈ GL(2, F₂[x, x⁻¹])`.
//!
//! Cell `i` carries the coefficient of `x^i`, so the shift `σ(y)_i = y_{i+1}`
//! is multiplication by `x⁻¹`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::alphabet::{Alphabet, Symbol};
use crate::ca::Ca;
use crate::error::{Error, Result};
use crate::paut::{GroupWord, Registry, Token};
use crate::perm::Permutation;

/// A Laurent polynomial over `F₂`, stored as its set of exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeSet<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: i64) -> Self {
        LaurentPoly { terms: BTreeSet::from([k]) }
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = i64>) -> Self {
        let mut p = Self::zero();
        for e in exps {
            p.toggle(e);
        }
        p
    }

    fn toggle(&mut self, e: i64) {
        if !self.terms.remove(&e) {
            self.terms.insert(e);
        }
    }

    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(k)` when the polynomial is the unit `x^k`.
    pub fn as_monomial(&self) -> Option<i64> {
        match self.terms.len() {
            1 => self.terms.first().copied(),
            _ => None,
        }
    }

    /// Value at `x = 1`.
    pub fn at_one(&self) -> u8 {
        (self.terms.len() % 2) as u8
    }

    pub fn add(&self, other: &Self) -> Self {
        LaurentPoly { terms: self.terms.symmetric_difference(&other.terms).copied().collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for a in &self.terms {
            for b in &other.terms {
                p.toggle(a + b);
            }
        }
        p
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                e => format!("x^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Self::zero());
        }
        let bad = || Error::Parse(format!("bad Laurent polynomial `{s}`"));
        let mut p = Self::zero();
        for term in compact.split('+') {
            let e = match term {
                "1" => 0,
                "x" => 1,
                t => t
                    .strip_prefix("x^")
                    .map(|k| k.trim_start_matches('(').trim_end_matches(')'))
                    .and_then(|k| k.parse::<i64>().ok())
                    .ok_or_else(bad)?,
            };
            p.toggle(e);
        }
        Ok(p)
    }
}

/// A 2×2 matrix `[[a, b], [c, d]]` of Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub m: [[LaurentPoly; 2]; 2],
}

impl Mat2 {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Self::diag(LaurentPoly::one(), LaurentPoly::one())
    }

    pub fn diag(a: LaurentPoly, d: LaurentPoly) -> Self {
        Self::new(a, LaurentPoly::zero(), LaurentPoly::zero(), d)
    }

    /// A constant matrix over `F₂`.
    pub fn constant(bits: [[u8; 2]; 2]) -> Self {
        let p = |b: u8| if b & 1 == 1 { LaurentPoly::one() } else { LaurentPoly::zero() };
        Self::new(p(bits[0][0]), p(bits[0][1]), p(bits[1][0]), p(bits[1][1]))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = |i: usize, j: usize| self.m[i][0].mul(&o.m[0][j]).add(&self.m[i][1].mul(&o.m[1][j]));
        Self::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn det(&self) -> LaurentPoly {
        self.m[0][0].mul(&self.m[1][1]).add(&self.m[0][1].mul(&self.m[1][0]))
    }

    pub fn inverse(&self) -> Option<Self> {
        let k = self.det().as_monomial()?;
        let u = LaurentPoly::monomial(-k);
        let [[a, b], [c, d]] = &self.m;
        Some(Self::new(d.mul(&u), b.mul(&u), c.mul(&u), a.mul(&u)))
    }

    /// Image under `x ↦ 1`, a matrix over `F₂`.
    pub fn at_one(&self) -> [[u8; 2]; 2] {
        [[self.m[0][0].at_one(), self.m[0][1].at_one()], [self.m[1][0].at_one(), self.m[1][1].at_one()]]
    }

    pub fn to_json(&self) -> Value {
        json!(self.m.iter().map(|row| row.iter().map(|p| p.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("matrix must be a 2x2 array of polynomial strings".into());
        let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
        let mut out = Self::identity();
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(bad)?;
            for (j, e) in row.iter().enumerate() {
                out.m[i][j] = e.as_str().ok_or_else(bad)?.parse()?;
            }
        }
        Ok(out)
    }
}

/// Whether `det M` is a unit `x^k`.
pub fn mat_is_invertible(m: &Mat2) -> bool {
    m.det().as_monomial().is_some()
}

/// The map `y ↦ M·y + c^Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineElement {
    pub c: [u8; 2],
    pub m: Mat2,
}

fn mat_vec(a: [[u8; 2]; 2], v: [u8; 2]) -> [u8; 2] {
    [(a[0][0] & v[0]) ^ (a[0][1] & v[1]), (a[1][0] & v[0]) ^ (a[1][1] & v[1])]
}

impl AffineElement {
    pub fn identity() -> Self {
        AffineElement { c: [0, 0], m: Mat2::identity() }
    }

    pub fn translation(c: [u8; 2]) -> Self {
        AffineElement { c, m: Mat2::identity() }
    }

    pub fn linear(m: Mat2) -> Self {
        AffineElement { c: [0, 0], m }
    }

    /// `self ∘ other`: `(c, M)·(d, N) = (c + M(1)·d, MN)`.
    pub fn mul(&self, o: &Self) -> Self {
        let d = mat_vec(self.m.at_one(), o.c);
        AffineElement { c: xor(self.c, d), m: self.m.mul(&o.m) }
    }

    pub fn inverse(&self) -> Result<Self> {
        let mi = self.m.inverse().ok_or(Error::NotInvertible)?;
        let c = mat_vec(mi.at_one(), self.c);
        Ok(AffineElement { c, m: mi })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn to_json(&self) -> Value {
        json!({ "c": self.c, "m": self.m.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("affine element needs `c` (two bits) and `m`".into());
        let c = v.get("c").and_then(Value::as_array).filter(|c| c.len() == 2).ok_or_else(bad)?;
        let bit = |x: &Value| x.as_u64().filter(|&b| b < 2).map(|b| b as u8).ok_or_else(bad);
        Ok(AffineElement { c: [bit(&c[0])?, bit(&c[1])?], m: Mat2::from_json(v.get("m").ok_or_else(bad)?)? })
    }
}

fn xor(a: [u8; 2], b: [u8; 2]) -> [u8; 2] {
    [a[0] ^ b[0], a[1] ^ b[1]]
}

fn bits(s: Symbol) -> [u8; 2] {
    [(s >> 1) as u8 & 1, s as u8 & 1]
}

fn symbol(v: [u8; 2]) -> Symbol {
    ((v[0] << 1) | v[1]) as Symbol
}

/// The four-letter alphabet viewed as two binary tracks.
pub fn two_by_two() -> Alphabet {
    Alphabet::product(&[2, 2]).expect("2x2 alphabet")
}

fn check_alphabet(a: &Alphabet) -> Result<()> {
    if a.factors() != [2, 2] {
        return Err(Error::AlphabetMismatch(format!("expected the 2x2 alphabet, got {:?}", a.factors())));
    }
    Ok(())
}

/// A symbol permutation of `Z₂²` as `v ↦ A v + c`.
pub fn perm_to_affine(p: &Permutation) -> Result<AffineElement> {
    if p.len() != 4 {
        return Err(Error::SizeMismatch { expected: 4, got: p.len() });
    }
    let c = bits(p.apply(0) as Symbol);
    let col = |s: u32| {
        xor(bits(p.apply(s) as Symbol), c)
    };
    let (e1, e2) = (col(2), col(1));
    let a = [[e1[0], e2[0]], [e1[1], e2[1]]];
    for s in 0..4u32 {
        if symbol(xor(mat_vec(a, bits(s as Symbol)), c)) != p.apply(s) as Symbol {
            return Err(Error::Invalid(format!("permutation {:?} is not affine", p.images())));
        }
    }
    Ok(AffineElement { c, m: Mat2::constant(a) })
}

/// Reads the affine form off the local rule of `f`, verifying affinity on
/// every window.
pub fn ca_to_affine(f: &Ca) -> Result<AffineElement> {
    check_alphabet(f.alphabet())?;
    let (lo, _) = f.interval();
    let w = f.width();
    if w > 10 {
        return Err(Error::BudgetExceeded { needed: 4u128.pow(w as u32), budget: 1 << 20 });
    }
    let c = bits(f.local(&vec![0; w]));
    let mut m = Mat2::diag(LaurentPoly::zero(), LaurentPoly::zero());
    // response[j][b]: output bits for a single 1 on track b at offset lo + j
    let mut response = vec![[[0u8; 2]; 2]; w];
    for (j, resp) in response.iter_mut().enumerate() {
        for (b, unit) in [2, 1].into_iter().enumerate() {
            let mut win = vec![0; w];
            win[j] = unit;
            let r = xor(bits(f.local(&win)), c);
            resp[b] = r;
            for a in 0..2 {
                if r[a] == 1 {
                    m.m[a][b].toggle(-(lo + j as i64));
                }
            }
        }
    }
    {
        let mut win = vec![0; w];
        for idx in 0..4usize.pow(w as u32) {
            let mut t = idx;
            for s in win.iter_mut().rev() {
                *s = (t % 4) as Symbol;
                t /= 4;
            }
            let mut expect = c;
            for (j, &s) in win.iter().enumerate() {
                let v = bits(s);
                for b in 0..2 {
                    if v[b] == 1 {
                        expect = xor(expect, response[j][b]);
                    }
                }
            }
            if bits(f.local(&win)) != expect {
                return Err(Error::Invalid("automaton is not affine".into()));
            }
        }
    }
    Ok(AffineElement { c, m })
}

/// The homomorphic image of a word over the 2×2 alphabet.
pub fn word_to_affine(alphabet: &Alphabet, w: &GroupWord, registry: &Registry) -> Result<AffineElement> {
    check_alphabet(alphabet)?;
    let mut acc = AffineElement::identity();
    for t in &w.tokens {
        let e = match t {
            Token::Shift { track, exp } => {
                let s = LaurentPoly::monomial(-exp);
                match track {
                    1 => AffineElement::linear(Mat2::diag(s, LaurentPoly::one())),
                    2 => AffineElement::linear(Mat2::diag(LaurentPoly::one(), s)),
                    _ => return Err(Error::BadTrack { track: *track, arity: 2 }),
                }
            }
            Token::Perm { perm, exp } => perm_to_affine(perm)?.pow(*exp)?,
            Token::Named { name, exp } => {
                let base = if let Some(p) = registry.perms.get(name) {
                    perm_to_affine(p)?
                } else if let Some(f) = registry.automata.get(name) {
                    ca_to_affine(f)?
                } else {
                    return Err(Error::UnresolvedName(name.clone()));
                };
                base.pow(*exp)?
            }
            Token::Group { word, exp } => word_to_affine(alphabet, word, registry)?.pow(*exp)?,
        };
        acc = acc.mul(&e);
    }
    Ok(acc)
}

/// The automaton `y ↦ M·y + c^Z` on the 2×2 alphabet.
pub fn affine_to_ca(e: &AffineElement) -> Result<Ca> {
    if !mat_is_invertible(&e.m) {
        return Err(Error::NotInvertible);
    }
    affine_map_ca(e)
}

/// The same automaton without the invertibility check; the result is a
/// cellular automaton for any matrix, reversible or not.
pub fn affine_map_ca(e: &AffineElement) -> Result<Ca> {
    // entry exponent k reads input cell i - k
    let offsets: Vec<i64> = e.m.m.iter().flatten().flat_map(|p| p.exponents().map(|k| -k)).collect();
    let lo = offsets.iter().copied().min().unwrap_or(0);
    let hi = offsets.iter().copied().max().unwrap_or(0);
    let taps: Vec<(usize, usize, usize)> = (0..2)
        .flat_map(|a| (0..2).map(move |b| (a, b)))
        .flat_map(|(a, b)| e.m.m[a][b].exponents().map(move |k| (a, b, (-k - lo) as usize)).collect::<Vec<_>>())
        .collect();
    let c = e.c;
    Ca::from_fn(two_by_two(), lo, hi, move |w| {
        let mut out = c;
        for &(a, b, j) in &taps {
            out[a] ^= bits(w[j])[b];
        }
        symbol(out)
    })
}

#[cfg(test)]
mod tests;
