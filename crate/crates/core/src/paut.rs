//! Partial shifts, symbol permutations and formal group words over them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Symbol};
use crate::ca::{compose, Ca};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// `σ_track^exp`: shifts track `track` (1-based) by `exp` cells, leaving the
/// others in place. For `exp = 1` the neighbourhood is `[0, 1]`.
pub fn make_partial_shift_pow(alphabet: &Alphabet, track: usize, exp: i64) -> Result<Ca> {
    let k = alphabet.arity();
    if track == 0 || track > k {
        return Err(Error::BadTrack { track, arity: k });
    }
    let t = track - 1;
    if alphabet.factors().is_empty() || k == 1 {
        // the full shift
        return Ca::from_fn(alphabet.clone(), exp, exp, |w| w[0]);
    }
    let lo = exp.min(0);
    let hi = exp.max(0);
    let here = (-lo) as usize;
    let src = (exp - lo) as usize;
    let a = alphabet.clone();
    Ca::from_fn(alphabet.clone(), lo, hi, move |w| a.with_track(w[here], t, a.track_of(w[src], t)))
}

pub fn make_partial_shift(alphabet: &Alphabet, track: usize) -> Result<Ca> {
    make_partial_shift_pow(alphabet, track, 1)
}

pub fn make_symbol_perm(alphabet: &Alphabet, p: &Permutation) -> Result<Ca> {
    if p.len() != alphabet.size() {
        return Err(Error::SizeMismatch { expected: alphabet.size(), got: p.len() });
    }
    Ca::from_table(alphabet.clone(), 0, 0, p.images().to_vec())
}

/// The symbol permutation of `A = B_1 × … × B_k` that permutes tracks:
/// track `i` of the output is track `order[i]` of the input (0-based).
/// The result lives on the reordered factorization.
pub fn track_permutation(alphabet: &Alphabet, order: &[usize]) -> Result<(Alphabet, Permutation)> {
    let f = alphabet.tracks();
    let mut check = order.to_vec();
    check.sort_unstable();
    if check != (0..f.len()).collect::<Vec<_>>() {
        return Err(Error::Invalid("track order must be a permutation".into()));
    }
    let target = Alphabet::product(&order.iter().map(|&i| f[i]).collect::<Vec<_>>())?;
    let images = alphabet
        .symbols()
        .map(|s| {
            let d = alphabet.decode(s);
            target.encode(&order.iter().map(|&i| d[i]).collect::<Vec<_>>()).unwrap()
        })
        .collect();
    Ok((target, Permutation::from_images(images)?))
}

/// For a bijection `pi` from the symbols of `from` to those of `to`, the
/// symbol permutation `π̄` and its inverse, both over `to`. Conjugating by
/// `π̄` carries automata written in the `from` coordinates to the `to`
/// coordinates; see [`transport`].
pub fn conjugate_decomposition(from: &Alphabet, to: &Alphabet, pi: &Permutation) -> Result<(Ca, Ca)> {
    if from.size() != to.size() || pi.len() != from.size() {
        return Err(Error::SizeMismatch { expected: from.size(), got: pi.len().max(to.size()) });
    }
    Ok((make_symbol_perm(to, pi)?, make_symbol_perm(to, &pi.inverse())?))
}

/// `π̄ ∘ f ∘ π̄⁻¹`, reading `f` (over `from`) on the symbols of `to`.
pub fn transport(f: &Ca, to: &Alphabet, pi: &Permutation) -> Result<Ca> {
    let (p, pinv) = conjugate_decomposition(f.alphabet(), to, pi)?;
    let g = relabel(f, to)?;
    compose(&p, &compose(&g, &pinv)?)
}

/// The same local rule with the alphabet metadata replaced by one of equal size.
pub fn relabel(f: &Ca, to: &Alphabet) -> Result<Ca> {
    if f.alphabet().size() != to.size() {
        return Err(Error::SizeMismatch { expected: to.size(), got: f.alphabet().size() });
    }
    let t = f.tabulated(crate::ca::DEFAULT_BUDGET)?;
    let (lo, hi) = t.interval();
    Ca::from_table(to.clone(), lo, hi, t.table().expect("tabulated").to_vec())
}

/// One factor of a group word.
#[derive(Debug, Clone)]
pub enum Token {
    /// `σ_track^exp`, tracks numbered from 1.
    Shift { track: usize, exp: i64 },
    Perm { perm: Arc<Permutation>, exp: i64 },
    /// A registered automaton or permutation, referenced by name.
    Named { name: String, exp: i64 },
    /// A shared sub-word raised to a power.
    Group { word: Arc<GroupWord>, exp: i64 },
}

impl Token {
    pub fn shift(track: usize, exp: i64) -> Token {
        Token::Shift { track, exp }
    }

    pub fn perm(p: Permutation) -> Token {
        Token::Perm { perm: Arc::new(p), exp: 1 }
    }

    pub fn named(name: &str, exp: i64) -> Token {
        Token::Named { name: name.to_string(), exp }
    }

    pub fn group(word: GroupWord, exp: i64) -> Token {
        Token::Group { word: Arc::new(word), exp }
    }

    pub fn inverse(&self) -> Token {
        match self {
            Token::Shift { track, exp } => Token::Shift { track: *track, exp: -exp },
            Token::Perm { perm, exp } => Token::Perm { perm: perm.clone(), exp: -exp },
            Token::Named { name, exp } => Token::Named { name: name.clone(), exp: -exp },
            Token::Group { word, exp } => Token::Group { word: word.clone(), exp: -exp },
        }
    }

    fn exp(&self) -> i64 {
        match self {
            Token::Shift { exp, .. } | Token::Perm { exp, .. } | Token::Named { exp, .. } | Token::Group { exp, .. } => *exp,
        }
    }

    /// Merges `self ∘ other` into one token when they are of the same kind.
    fn merge(&self, other: &Token) -> Option<Token> {
        match (self, other) {
            (Token::Shift { track: a, exp: e }, Token::Shift { track: b, exp: f }) if a == b => {
                Some(Token::Shift { track: *a, exp: e + f })
            }
            (Token::Perm { perm: p, exp: e }, Token::Perm { perm: q, exp: f }) => {
                Some(Token::Perm { perm: Arc::new(p.pow(*e).compose(&q.pow(*f))), exp: 1 })
            }
            (Token::Named { name: a, exp: e }, Token::Named { name: b, exp: f }) if a == b => {
                Some(Token::Named { name: a.clone(), exp: e + f })
            }
            (Token::Group { word: a, exp: e }, Token::Group { word: b, exp: f }) if Arc::ptr_eq(a, b) => {
                Some(Token::Group { word: a.clone(), exp: e + f })
            }
            _ => None,
        }
    }

    fn is_trivial(&self) -> bool {
        match self {
            Token::Perm { perm, exp } => *exp == 0 || perm.is_identity(),
            t => t.exp() == 0,
        }
    }
}

/// A formal product of tokens in composition order: `tokens[0]` is applied
/// last, so the word denotes `tokens[0] ∘ tokens[1] ∘ …`.
#[derive(Debug, Clone, Default)]
pub struct GroupWord {
    pub tokens: Vec<Token>,
}

impl GroupWord {
    pub fn new(tokens: Vec<Token>) -> GroupWord {
        GroupWord { tokens }
    }

    pub fn empty() -> GroupWord {
        GroupWord::default()
    }

    pub fn single(t: Token) -> GroupWord {
        GroupWord { tokens: vec![t] }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Total number of primitive tokens after expanding sub-words and powers.
    pub fn expanded_len(&self) -> u128 {
        self.tokens
            .iter()
            .map(|t| match t {
                Token::Group { word, exp } => word.expanded_len() * exp.unsigned_abs() as u128,
                t => t.exp().unsigned_abs() as u128,
            })
            .sum()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { tokens: self.tokens.iter().rev().map(Token::inverse).collect() }
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &GroupWord) -> GroupWord {
        let mut tokens = self.tokens.clone();
        tokens.extend(other.tokens.iter().cloned());
        GroupWord { tokens }
    }

    /// `g^h = h⁻¹ g h`.
    pub fn conj(&self, h: &GroupWord) -> GroupWord {
        h.inverse().then_after(self).then_after(h)
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`.
    pub fn commutator(g: &GroupWord, h: &GroupWord) -> GroupWord {
        g.inverse().then_after(&h.inverse()).then_after(g).then_after(h)
    }

    /// The word as a single shared token, so repeated use costs nothing.
    pub fn boxed(self, exp: i64) -> GroupWord {
        GroupWord::single(Token::group(self, exp))
    }

    pub fn pow(&self, e: i64) -> GroupWord {
        GroupWord::single(Token::Group { word: Arc::new(self.clone()), exp: e })
    }

    /// Free reduction: merges adjacent tokens of the same kind and drops
    /// trivial ones. Does not change the denoted automaton.
    pub fn reduce(&self) -> GroupWord {
        let mut out: Vec<Token> = Vec::new();
        for t in &self.tokens {
            if t.is_trivial() {
                continue;
            }
            let merged = out.last().and_then(|last| last.merge(t));
            match merged {
                Some(m) => {
                    out.pop();
                    if !m.is_trivial() {
                        out.push(m);
                    }
                }
                None => out.push(t.clone()),
            }
        }
        GroupWord { tokens: out }
    }

    pub fn parse(text: &str, registry: &Registry) -> Result<GroupWord> {
        let mut p = Parser { chars: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, registry };
        let w = p.word()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!("unexpected `{}` at position {}", p.chars[p.pos], p.pos)));
        }
        Ok(w)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return write!(f, "id");
        }
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            let (body, exp) = match t {
                Token::Shift { track, exp } => (format!("s{track}"), *exp),
                Token::Perm { perm, exp } => {
                    let imgs: Vec<String> = perm.images().iter().map(|v| v.to_string()).collect();
                    (format!("p[{}]", imgs.join(",")), *exp)
                }
                Token::Named { name, exp } => (format!("N({name})"), *exp),
                Token::Group { word, exp } => (format!("({word})"), *exp),
            };
            if exp == 1 {
                write!(f, "{body}")?;
            } else {
                write!(f, "{body}^{exp}")?;
            }
        }
        Ok(())
    }
}

/// Named automata and permutations that words may reference.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    pub automata: HashMap<String, Ca>,
    pub perms: HashMap<String, Permutation>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    pub fn with_automaton(mut self, name: &str, f: Ca) -> Registry {
        self.automata.insert(name.to_string(), f);
        self
    }

    pub fn with_perm(mut self, name: &str, p: Permutation) -> Registry {
        self.perms.insert(name.to_string(), p);
        self
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    registry: &'a Registry,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{c}` at position {}", self.pos)))
        }
    }

    fn word(&mut self) -> Result<GroupWord> {
        let mut tokens = Vec::new();
        if self.peek().is_none() || self.peek() == Some(')') {
            return Ok(GroupWord::empty());
        }
        loop {
            tokens.push(self.token()?);
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(GroupWord { tokens })
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::Parse(format!("expected an integer at position {start}")))
    }

    fn name(&mut self) -> Result<String> {
        self.expect('(')?;
        let start = self.pos;
        while self.peek().is_some_and(|c| c != ')') {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        self.expect(')')?;
        Ok(s)
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() == Some('^') {
            self.pos += 1;
            self.int()
        } else {
            Ok(1)
        }
    }

    fn token(&mut self) -> Result<Token> {
        match self.peek() {
            Some('s') => {
                self.pos += 1;
                let track = self.int()?;
                if track < 1 {
                    return Err(Error::Parse("track numbers start at 1".into()));
                }
                let exp = self.exponent()?;
                Ok(Token::Shift { track: track as usize, exp })
            }
            Some('p') => {
                self.pos += 1;
                let perm = if self.peek() == Some('[') {
                    self.pos += 1;
                    let mut images = Vec::new();
                    while self.peek() != Some(']') {
                        images.push(self.int()? as u32);
                        if self.peek() == Some(',') {
                            self.pos += 1;
                        }
                    }
                    self.expect(']')?;
                    Permutation::from_images(images)?
                } else {
                    let name = self.name()?;
                    self.registry.perms.get(&name).cloned().ok_or(Error::UnresolvedName(name))?
                };
                let exp = self.exponent()?;
                Ok(Token::Perm { perm: Arc::new(perm), exp })
            }
            Some('N') => {
                self.pos += 1;
                let name = self.name()?;
                let exp = self.exponent()?;
                Ok(Token::Named { name, exp })
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                let exp = self.exponent()?;
                Ok(Token::Group { word: Arc::new(w), exp })
            }
            Some('i') if self.chars[self.pos..].starts_with(&['i', 'd']) => {
                self.pos += 2;
                Ok(Token::Group { word: Arc::new(GroupWord::empty()), exp: 1 })
            }
            other => Err(Error::Parse(format!("unexpected {other:?} at position {}", self.pos))),
        }
    }
}

/// Evaluates words to automata, caching shared sub-words.
pub struct Evaluator<'a> {
    alphabet: Alphabet,
    registry: &'a Registry,
    memo: HashMap<(usize, bool), Ca>,
}

impl<'a> Evaluator<'a> {
    pub fn new(alphabet: &Alphabet, registry: &'a Registry) -> Evaluator<'a> {
        Evaluator { alphabet: alphabet.clone(), registry, memo: HashMap::new() }
    }

    pub fn eval(&mut self, w: &GroupWord) -> Result<Ca> {
        let mut acc = Ca::identity(&self.alphabet);
        for t in w.tokens.iter().rev() {
            let f = self.token(t)?;
            acc = compose(&f, &acc)?;
        }
        Ok(acc)
    }

    fn power(&self, f: &Ca, e: u64) -> Result<Ca> {
        let mut acc = Ca::identity(&self.alphabet);
        for _ in 0..e {
            acc = compose(f, &acc)?;
        }
        Ok(acc)
    }

    fn token(&mut self, t: &Token) -> Result<Ca> {
        match t {
            Token::Shift { track, exp } => make_partial_shift_pow(&self.alphabet, *track, *exp),
            Token::Perm { perm, exp } => make_symbol_perm(&self.alphabet, &perm.pow(*exp)),
            Token::Named { name, exp } => {
                if let Some(p) = self.registry.perms.get(name) {
                    return make_symbol_perm(&self.alphabet, &p.pow(*exp));
                }
                let f = self.registry.automata.get(name).ok_or_else(|| Error::UnresolvedName(name.clone()))?;
                if f.alphabet() != &self.alphabet {
                    return Err(Error::AlphabetMismatch(format!("named automaton {name}")));
                }
                let base = if *exp < 0 { crate::ca::invert(f, crate::ca::DEFAULT_INVERSE_RADIUS)? } else { f.clone() };
                self.power(&base, exp.unsigned_abs())
            }
            Token::Group { word, exp } => {
                let key = (Arc::as_ptr(word) as usize, *exp < 0);
                let base = match self.memo.get(&key) {
                    Some(f) => f.clone(),
                    None => {
                        let w = if *exp < 0 { word.inverse() } else { (**word).clone() };
                        let f = self.eval(&w)?;
                        self.memo.insert(key, f.clone());
                        f
                    }
                };
                self.power(&base, exp.unsigned_abs())
            }
        }
    }
}

/// Right-to-left composition of the automata of the tokens.
pub fn eval_word(alphabet: &Alphabet, w: &GroupWord, registry: &Registry) -> Result<Ca> {
    Evaluator::new(alphabet, registry).eval(w)
}

/// Applies a word to the periodic configuration with period `cycle`, in
/// place, token by token. Exact, and independent of automaton composition.
pub fn act_on_cycle(alphabet: &Alphabet, w: &GroupWord, registry: &Registry, cycle: &mut Vec<Symbol>) -> Result<()> {
    for t in w.tokens.iter().rev() {
        match t {
            Token::Shift { track, exp } => {
                let k = alphabet.arity();
                if *track == 0 || *track > k {
                    return Err(Error::BadTrack { track: *track, arity: k });
                }
                let p = cycle.len() as i64;
                let src = |i: usize| cycle[(i as i64 + exp).rem_euclid(p) as usize];
                *cycle = if k == 1 {
                    (0..cycle.len()).map(src).collect()
                } else {
                    let t = track - 1;
                    (0..cycle.len()).map(|i| alphabet.with_track(cycle[i], t, alphabet.track_of(src(i), t))).collect()
                };
            }
            Token::Perm { perm, exp } => {
                let p = perm.pow(*exp);
                for s in cycle.iter_mut() {
                    *s = p.apply(*s);
                }
            }
            Token::Named { .. } => {
                let f = Evaluator::new(alphabet, registry).eval(&GroupWord::single(t.clone()))?;
                *cycle = apply_on_cycle(&f, cycle);
            }
            Token::Group { word, exp } => {
                let inner = if *exp < 0 { word.inverse() } else { (**word).clone() };
                for _ in 0..exp.unsigned_abs() {
                    act_on_cycle(alphabet, &inner, registry, cycle)?;
                }
            }
        }
    }
    Ok(())
}

fn apply_on_cycle(f: &Ca, cycle: &[Symbol]) -> Vec<Symbol> {
    let (lo, hi) = f.interval();
    let p = cycle.len() as i64;
    let ext: Vec<Symbol> = (lo..p + hi).map(|i| cycle[i.rem_euclid(p) as usize]).collect();
    f.eval_segment(&ext)
}

/// The permutation of a single cell's symbol induced by a word made of
/// symbol permutations only; `None` if it contains shifts or names.
pub fn word_as_perm(n: usize, w: &GroupWord) -> Option<Permutation> {
    let mut acc = Permutation::identity(n);
    for t in w.tokens.iter().rev() {
        let p = match t {
            Token::Perm { perm, exp } => perm.pow(*exp),
            Token::Group { word, exp } => word_as_perm(n, word)?.pow(*exp),
            _ => return None,
        };
        acc = p.compose(&acc);
    }
    Some(acc)
}

/// Symbol as a tuple, for building permutations of product alphabets.
pub fn perm_from_fn(alphabet: &Alphabet, f: impl Fn(&[Symbol]) -> Vec<Symbol>) -> Result<Permutation> {
    let images = alphabet.symbols().map(|s| alphabet.encode(&f(&alphabet.decode(s)))).collect::<Result<Vec<_>>>()?;
    Permutation::from_images(images)
}
