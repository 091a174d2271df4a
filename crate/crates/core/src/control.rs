//! Controlled permutations `ctrl{π}{F}` on `(B × C)^Z` and the controlled
//! action groups `P(B^Z, G)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Symbol};
use crate::ca::{compose, equal, Ca, Deps, EqualityVerdict, NativeRule, DEFAULT_BUDGET};
use crate::clopen::{clopen_is_unbordered, ClopenSet};
use crate::config::SupportedConfig;
use crate::error::{Error, Result};
use crate::paut::{GroupWord, Token};
use crate::perm::{sign_of, Permutation};
use crate::permgroup::{hypocenter, shortest_product};

/// Two-track alphabet `B × C`, control track first.
pub fn two_track(b: usize, c: usize) -> Result<Alphabet> {
    Alphabet::product(&[b, c])
}

type BlockFn = Arc<dyn Fn(&[Symbol]) -> Vec<Symbol> + Send + Sync>;

/// A permutation of `C^n`, as a table or as a pair of mutually inverse
/// functions when `|C|^n` is too large to tabulate comfortably.
#[derive(Clone)]
pub enum BlockMap {
    Table(Arc<Permutation>),
    Func { forward: BlockFn, backward: BlockFn },
}

impl fmt::Debug for BlockMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockMap::Table(p) => write!(f, "Table({p})"),
            BlockMap::Func { .. } => write!(f, "Func"),
        }
    }
}

impl BlockMap {
    pub fn apply(&self, c: usize, block: &[Symbol]) -> Vec<Symbol> {
        match self {
            BlockMap::Table(p) => {
                let idx = block.iter().fold(0usize, |acc, &s| acc * c + s as usize);
                let mut v = p.apply(idx as u32) as usize;
                let mut out = vec![0; block.len()];
                for slot in out.iter_mut().rev() {
                    *slot = (v % c) as Symbol;
                    v /= c;
                }
                out
            }
            BlockMap::Func { forward, .. } => forward(block),
        }
    }

    pub fn inverse(&self) -> BlockMap {
        match self {
            BlockMap::Table(p) => BlockMap::Table(Arc::new(p.inverse())),
            BlockMap::Func { forward, backward } => BlockMap::Func { forward: backward.clone(), backward: forward.clone() },
        }
    }

    /// Sign as a permutation of `C^n`.
    pub fn sign(&self, c: usize, n: usize) -> i8 {
        match self {
            BlockMap::Table(p) => p.sign(),
            BlockMap::Func { forward, .. } => {
                let total = c.pow(n as u32);
                sign_of(total, |i| {
                    let block = unrank(i, c, n);
                    rank(&forward(&block), c) as u32
                })
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, BlockMap::Table(p) if p.is_identity())
    }
}

pub(crate) fn rank(block: &[Symbol], c: usize) -> usize {
    block.iter().fold(0usize, |acc, &s| acc * c + s as usize)
}

pub(crate) fn unrank(mut i: usize, c: usize, n: usize) -> Vec<Symbol> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = (i % c) as Symbol;
        i /= c;
    }
    out
}

/// `ctrl{π}{F}`: wherever `σ^s(x) ∈ F` on the control track, the data block
/// `y_{[s, s+n)}` is replaced by `π(y_{[s, s+n)})`.
#[derive(Debug, Clone)]
pub struct ControlledPerm {
    b: usize,
    c: usize,
    f: ClopenSet,
    n: usize,
    map: BlockMap,
}

impl ControlledPerm {
    pub fn new(c: usize, f: ClopenSet, n: usize, map: BlockMap) -> Result<ControlledPerm> {
        if n == 0 {
            return Err(Error::DegenerateInput("block length must be positive".into()));
        }
        if !clopen_is_unbordered(&f, n) {
            return Err(Error::NotUnbordered(n));
        }
        if let BlockMap::Table(p) = &map {
            let need = c.checked_pow(n as u32).unwrap_or(usize::MAX);
            if p.len() != need {
                return Err(Error::SizeMismatch { expected: need, got: p.len() });
            }
        }
        Ok(ControlledPerm { b: f.alphabet().size(), c, f, n, map })
    }

    /// `ctrl{π}{F}` with the block length equal to the width of `F`.
    pub fn with_perm(c: usize, f: ClopenSet, pi: Permutation) -> Result<ControlledPerm> {
        let n = f.width();
        ControlledPerm::new(c, f, n, BlockMap::Table(Arc::new(pi)))
    }

    pub fn alphabet(&self) -> Alphabet {
        two_track(self.b, self.c).expect("positive sizes")
    }

    pub fn clopen(&self) -> &ClopenSet {
        &self.f
    }

    pub fn block_len(&self) -> usize {
        self.n
    }

    pub fn map(&self) -> &BlockMap {
        &self.map
    }

    pub fn inverse(&self) -> ControlledPerm {
        ControlledPerm { map: self.map.inverse(), ..self.clone() }
    }

    /// Neighbourhood of the resulting automaton.
    pub fn interval(&self) -> (i64, i64) {
        let o = self.f.offset();
        let w = self.f.width() as i64;
        let n = self.n as i64;
        (o.min(0) - n + 1, (o + w - 1).max(n - 1))
    }

    /// The automaton, tabulated when its table has at most `2^20` entries.
    pub fn to_ca(&self) -> Result<Ca> {
        let alphabet = self.alphabet();
        if self.map.is_identity() {
            return Ok(Ca::identity(&alphabet));
        }
        let (lo, hi) = self.interval();
        let native = Ca::native(alphabet.clone(), lo, hi, Arc::new(CtrlRule { cp: self.clone(), lo, hi }));
        let size = (alphabet.size() as u128).checked_pow((hi - lo + 1) as u32);
        match size {
            Some(s) if s <= 1 << 20 => native.tabulated(DEFAULT_BUDGET),
            _ => Ok(native),
        }
    }
}

#[derive(Debug)]
struct CtrlRule {
    cp: ControlledPerm,
    lo: i64,
    hi: i64,
}

impl NativeRule for CtrlRule {
    fn name(&self) -> String {
        format!("ctrl on [{}]_{}", self.cp.f.words().len(), self.cp.f.offset())
    }

    fn eval_segment(&self, input: &[Symbol]) -> Vec<Symbol> {
        let c = self.cp.c;
        let width = (self.hi - self.lo + 1) as usize;
        if input.len() < width {
            return Vec::new();
        }
        let xs: Vec<Symbol> = input.iter().map(|&s| s / c as Symbol).collect();
        let mut ys: Vec<Symbol> = input.iter().map(|&s| s % c as Symbol).collect();
        let len = input.len() as i64;
        let o = self.cp.f.offset();
        let fw = self.cp.f.width() as i64;
        let n = self.cp.n as i64;
        let orig = ys.clone();
        // block starts s (segment coordinates) whose control window and data
        // block both lie inside the segment
        let s_lo = 0i64.max(-o);
        let s_hi = (len - n).min(len - o - fw);
        let mut s = s_lo;
        while s <= s_hi {
            let xw = &xs[(s + o) as usize..(s + o + fw) as usize];
            if self.cp.f.contains_word(xw) {
                let block = &orig[s as usize..(s + n) as usize];
                let img = self.cp.map.apply(c, block);
                ys[s as usize..(s + n) as usize].copy_from_slice(&img);
            }
            s += 1;
        }
        let start = (-self.lo) as usize;
        let end = input.len() - self.hi as usize;
        (start..end).map(|j| xs[j] * c as Symbol + ys[j]).collect()
    }

    fn deps(&self) -> Option<Deps> {
        let (lo, hi) = (self.lo, self.hi);
        let n = self.cp.n as i64;
        let mut data: BTreeSet<(i64, usize)> = (lo..=hi).map(|k| (k, 0)).collect();
        data.extend((-(n - 1)..=n - 1).map(|k| (k, 1)));
        Some(vec![BTreeSet::from([(0, 0)]), data])
    }

    fn inverse(&self) -> Option<Ca> {
        self.cp.inverse().to_ca().ok()
    }
}

/// `ctrl{π}{F}` as an automaton, with block length `|F|`'s width.
pub fn build_ctrl(c: usize, pi: &Permutation, f: &ClopenSet) -> Result<Ca> {
    ControlledPerm::with_perm(c, f.clone(), pi.clone())?.to_ca()
}

/// The cellwise controlled map: `y_0 ↦ g(y_0)` wherever the control track
/// matches `w` at offset `m` (unconditionally when `w` is empty).
pub fn basic_ctrl(b: usize, c: usize, g: &Permutation, w: &[Symbol], m: i64) -> Result<Ca> {
    let alphabet = two_track(b, c)?;
    if g.len() != c {
        return Err(Error::SizeMismatch { expected: c, got: g.len() });
    }
    if w.is_empty() {
        let images = alphabet.symbols().map(|s| (s / c as Symbol) * c as Symbol + g.apply(s % c as Symbol)).collect();
        return Ca::from_table(alphabet, 0, 0, images);
    }
    let f = ClopenSet::cylinder(Alphabet::new(b)?, m, w.to_vec())?;
    ControlledPerm::new(c, f, 1, BlockMap::Table(Arc::new(g.clone())))?.to_ca()
}

/// Checks `[ctrl{h}{[w]_m}, ctrl{g}{[a]_{m+|w|}}] = ctrl{[h,g]}{[wa]_m}`
/// by exact comparison.
pub fn ctrl_commutator_law_check(
    b: usize,
    h: &Permutation,
    g: &Permutation,
    w: &[Symbol],
    a: Symbol,
    m: i64,
) -> Result<EqualityVerdict> {
    let c = h.len();
    let am = m + w.len() as i64;
    let left = basic_ctrl(b, c, h, w, m)?;
    let right = basic_ctrl(b, c, g, &[a], am)?;
    // ctrl{h⁻¹} undoes ctrl{h}; certified here rather than searched for
    let left_inv = certified_inverse(&left, basic_ctrl(b, c, &h.inverse(), w, m)?)?;
    let right_inv = certified_inverse(&right, basic_ctrl(b, c, &g.inverse(), &[a], am)?)?;
    let lhs = compose(&left_inv, &compose(&right_inv, &compose(&left, &right)?)?)?;
    let mut wa = w.to_vec();
    wa.push(a);
    let rhs = basic_ctrl(b, c, &Permutation::commutator(h, g), &wa, m)?;
    equal(&lhs, &rhs, DEFAULT_BUDGET, 0)
}

fn certified_inverse(f: &Ca, candidate: Ca) -> Result<Ca> {
    let id = Ca::identity(f.alphabet());
    if equal(&compose(&candidate, f)?, &id, DEFAULT_BUDGET, 0)? != EqualityVerdict::ExactEqual {
        return Err(Error::Inconsistent("controlled map and its claimed inverse do not cancel".into()));
    }
    Ok(candidate)
}

/// `[f, g] = f⁻¹ g⁻¹ f g` for automata with known inverses.
pub fn commutator_ca(f: &Ca, g: &Ca) -> Result<Ca> {
    let fi = crate::ca::invert(f, crate::ca::DEFAULT_INVERSE_RADIUS)?;
    let gi = crate::ca::invert(g, crate::ca::DEFAULT_INVERSE_RADIUS)?;
    compose(&fi, &compose(&gi, &compose(f, g)?)?)
}

/// The symbol permutation of `B × C` applying `g` to the data symbol of
/// cells whose control symbol is `b0`.
pub fn local_ctrl_perm(b: usize, c: usize, b0: Symbol, g: &Permutation) -> Permutation {
    let images = (0..(b * c) as Symbol)
        .map(|s| {
            let (x, y) = (s / c as Symbol, s % c as Symbol);
            if x == b0 {
                x * c as Symbol + g.apply(y)
            } else {
                s
            }
        })
        .collect();
    Permutation::from_images(images).expect("bijection")
}

/// `ctrl{g}{[b0]_m}` as a word over `σ_1` and symbol permutations:
/// bring control cell `m` to the origin, act, shift back.
pub fn basic_token_word(b: usize, c: usize, g: &Permutation, b0: Symbol, m: i64) -> GroupWord {
    let p = Token::perm(local_ctrl_perm(b, c, b0, g));
    if m == 0 {
        GroupWord::single(p)
    } else {
        GroupWord::new(vec![Token::shift(1, -m), p, Token::shift(1, m)])
    }
}

/// A finite group acting on `0..degree`, with its element list and hypocenter.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    pub degree: usize,
    pub gens: Vec<Permutation>,
    pub elements: Vec<Permutation>,
    pub hypocenter: Vec<Permutation>,
}

impl FiniteGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<FiniteGroup> {
        let limit = 50_000;
        let elements = crate::permgroup::closure(degree, &gens, limit)?;
        let hypocenter = hypocenter(degree, &gens, limit)?;
        Ok(FiniteGroup { degree, gens, elements, hypocenter })
    }

    pub fn symmetric(degree: usize) -> Result<FiniteGroup> {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::transposition(degree, 0, 1));
            let cycle: Vec<u32> = (0..degree as u32).collect();
            gens.push(Permutation::from_cycles(degree, &[cycle])?);
        }
        FiniteGroup::new(degree, gens)
    }

    pub fn in_hypocenter(&self, g: &Permutation) -> bool {
        self.hypocenter.contains(g)
    }
}

/// Builds words for `ctrl{h}{[w]_m}` over the basic tokens of `P(B^Z, G)`,
/// following the commutator recursion
/// `[ctrl{h_i}{[w]_m}, ctrl{g_i}{[a]_{m+|w|}}] = ctrl{[h_i,g_i]}{[wa]_m}`.
pub struct HypocenterBuilder<'g> {
    group: &'g FiniteGroup,
    b: usize,
    commutators: Vec<(Permutation, usize, usize)>,
    factorizations: HashMap<Permutation, Vec<usize>>,
}

impl<'g> HypocenterBuilder<'g> {
    pub fn new(group: &'g FiniteGroup, b: usize) -> HypocenterBuilder<'g> {
        let mut seen = HashMap::new();
        let mut commutators = Vec::new();
        for (i, h) in group.hypocenter.iter().enumerate() {
            for (j, g) in group.elements.iter().enumerate() {
                let k = Permutation::commutator(h, g);
                if !k.is_identity() && !seen.contains_key(&k) {
                    seen.insert(k.clone(), ());
                    commutators.push((k, i, j));
                }
            }
        }
        HypocenterBuilder { group, b, commutators, factorizations: HashMap::new() }
    }

    /// `h` as a product `[h_1, g_1] ⋯ [h_k, g_k]`, listed in composition
    /// order, each entry an index into the commutator table.
    fn factor(&mut self, h: &Permutation) -> Result<Vec<usize>> {
        if let Some(f) = self.factorizations.get(h) {
            return Ok(f.clone());
        }
        let gens: Vec<Permutation> = self.commutators.iter().map(|(k, _, _)| k.clone()).collect();
        let word = shortest_product(self.group.degree, &gens, h, 100_000)?.ok_or(Error::NotInHypocenter)?;
        self.factorizations.insert(h.clone(), word.clone());
        Ok(word)
    }

    /// Longest commutator expansion used so far.
    pub fn max_factor_len(&self) -> usize {
        self.factorizations.values().map(Vec::len).max().unwrap_or(0)
    }

    pub fn ctrl_word(&mut self, h: &Permutation, w: &[Symbol], m: i64) -> Result<GroupWord> {
        let c = self.group.degree;
        if h.is_identity() {
            return Ok(GroupWord::empty());
        }
        if w.len() == 1 {
            if !self.group.elements.contains(h) {
                return Err(Error::Invalid("element outside the acting group".into()));
            }
            return Ok(basic_token_word(self.b, c, h, w[0], m));
        }
        if !self.group.in_hypocenter(h) {
            return Err(Error::NotInHypocenter);
        }
        let (prefix, a) = (&w[..w.len() - 1], w[w.len() - 1]);
        let mut tokens = Vec::new();
        for idx in self.factor(h)? {
            let (_, hi, gi) = self.commutators[idx].clone();
            let hh = self.group.hypocenter[hi].clone();
            let gg = self.group.elements[gi].clone();
            let left = self.ctrl_word(&hh, prefix, m)?;
            let right = basic_token_word(self.b, c, &gg, a, m + prefix.len() as i64);
            tokens.push(Token::group(GroupWord::commutator(&left.boxed(1), &right), 1));
        }
        Ok(GroupWord::new(tokens))
    }
}

/// A word over the basic tokens of `P(B^Z, G)` for `ctrl{g}{[w]_m}`,
/// for `g` in the hypocenter of `G` (or in `G` when `|w| = 1`).
pub fn hypocenter_ctrl(group: &FiniteGroup, b: usize, g: &Permutation, w: &[Symbol], m: i64) -> Result<GroupWord> {
    if w.is_empty() {
        return Err(Error::DegenerateInput("cylinder word must be nonempty".into()));
    }
    HypocenterBuilder::new(group, b).ctrl_word(g, w, m)
}

/// A `PAut[B; C]` word for `ctrl{φ}{F}` with `φ` even, acting cellwise:
/// `F` splits into disjoint cylinders, each handled by [`hypocenter_ctrl`]
/// with `G = Sym(C)`.
pub fn even_ctrl(b: usize, phi: &Permutation, f: &ClopenSet) -> Result<GroupWord> {
    if !phi.is_even() {
        return Err(Error::NotEven);
    }
    if phi.is_identity() {
        return Ok(GroupWord::empty());
    }
    let group = FiniteGroup::symmetric(phi.len())?;
    let mut builder = HypocenterBuilder::new(&group, b);
    let mut tokens = Vec::new();
    for u in f.words() {
        let w = builder.ctrl_word(phi, u, f.offset())?;
        tokens.push(Token::group(w, 1));
    }
    Ok(GroupWord::new(tokens))
}

/// A token of the controlled action group `P(B^Z, G)`.
#[derive(Debug, Clone, PartialEq)]
pub enum PToken {
    /// `σ^k` on the configuration component.
    Shift(i64),
    /// `ctrl{g}{[b]_m}` for a single control symbol `b`.
    Ctrl { g: Permutation, b: Symbol, m: i64 },
}

/// An element of `P(B^Z, G)` as a word in composition order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PWord(pub Vec<PToken>);

impl PWord {
    /// Action on a pair `(x, a)`.
    pub fn act(&self, x: &SupportedConfig, a: Symbol) -> (SupportedConfig, Symbol) {
        let mut x = x.clone();
        let mut a = a;
        for t in self.0.iter().rev() {
            match t {
                PToken::Shift(k) => x = x.shifted(*k),
                PToken::Ctrl { g, b, m } => {
                    if x.at(*m) == *b {
                        a = g.apply(a);
                    }
                }
            }
        }
        (x, a)
    }

    /// The simulating `PAut[B; C]` word: the shift becomes `σ_1`, basic
    /// controlled maps become symbol permutations conjugated by `σ_1`.
    pub fn to_group_word(&self, b: usize, c: usize) -> GroupWord {
        let mut tokens = Vec::new();
        for t in &self.0 {
            match t {
                PToken::Shift(k) => tokens.push(Token::shift(1, *k)),
                PToken::Ctrl { g, b: b0, m } => tokens.extend(basic_token_word(b, c, g, *b0, *m).tokens),
            }
        }
        GroupWord::new(tokens)
    }
}

#[cfg(test)]
mod tests;
