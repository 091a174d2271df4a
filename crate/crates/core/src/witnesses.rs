//! Witness constructions: free products of abelian groups acting on the two
//! tracks, the parity of track swaps, and a perfect subgroup generated by
//! six involutions.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::alphabet::{Alphabet, Symbol};
use crate::ca::{compose, Ca};
use crate::config::SupportedConfig;
use crate::error::{Error, Result};
use crate::paut::{make_symbol_perm, GroupWord, Token};
use crate::perm::Permutation;
use crate::permgroup::{log_half_factorial, Slp, SlpNode, StabChain};

/// A finite abelian group `Z_{k_1} × … × Z_{k_r}` acting regularly on the
/// symbols `0..order` of a track (mixed radix, first factor most
/// significant) and fixing the rest. The orbit of `1` is free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianAction {
    factors: Vec<usize>,
    size: usize,
}

pub type GroupElem = Vec<usize>;

impl AbelianAction {
    pub fn new(factors: Vec<usize>, size: usize) -> Result<Self> {
        if factors.iter().any(|&k| k == 0) {
            return Err(Error::DegenerateInput("cyclic factors must be positive".into()));
        }
        let order: usize = factors.iter().product();
        if order > size {
            return Err(Error::NonFreeOrbit(format!("a group of order {order} has no free orbit on {size} symbols")));
        }
        Ok(AbelianAction { factors, size })
    }

    /// Parses `Z2`, `Z2xZ3`, … .
    pub fn parse(text: &str, size: usize) -> Result<Self> {
        let factors = text
            .split(['x', '*'])
            .map(|t| {
                t.trim()
                    .strip_prefix('Z')
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad group `{text}`, expected e.g. Z2xZ3")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors, size)
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> GroupElem {
        vec![0; self.factors.len()]
    }

    pub fn is_identity(&self, g: &[usize]) -> bool {
        g.iter().zip(&self.factors).all(|(&a, &k)| a % k == 0)
    }

    pub fn add(&self, g: &[usize], h: &[usize]) -> GroupElem {
        g.iter().zip(h).zip(&self.factors).map(|((&a, &b), &k)| (a + b) % k).collect()
    }

    pub fn neg(&self, g: &[usize]) -> GroupElem {
        g.iter().zip(&self.factors).map(|(&a, &k)| (k - a % k) % k).collect()
    }

    pub fn check(&self, g: &[usize]) -> Result<()> {
        if g.len() != self.factors.len() || g.iter().zip(&self.factors).any(|(&a, &k)| a >= k) {
            return Err(Error::Invalid(format!("{g:?} is not an element of {:?}", self.factors)));
        }
        Ok(())
    }

    pub fn act(&self, g: &[usize], s: Symbol) -> Symbol {
        let s = s as usize;
        if s >= self.order() {
            return s as Symbol;
        }
        let mut digits = vec![0; self.factors.len()];
        let mut t = s;
        for (d, &k) in digits.iter_mut().zip(&self.factors).rev() {
            *d = t % k;
            t /= k;
        }
        let moved = self.add(&digits, g);
        moved.iter().zip(&self.factors).fold(0, |acc, (&d, &k)| acc * k + d) as Symbol
    }

    /// All elements, in mixed-radix order.
    pub fn elements(&self) -> Vec<GroupElem> {
        (0..self.order())
            .map(|mut t| {
                let mut g = vec![0; self.factors.len()];
                for (d, &k) in g.iter_mut().zip(&self.factors).rev() {
                    *d = t % k;
                    t /= k;
                }
                g
            })
            .collect()
    }
}

fn other_track(track: usize) -> usize {
    3 - track
}

/// `f_{g,i}` on `B × C`: applies `g` to the `track` component of cell 0
/// iff the other track holds `1` at cell `-i`.
pub fn free_gen(b: usize, c: usize, action: &AbelianAction, g: &[usize], i: i64, track: usize) -> Result<Ca> {
    action.check(g)?;
    if !(1..=2).contains(&track) {
        return Err(Error::BadTrack { track, arity: 2 });
    }
    let own = if track == 1 { b } else { c };
    if action.size() != own {
        return Err(Error::SizeMismatch { expected: own, got: action.size() });
    }
    let alphabet = Alphabet::product(&[b, c])?;
    let (lo, hi) = ((-i).min(0), (-i).max(0));
    let here = (-lo) as usize;
    let ctl = (-i - lo) as usize;
    let (t, o) = (track - 1, other_track(track) - 1);
    let a = alphabet.clone();
    let g = g.to_vec();
    let action = action.clone();
    Ca::from_fn(alphabet, lo, hi, move |w| {
        let s = w[here];
        if a.track_of(w[ctl], o) == 1 {
            a.with_track(s, t, action.act(&g, a.track_of(s, t)))
        } else {
            s
        }
    })
}

/// A word `f_ℓ ∘ ⋯ ∘ f_1` alternating between the two families; block `k`
/// (applied `k`-th) is a product of `f_{g,i}` with `i ≥ 1` on track
/// `first_track` for even `k` and on the other track for odd `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedWord {
    pub first_track: usize,
    pub blocks: Vec<Vec<(GroupElem, i64)>>,
}

/// The two acting groups: `g` on track 1 and `h` on track 2.
#[derive(Debug, Clone)]
pub struct FreeSetting {
    pub b: usize,
    pub c: usize,
    pub g: AbelianAction,
    pub h: AbelianAction,
}

impl FreeSetting {
    pub fn new(b: usize, c: usize, g: AbelianAction, h: AbelianAction) -> Result<Self> {
        if g.size() != b || h.size() != c {
            return Err(Error::SizeMismatch { expected: b * c, got: g.size() * h.size() });
        }
        Ok(FreeSetting { b, c, g, h })
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::product(&[self.b, self.c]).expect("positive sizes")
    }

    fn action(&self, track: usize) -> &AbelianAction {
        if track == 1 {
            &self.g
        } else {
            &self.h
        }
    }

    fn block_track(&self, w: &ReducedWord, k: usize) -> usize {
        if k % 2 == 0 {
            w.first_track
        } else {
            other_track(w.first_track)
        }
    }

    /// Combined element per offset of block `k`, dropping trivial ones.
    fn block_elements(&self, w: &ReducedWord, k: usize) -> Vec<(i64, GroupElem)> {
        let act = self.action(self.block_track(w, k));
        let mut by_offset: HashMap<i64, GroupElem> = HashMap::new();
        for (g, i) in &w.blocks[k] {
            let e = by_offset.entry(*i).or_insert_with(|| act.identity());
            *e = act.add(e, g);
        }
        let mut out: Vec<(i64, GroupElem)> = by_offset.into_iter().filter(|(_, g)| !act.is_identity(g)).collect();
        out.sort();
        out
    }

    /// Checks alternation and that every block is a nontrivial element
    /// with offsets `≥ 1`.
    pub fn check_reduced(&self, w: &ReducedWord) -> Result<()> {
        if !(1..=2).contains(&w.first_track) {
            return Err(Error::BadTrack { track: w.first_track, arity: 2 });
        }
        for k in 0..w.blocks.len() {
            let act = self.action(self.block_track(w, k));
            for (g, i) in &w.blocks[k] {
                act.check(g)?;
                if *i < 1 {
                    return Err(Error::Invalid(format!("offset {i} in block {k} is not positive")));
                }
            }
            if self.block_elements(w, k).is_empty() {
                return Err(Error::Invalid(format!("block {k} is trivial, so the word is not reduced")));
            }
        }
        Ok(())
    }

    /// Largest offset of block `k` carrying a nontrivial element, and that
    /// element.
    pub fn block_max(&self, w: &ReducedWord, k: usize) -> (i64, GroupElem) {
        self.block_elements(w, k).pop().expect("reduced block")
    }

    pub fn eval(&self, w: &ReducedWord) -> Result<Ca> {
        self.check_reduced(w)?;
        let mut acc = Ca::identity(&self.alphabet());
        for k in 0..w.blocks.len() {
            let track = self.block_track(w, k);
            for (i, g) in self.block_elements(w, k) {
                let f = free_gen(self.b, self.c, self.action(track), &g, i, track)?;
                acc = compose(&f, &acc)?;
            }
        }
        Ok(acc)
    }

    /// Applies the word block by block, without composing automata.
    pub fn act(&self, w: &ReducedWord, x: &SupportedConfig) -> Result<SupportedConfig> {
        self.check_reduced(w)?;
        let mut y = x.clone();
        for k in 0..w.blocks.len() {
            let track = self.block_track(w, k);
            for (i, g) in self.block_elements(w, k) {
                y = free_gen(self.b, self.c, self.action(track), &g, i, track)?.apply(&y)?;
            }
        }
        Ok(y)
    }

    /// Zero background, a `1` at the origin on the track not acted on by
    /// the first block, then for block `k` the symbol `g_k⁻¹·1` on its
    /// track, `r_k` cells further right.
    pub fn witness_config(&self, w: &ReducedWord) -> Result<SupportedConfig> {
        self.check_reduced(w)?;
        let a = self.alphabet();
        let mut center: Vec<Symbol> = vec![a.with_track(0, other_track(w.first_track) - 1, 1)];
        for k in 0..w.blocks.len() {
            let track = self.block_track(w, k);
            let (r, g) = self.block_max(w, k);
            center.extend(std::iter::repeat(0).take(r as usize - 1));
            let act = self.action(track);
            center.push(a.with_track(0, track - 1, act.act(&act.neg(&g), 1)));
        }
        SupportedConfig::new(a, vec![0], center, vec![0])
    }

    pub fn word_from_json(&self, v: &Value) -> Result<ReducedWord> {
        let bad = || Error::Parse("word must be {\"first_track\": 1|2, \"blocks\": [[[elem, offset], ...], ...]}".into());
        let first_track = v.get("first_track").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let blocks = v
            .get("blocks")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|blk| {
                blk.as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|pair| {
                        let p = pair.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
                        let g = match &p[0] {
                            Value::Number(n) => vec![n.as_u64().ok_or_else(bad)? as usize],
                            Value::Array(xs) => {
                                xs.iter().map(|x| x.as_u64().map(|x| x as usize).ok_or_else(bad)).collect::<Result<_>>()?
                            }
                            _ => return Err(bad()),
                        };
                        Ok((g, p[1].as_i64().ok_or_else(bad)?))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let w = ReducedWord { first_track, blocks };
        self.check_reduced(&w)?;
        Ok(w)
    }
}

/// The two track swaps of `B × C × B × C` (sizes `m, n, m, n`): `↕_B`
/// exchanges tracks 1 and 3, `↕_C` exchanges tracks 2 and 4.
pub fn swap_perms(m: usize, n: usize) -> (Permutation, Permutation) {
    let a = Alphabet::product(&[m, n, m, n]).expect("positive sizes");
    let swap = |t: usize, u: usize| {
        let images = a
            .symbols()
            .map(|s| {
                let mut d = a.decode(s);
                d.swap(t, u);
                a.encode(&d).expect("in range") as u32
            })
            .collect();
        Permutation::from_images(images).expect("bijection")
    };
    (swap(0, 2), swap(1, 3))
}

/// Whether both track swaps are even: `2 | C(m,2)·n` and `2 | C(n,2)·m`.
pub fn swap_parity(m: usize, n: usize) -> bool {
    (m * m.saturating_sub(1) / 2 * n) % 2 == 0 && (n * n.saturating_sub(1) / 2 * m) % 2 == 0
}

/// A product of commutators `[u_1, v_1] ∘ [u_2, v_2] ∘ …`.
#[derive(Debug, Clone)]
pub struct CommutatorCertificate {
    pub pairs: Vec<(Permutation, Permutation)>,
}

impl CommutatorCertificate {
    pub fn product(&self, n: usize) -> Permutation {
        self.pairs
            .iter()
            .fold(Permutation::identity(n), |acc, (u, v)| acc.compose(&Permutation::commutator(u, v)))
    }

    pub fn all_even(&self) -> bool {
        self.pairs.iter().all(|(u, v)| u.is_even() && v.is_even())
    }
}

/// Writes an even involution as a product of commutators of 3-cycles, two
/// transpositions at a time.
pub fn involution_certificate(p: &Permutation) -> Result<CommutatorCertificate> {
    let n = p.len();
    let cycles = p.cycles();
    if cycles.iter().any(|c| c.len() != 2) || cycles.len() % 2 != 0 {
        return Err(Error::NotEven);
    }
    // [u, v] = (0 1)(2 3) for 3-cycles u, v on {0, 1, 2, 3}
    let three: Vec<Permutation> = [[0, 1, 2], [0, 2, 1], [0, 1, 3], [0, 3, 1], [0, 2, 3], [0, 3, 2], [1, 2, 3], [1, 3, 2]]
        .iter()
        .map(|c| Permutation::from_cycles(4, &[c.to_vec()]).expect("3-cycle"))
        .collect();
    let target = Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]]).expect("double transposition");
    let (u0, v0) = three
        .iter()
        .flat_map(|u| three.iter().map(move |v| (u, v)))
        .find(|(u, v)| Permutation::commutator(u, v) == target)
        .expect("the Klein group consists of commutators");
    let lift = |q: &Permutation, pts: [u32; 4]| {
        let cyc: Vec<Vec<u32>> = q.cycles().iter().map(|c| c.iter().map(|&i| pts[i as usize]).collect()).collect();
        Permutation::from_cycles(n, &cyc).expect("lifted cycle")
    };
    let pairs = cycles
        .chunks(2)
        .map(|ts| {
            let pts = [ts[0][0], ts[0][1], ts[1][0], ts[1][1]];
            (lift(u0, pts), lift(v0, pts))
        })
        .collect();
    Ok(CommutatorCertificate { pairs })
}

/// Turns a straight-line program over generators named `names[i]` into a
/// word, sharing repeated sub-programs.
pub fn slp_to_word(slp: &Slp, root: usize, names: &[String]) -> GroupWord {
    let mut memo: HashMap<usize, Arc<GroupWord>> = HashMap::new();
    let mut stack = vec![root];
    while let Some(&v) = stack.last() {
        if memo.contains_key(&v) {
            stack.pop();
            continue;
        }
        let kids: Vec<usize> = match slp.nodes()[v] {
            SlpNode::Inv(a) => vec![a],
            SlpNode::Mul(a, b) => vec![a, b],
            _ => vec![],
        };
        let pending: Vec<usize> = kids.iter().copied().filter(|k| !memo.contains_key(k)).collect();
        if !pending.is_empty() {
            stack.extend(pending);
            continue;
        }
        stack.pop();
        let tok = |k: usize, e: i64| Token::Group { word: memo[&k].clone(), exp: e };
        let w = match slp.nodes()[v] {
            SlpNode::Identity => GroupWord::empty(),
            SlpNode::Gen(i) => GroupWord::single(Token::named(&names[i], 1)),
            SlpNode::Inv(a) => GroupWord::single(tok(a, -1)),
            SlpNode::Mul(a, b) => GroupWord::new(vec![tok(a, 1), tok(b, 1)]),
        };
        memo.insert(v, Arc::new(w));
    }
    (*memo[&root]).clone()
}

/// Six involutions `F ∪ F^{σ₁∘σ₂}` on `(B × C)²`, with `F` three symbol
/// involutions generating `Alt((B × C)²)`.
#[derive(Debug, Clone)]
pub struct SixInvolutions {
    pub b: usize,
    pub c: usize,
    pub alphabet: Alphabet,
    pub perms: Vec<Permutation>,
    pub gens: Vec<Ca>,
    /// Search seed that produced `perms`.
    pub seed: u64,
    /// Program for `↕_B` and `↕_C` in `perms`.
    pub swap_b: GroupWord,
    pub swap_c: GroupWord,
}

/// Generator names used in the words of [`SixInvolutions`]: `f1..f3` for
/// `F`, `f4..f6` for the conjugates.
pub fn six_names() -> Vec<String> {
    (1..=6).map(|i| format!("f{i}")).collect()
}

/// `σ₁∘σ₂` as a word.
pub fn diagonal_shift() -> GroupWord {
    GroupWord::new(vec![Token::shift(1, 1), Token::shift(2, 1)])
}

fn random_even_involution(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut pts: Vec<u32> = (0..n as u32).collect();
    pts.shuffle(rng);
    let t = (n / 2) & !1;
    let cycles: Vec<Vec<u32>> = (0..t).map(|k| vec![pts[2 * k], pts[2 * k + 1]]).collect();
    Permutation::from_cycles(n, &cycles).expect("disjoint transpositions")
}

pub fn six_involutions(b: usize, c: usize, seed: u64) -> Result<SixInvolutions> {
    if b < 2 || c < 2 {
        return Err(Error::DegenerateInput("both track alphabets need at least two symbols".into()));
    }
    if !swap_parity(b, c) {
        return Err(Error::ParityViolation { b, c });
    }
    let alphabet = Alphabet::product(&[b, c, b, c])?;
    let n = alphabet.size();
    let target = log_half_factorial(n);
    let (sb, sc) = swap_perms(b, c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..64u64 {
        let perms: Vec<Permutation> = (0..3).map(|_| random_even_involution(n, &mut rng)).collect();
        let mut chain = StabChain::build(n, &perms, seed ^ attempt, 60, Some(target));
        if !chain.is_alternating() {
            continue;
        }
        let names = six_names();
        let (Some(pb), Some(pc)) = (chain.express(&sb), chain.express(&sc)) else { continue };
        let swap_b = slp_to_word(&chain.slp, pb, &names[..3]);
        let swap_c = slp_to_word(&chain.slp, pc, &names[..3]);
        let h = diagonal_shift();
        let mut gens: Vec<Ca> = perms.iter().map(|p| make_symbol_perm(&alphabet, p)).collect::<Result<_>>()?;
        for p in &perms {
            let w = GroupWord::single(Token::perm(p.clone())).conj(&h);
            gens.push(crate::paut::eval_word(&alphabet, &w, &crate::paut::Registry::new())?);
        }
        return Ok(SixInvolutions { b, c, alphabet, perms, gens, seed, swap_b, swap_c });
    }
    Err(Error::Inconsistent("no generating triple of involutions found".into()))
}

impl SixInvolutions {
    pub fn registry(&self) -> crate::paut::Registry {
        let mut reg = crate::paut::Registry::new();
        for (name, f) in six_names().iter().zip(&self.gens) {
            reg = reg.with_automaton(name, f.clone());
        }
        reg
    }

    /// Symbol-permutation registry for `f1..f3` only, for cheap evaluation.
    pub fn perm_registry(&self) -> crate::paut::Registry {
        let mut reg = crate::paut::Registry::new();
        for (name, p) in six_names().iter().zip(&self.perms) {
            reg = reg.with_perm(name, p.clone());
        }
        reg
    }

    /// The word `w` with every `f_i` renamed to `f_{i+3}`, i.e. `w^{σ₁∘σ₂}`.
    pub fn conjugated(w: &GroupWord) -> GroupWord {
        fn go(w: &GroupWord, memo: &mut HashMap<usize, Arc<GroupWord>>) -> GroupWord {
            GroupWord::new(
                w.tokens
                    .iter()
                    .map(|t| match t {
                        Token::Named { name, exp } => {
                            let k: usize = name[1..].parse().expect("generator name");
                            Token::named(&format!("f{}", k + 3), *exp)
                        }
                        Token::Group { word, exp } => {
                            let key = Arc::as_ptr(word) as usize;
                            let inner = match memo.get(&key) {
                                Some(x) => x.clone(),
                                None => {
                                    let x = Arc::new(go(word, memo));
                                    memo.insert(key, x.clone());
                                    x
                                }
                            };
                            Token::Group { word: inner, exp: *exp }
                        }
                        other => other.clone(),
                    })
                    .collect(),
            )
        }
        go(w, &mut HashMap::new())
    }

    /// Commutator certificates for `f1..f3`; those of `f4..f6` are their
    /// conjugates by `σ₁∘σ₂`.
    pub fn certificates(&self) -> Result<Vec<CommutatorCertificate>> {
        self.perms.iter().map(involution_certificate).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "B": self.b,
            "C": self.c,
            "seed": self.seed,
            "involutions": self.perms.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>(),
            "conjugated_by": "s1 * s2",
        })
    }
}

#[cfg(test)]
mod tests;
