//! Compiling controlled block permutations into words over partial shifts
//! and symbol permutations, and embedding arbitrary reversible automata
//! into `(B × C)^Z`.

mod conveyor;
mod stages;
mod stairs;
mod wall;

pub use conveyor::{conveyor_embed, EmbeddingSpec};
pub use stages::{embed_as_controlled_stages, stages_to_ca, Stage};
pub use stairs::{stairs, StairData};
pub use wall::wall_embed;

use std::collections::HashMap;

use crate::alphabet::{Alphabet, Symbol};
use crate::clopen::{clopen_is_unbordered, ClopenSet};
use crate::control::{even_ctrl, two_track};
use crate::error::{Error, Result};
use crate::gates::{alt_word_from_3cycles, decompose_even};
use crate::paut::{perm_from_fn, GroupWord, Token};
use crate::perm::Permutation;

/// A `PAut[B; C]` word (tokens `σ_1`, `σ_2` and symbol permutations) for
/// `ctrl{π}{F}` with `π ∈ Alt(C^n)`, `n` the width of `F`.
pub fn compile_ctrl(b: usize, c: usize, pi: &Permutation, f: &ClopenSet) -> Result<GroupWord> {
    if c < 3 {
        return Err(Error::AlphabetTooSmall("the data track needs at least three symbols".into()));
    }
    if b < 2 {
        return Err(Error::AlphabetTooSmall("the control track needs at least two symbols".into()));
    }
    let n = f.width();
    let total = c.checked_pow(n as u32).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget: u64::MAX })?;
    if pi.len() != total {
        return Err(Error::SizeMismatch { expected: total, got: pi.len() });
    }
    if !pi.is_even() {
        return Err(Error::NotEven);
    }
    if !clopen_is_unbordered(f, n) {
        return Err(Error::NotUnbordered(n));
    }
    if pi.is_identity() {
        return Ok(GroupWord::empty());
    }
    let mut tokens = Vec::new();
    for u in f.words() {
        let compiler = CtrlCompiler::new(b, c, u, f.offset())?;
        tokens.push(Token::group(compiler.block_word(pi)?, 1));
    }
    Ok(GroupWord::new(tokens))
}

/// The auxiliary word `f_k` of the compiler for the cylinder `[u]_m`: it
/// swaps data symbols 1 and 2 at cell `i` depending on cell `i + k`.
pub fn aux_flip_word(b: usize, c: usize, u: &[Symbol], m: i64, k: i64, a: Symbol) -> Result<GroupWord> {
    if c < 3 || b < 2 {
        return Err(Error::AlphabetTooSmall("need |B| >= 2 and |C| >= 3".into()));
    }
    Ok(CtrlCompiler::new(b, c, u, m)?.aux_flip(k, a))
}

/// Builds words acting on the data block under one cylinder `[u]_m`.
pub(crate) struct CtrlCompiler {
    b: usize,
    c: usize,
    u: Vec<Symbol>,
    m: i64,
    alphabet: Alphabet,
}

impl CtrlCompiler {
    pub(crate) fn new(b: usize, c: usize, u: &[Symbol], m: i64) -> Result<CtrlCompiler> {
        Ok(CtrlCompiler { b, c, u: u.to_vec(), m, alphabet: two_track(b, c)? })
    }

    fn sym_perm(&self, f: impl Fn(Symbol, Symbol) -> (Symbol, Symbol)) -> Token {
        let p = perm_from_fn(&self.alphabet, |t| {
            let (x, y) = f(t[0], t[1]);
            vec![x, y]
        })
        .expect("cellwise bijection");
        Token::perm(p)
    }

    /// `ctrl{g}{[u]}` acting on the data cell `cell` of the block.
    fn cell_ctrl(&self, g: &Permutation, cell: usize) -> Result<GroupWord> {
        let f = ClopenSet::cylinder(Alphabet::new(self.b)?, self.m - cell as i64, self.u.clone())?;
        even_ctrl(self.b, g, &f)
    }

    /// `f_k`: flips `(1 2)` at `y_i` iff `y_{i+k} = 0` (even `|B|`), or iff
    /// `y_{i+k} = 0` or `x_{i+k} = a` (odd `|B|`).
    pub(crate) fn aux_flip(&self, k: i64, a: Symbol) -> GroupWord {
        let b = self.b as Symbol;
        let even = self.b % 2 == 0;
        let flip = |y: Symbol| match y {
            1 => 2,
            2 => 1,
            y => y,
        };
        let p_x = self.sym_perm(|x, y| {
            let hit = if even { x % 2 == 0 } else { x == a };
            (x, if hit { flip(y) } else { y })
        });
        let q = self.sym_perm(|x, y| {
            if y != 0 {
                (x, y)
            } else if even {
                (x ^ 1, y)
            } else {
                ((x + 1) % b, y)
            }
        });
        let round = GroupWord::new(vec![Token::shift(1, -k), p_x, Token::shift(1, k), q]);
        let exp = if even { 2 } else { self.b as i64 };
        round.pow(exp)
    }

    /// `ctrl{(00; 10; 20)}` on data cells `(0, 1)` of the block when
    /// `forward`, or `ctrl{(00; 01; 02)}` when not.
    pub(crate) fn base_gate(&self, forward: bool) -> Result<GroupWord> {
        let (k, cell) = if forward { (1i64, 0usize) } else { (-1, 1) };
        let u_ref = (cell as i64 + k) as usize;
        let a = (0..self.b as Symbol).find(|&s| s != self.u[u_ref]).expect("two control symbols");
        let fk = self.aux_flip(k, a);
        let rot = Permutation::from_cycles(self.c, &[vec![0, 1, 2]])?;
        let r = self.cell_ctrl(&rot, cell)?.boxed(1);
        let r_inv = r.inverse();
        let x = GroupWord::commutator(&fk, &r).pow(2);
        let y = x.conj(&r_inv);
        let w = y.then_after(&x).pow(2);
        Ok(w)
    }

    /// A word for `ctrl{π}{[u]_m}` on the whole block.
    pub(crate) fn block_word(&self, pi: &Permutation) -> Result<GroupWord> {
        let n = self.u.len();
        if n == 1 {
            return self.cell_ctrl(pi, 0);
        }
        let gates = decompose_even(self.c, n, pi)?;
        let pair = PairGates::new(self)?;
        let mut cache: HashMap<(usize, Permutation), GroupWord> = HashMap::new();
        let mut tokens = Vec::new();
        // gates are in application order; words list the last map first
        for (pos, g) in gates.gates.iter().rev() {
            let key = (*pos, g.clone());
            if !cache.contains_key(&key) {
                let w = shift_data(pair.gate(g)?, *pos as i64).boxed(1);
                cache.insert(key.clone(), w);
            }
            tokens.extend(cache[&key].tokens.iter().cloned());
        }
        Ok(GroupWord::new(tokens))
    }
}

/// `σ_2^{-j} ∘ w ∘ σ_2^{j}`: moves an action on data cell `i` of the block
/// to data cell `i + j`, leaving the control in place.
fn shift_data(w: GroupWord, j: i64) -> GroupWord {
    if j == 0 {
        return w;
    }
    GroupWord::new(vec![Token::shift(2, -j), Token::group(w, 1), Token::shift(2, j)])
}

/// Words for even permutations of the first two data cells of the block.
struct PairGates {
    c: usize,
    edges: Vec<[u32; 3]>,
    words: Vec<GroupWord>,
}

impl PairGates {
    fn new(cc: &CtrlCompiler) -> Result<PairGates> {
        let c = cc.c;
        let gens = (2..c as u32).map(|i| Permutation::from_cycles(c, &[vec![0, 1, i]])).collect::<Result<Vec<_>>>()?;
        let alt = crate::permgroup::closure(c, &gens, usize::MAX)?;
        let bases = [(cc.base_gate(true)?.boxed(1), true), (cc.base_gate(false)?.boxed(1), false)];
        let mut edges = Vec::new();
        let mut words = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let cu = c as u32;
        for (base, forward) in &bases {
            for r0 in &alt {
                for r1 in &alt {
                    // the relabelling ρ0 × ρ1 carries the base cycle to this one
                    let pt = |v: u32, fixed: u32| -> u32 {
                        if *forward {
                            r0.apply(v) * cu + r1.apply(fixed)
                        } else {
                            r0.apply(fixed) * cu + r1.apply(v)
                        }
                    };
                    let e = [pt(0, 0), pt(1, 0), pt(2, 0)];
                    let min = *e.iter().min().unwrap();
                    let rot = e.iter().position(|&v| v == min).unwrap();
                    let key = [e[rot], e[(rot + 1) % 3], e[(rot + 2) % 3]];
                    if !seen.insert(key) {
                        continue;
                    }
                    let mut tau = GroupWord::empty();
                    if !r0.is_identity() {
                        tau = tau.then_after(&cc.cell_ctrl(r0, 0)?);
                    }
                    if !r1.is_identity() {
                        tau = tau.then_after(&cc.cell_ctrl(r1, 1)?);
                    }
                    // τ ∘ base ∘ τ⁻¹ moves e0 → e1 → e2
                    let w = if tau.is_empty() { base.clone() } else { base.conj(&tau.inverse()) };
                    edges.push(e);
                    words.push(w.boxed(1));
                }
            }
        }
        Ok(PairGates { c, edges, words })
    }

    fn gate(&self, g: &Permutation) -> Result<GroupWord> {
        let steps = alt_word_from_3cycles(self.c * self.c, &self.edges, g)?;
        let mut tokens = Vec::new();
        for (e, inv) in steps.iter().rev() {
            let w = if *inv { self.words[*e].inverse() } else { self.words[*e].clone() };
            tokens.extend(w.tokens);
        }
        Ok(GroupWord::new(tokens))
    }
}
