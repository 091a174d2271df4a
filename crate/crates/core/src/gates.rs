//! Reversible gate synthesis: even permutations of `A^n` as products of
//! even gates on adjacent cells.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Gates in application order: the first gate is applied first. Each gate
/// permutes the `window` cells starting at its position, reading the
/// window as a mixed-radix number with the leftmost cell most significant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateWord {
    pub k: usize,
    pub n: usize,
    pub window: usize,
    pub gates: Vec<(usize, Permutation)>,
}

impl GateWord {
    pub fn empty(k: usize, n: usize, window: usize) -> GateWord {
        GateWord { k, n, window, gates: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, pos: usize, g: Permutation) {
        self.gates.push((pos, g));
    }

    pub fn extend(&mut self, other: &GateWord) {
        self.gates.extend(other.gates.iter().cloned());
    }

    pub fn inverse(&self) -> GateWord {
        GateWord {
            gates: self.gates.iter().rev().map(|(p, g)| (*p, g.inverse())).collect(),
            ..self.clone()
        }
    }

    /// `self` conjugated by `h`: apply `h`, then `self`, then `h⁻¹`.
    pub fn conjugated_by(&self, h: &GateWord) -> GateWord {
        let mut out = h.clone();
        out.extend(self);
        out.extend(&h.inverse());
        out
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h` as maps: apply `h`, `g`, `h⁻¹`, `g⁻¹`.
    pub fn commutator(g: &GateWord, h: &GateWord) -> GateWord {
        let mut out = h.clone();
        out.extend(g);
        out.extend(&h.inverse());
        out.extend(&g.inverse());
        out
    }

    pub fn apply(&self, w: &[Symbol]) -> Result<Vec<Symbol>> {
        if w.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: w.len() });
        }
        let mut w = w.to_vec();
        for (p, g) in &self.gates {
            let cells = &mut w[*p..*p + self.window];
            let idx = cells.iter().fold(0u32, |acc, &s| acc * self.k as u32 + s);
            let mut v = g.apply(idx);
            for c in cells.iter_mut().rev() {
                *c = v % self.k as u32;
                v /= self.k as u32;
            }
        }
        Ok(w)
    }

    /// The permutation of `A^n` computed by the word.
    pub fn to_perm(&self) -> Permutation {
        let total = self.k.pow(self.n as u32);
        let images = (0..total)
            .map(|i| {
                let w = unrank(i, self.k, self.n);
                rank(&self.apply(&w).expect("length"), self.k) as u32
            })
            .collect();
        Permutation::from_images(images).expect("gates are bijective")
    }

    /// Merges runs of gates at the same position and drops identities.
    pub fn simplified(&self) -> GateWord {
        let mut out: Vec<(usize, Permutation)> = Vec::new();
        for (p, g) in &self.gates {
            match out.last_mut() {
                Some((q, h)) if q == p => {
                    *h = g.compose(h);
                    if h.is_identity() {
                        out.pop();
                    }
                }
                _ if g.is_identity() => {}
                _ => out.push((*p, g.clone())),
            }
        }
        GateWord { gates: out, ..self.clone() }
    }
}

pub(crate) fn rank(w: &[Symbol], k: usize) -> usize {
    w.iter().fold(0usize, |acc, &s| acc * k + s as usize)
}

pub(crate) fn unrank(mut i: usize, k: usize, n: usize) -> Vec<Symbol> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = (i % k) as Symbol;
        i /= k;
    }
    out
}

/// One step of a word over hyperedge 3-cycles: the edge index and whether
/// its inverse is meant. Steps are listed in application order.
pub type CycleStep = (usize, bool);

fn cycle_perm(nv: usize, e: &[u32; 3], inv: bool) -> Permutation {
    let c = if inv { vec![e[0], e[2], e[1]] } else { vec![e[0], e[1], e[2]] };
    Permutation::from_cycles(nv, &[c]).expect("distinct vertices")
}

/// Expresses an even permutation of `0..nv` as a product of the 3-cycles
/// `(e0 e1 e2)` of the hyperedges and their inverses.
///
/// Every 3-cycle is reached from the hyperedge cycles by repeated
/// conjugation with them (breadth first, so each conjugate has a short
/// word), and the target is then peeled into 3-cycles point by point.
pub fn alt_word_from_3cycles(nv: usize, edges: &[[u32; 3]], target: &Permutation) -> Result<Vec<CycleStep>> {
    if target.len() != nv {
        return Err(Error::SizeMismatch { expected: nv, got: target.len() });
    }
    if !target.is_even() {
        return Err(Error::NotEven);
    }
    check_connected(nv, edges)?;
    if target.is_identity() {
        return Ok(Vec::new());
    }
    for (i, e) in edges.iter().enumerate() {
        for inv in [false, true] {
            if &cycle_perm(nv, e, inv) == target {
                return Ok(vec![(i, inv)]);
            }
        }
    }
    let book = CycleBook::new(nv, edges);
    // peel: find 3-cycles c_1, …, c_m with c_m ∘ … ∘ c_1 ∘ target = id
    let mut cur = target.clone();
    let mut peeled: Vec<Permutation> = Vec::new();
    for i in 0..nv as u32 {
        let j = cur.apply(i);
        if j == i {
            continue;
        }
        let k = (i + 1..nv as u32).find(|&k| k != j).ok_or(Error::NotEven)?;
        // (j i k): j ↦ i, i ↦ k, k ↦ j
        let c = Permutation::from_cycles(nv, &[vec![j, i, k]])?;
        cur = c.compose(&cur);
        peeled.push(c);
    }
    debug_assert!(cur.is_identity());
    // target = c_1⁻¹ ∘ … ∘ c_m⁻¹, so c_m⁻¹ is applied first
    let mut steps = Vec::new();
    for c in peeled.iter().rev() {
        steps.extend(book.word(&c.inverse())?);
    }
    Ok(steps)
}

fn check_connected(nv: usize, edges: &[[u32; 3]]) -> Result<()> {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for e in edges {
        for w in [e[1], e[2]] {
            let (a, b) = (find(&mut parent, e[0] as usize), find(&mut parent, w as usize));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    if nv < 3 || (0..nv).any(|v| find(&mut parent, v) != root) {
        return Err(Error::NotWeaklyConnected);
    }
    Ok(())
}

/// Words for every 3-cycle, found by conjugating hyperedge cycles.
struct CycleBook {
    /// 3-cycle ↦ (parent 3-cycle index or none, conjugating step)
    index: HashMap<Permutation, usize>,
    entries: Vec<(Option<usize>, CycleStep)>,
}

impl CycleBook {
    fn new(nv: usize, edges: &[[u32; 3]]) -> CycleBook {
        let mut index = HashMap::new();
        let mut entries = Vec::new();
        let mut perms = Vec::new();
        let mut queue = VecDeque::new();
        let gens: Vec<(CycleStep, Permutation)> = edges
            .iter()
            .enumerate()
            .flat_map(|(i, e)| [false, true].map(|inv| ((i, inv), cycle_perm(nv, e, inv))))
            .collect();
        for (step, p) in &gens {
            if !index.contains_key(p) {
                index.insert(p.clone(), entries.len());
                entries.push((None, *step));
                perms.push(p.clone());
                queue.push_back(entries.len() - 1);
            }
        }
        while let Some(t) = queue.pop_front() {
            for (step, s) in &gens {
                // s⁻¹ ∘ t ∘ s
                let c = perms[t].conj(s);
                if !index.contains_key(&c) {
                    index.insert(c.clone(), entries.len());
                    entries.push((Some(t), *step));
                    perms.push(c);
                    queue.push_back(entries.len() - 1);
                }
            }
        }
        CycleBook { index, entries }
    }

    /// Application-order word for a 3-cycle.
    fn word(&self, c: &Permutation) -> Result<Vec<CycleStep>> {
        let mut id = *self.index.get(c).ok_or(Error::NotWeaklyConnected)?;
        // unwind: entry = s⁻¹ ∘ parent ∘ s, i.e. apply s, parent, s⁻¹
        let mut prefix = Vec::new();
        loop {
            match self.entries[id] {
                (None, step) => {
                    let mut out = prefix.clone();
                    out.push(step);
                    out.extend(prefix.iter().rev().map(|&(e, inv): &CycleStep| (e, !inv)));
                    return Ok(out);
                }
                (Some(parent), step) => {
                    prefix.push(step);
                    id = parent;
                }
            }
        }
    }
}

/// A gate permuting one cell by `rho` (identity on the neighbour), placed
/// in a width-`window` gate that contains cell `cell`.
fn single_cell_gate(k: usize, n: usize, window: usize, cell: usize, rho: &Permutation) -> (usize, Permutation) {
    let pos = cell.min(n - window);
    let off = cell - pos;
    let total = k.pow(window as u32);
    let images = (0..total)
        .map(|i| {
            let mut w = unrank(i, k, window);
            w[off] = rho.apply(w[off]);
            rank(&w, k) as u32
        })
        .collect();
    (pos, Permutation::from_images(images).expect("bijection"))
}

/// A gate on cells `[pos, pos + window)` given by a map of window words.
fn window_gate(k: usize, window: usize, pos: usize, f: impl Fn(&mut [Symbol])) -> (usize, Permutation) {
    let total = k.pow(window as u32);
    let images = (0..total)
        .map(|i| {
            let mut w = unrank(i, k, window);
            f(&mut w);
            rank(&w, k) as u32
        })
        .collect();
    (pos, Permutation::from_images(images).expect("bijection"))
}

/// `(0 1 2)` in coordinate `j` when all other coordinates are 0, as a word
/// of two-cell gates (`k >= 3`), by widening the control one cell at a time.
fn controlled_cycle(k: usize, n: usize, j: usize) -> Result<GateWord> {
    let c012 = Permutation::from_cycles(k, &[vec![0, 1, 2]])?;
    let mut cur = GateWord::empty(k, n, 2);
    let (p, g) = single_cell_gate(k, n, 2, j, &c012);
    cur.push(p, g);
    // sign of [(0 1 2), (0 1)] decides how the widened part is cancelled
    let comm = Permutation::commutator(&c012, &Permutation::transposition(k, 0, 1));
    let forward = comm == c012;
    debug_assert!(forward || comm == c012.inverse());
    for r in 0..n - 1 - j {
        let x = widen_step(k, n, j, r, true, &cur)?;
        cur = finish_widening(cur, x, forward);
    }
    for l in 0..j {
        let x = widen_step(k, n, j, l, false, &cur)?;
        cur = finish_widening(cur, x, forward);
    }
    Ok(cur.simplified())
}

fn finish_widening(cur: GateWord, x: GateWord, forward: bool) -> GateWord {
    // x applies the cycle (or its inverse) when the old control holds and
    // the new cell is nonzero; cancel it there
    let mut out = if forward { x.inverse() } else { x };
    out.extend(&cur);
    out
}

/// `[C_N, β^ψ]`, which applies `[(0 1 2), (0 1)]` at `j` exactly when the
/// current control holds and the next cell on the chosen side is nonzero.
fn widen_step(k: usize, n: usize, j: usize, dist: usize, right: bool, cur: &GateWord) -> Result<GateWord> {
    let mut beta = GateWord::empty(k, n, 2);
    let mut psi = GateWord::empty(k, n, 2);
    let pos_j = if right { j } else { j - 1 };
    let (jo, no) = if right { (0usize, 1usize) } else { (1, 0) };
    if dist == 0 {
        // the neighbour itself is the new cell: flip 0 ↔ 1 at j iff it is
        // nonzero, with a parity fix on cell values outside {0, 1, 2}
        beta.gates.push(window_gate(k, 2, pos_j, |w| {
            if w[no] != 0 && w[jo] <= 1 {
                w[jo] ^= 1;
            } else if k % 2 == 0 && w[jo] == 3 && w[no] <= 1 {
                w[no] ^= 1;
            }
        }));
    } else {
        // ψ: sweep π from the far end towards j, so that the neighbour ends
        // up as 1 iff the new cell is nonzero (when the cells between are 0)
        for d in (1..=dist).rev() {
            let near = if right { j + d } else { j - d };
            let pos = if right { near } else { near - 1 };
            psi.gates.push(window_gate(k, 2, pos, |w| {
                let (ni, fi) = (jo, no);
                let (a, b) = (w[ni], w[fi]);
                if a <= 1 && b != 0 {
                    w[ni] ^= 1;
                } else if k % 2 == 0 && a == 2 && b <= 1 {
                    w[fi] ^= 1;
                }
            }));
        }
        beta.gates.push(window_gate(k, 2, pos_j, |w| {
            if (w[no] == 1 || w[no] == 2) && w[jo] <= 1 {
                w[jo] ^= 1;
            }
        }));
    }
    let conj = beta.conjugated_by(&psi);
    Ok(GateWord::commutator(cur, &conj))
}

/// Decomposes an even permutation of `A^n` (`|A| >= 3`, `n >= 2`) into
/// even two-cell gates.
pub fn decompose_even(k: usize, n: usize, pi: &Permutation) -> Result<GateWord> {
    if k < 3 {
        return Err(Error::AlphabetTooSmall("two-cell gates need at least three symbols".into()));
    }
    if n < 2 {
        return Err(Error::DegenerateInput("need at least two cells".into()));
    }
    let total = k.pow(n as u32);
    if pi.len() != total {
        return Err(Error::SizeMismatch { expected: total, got: pi.len() });
    }
    if !pi.is_even() {
        return Err(Error::NotEven);
    }
    if pi.is_identity() {
        return Ok(GateWord::empty(k, n, 2));
    }
    if n == 2 {
        let mut w = GateWord::empty(k, n, 2);
        w.push(0, pi.clone());
        return Ok(w);
    }
    let mut edges = Vec::new();
    let mut realizations = Vec::new();
    let controlled: Vec<GateWord> = (0..n).map(|j| controlled_cycle(k, n, j)).collect::<Result<_>>()?;
    for j in 0..n {
        for ctx in 0..total {
            let w = unrank(ctx, k, n);
            if w[j] != 0 {
                continue;
            }
            for a in 2..k as Symbol {
                let pts: [u32; 3] = [0, 1, a].map(|v| {
                    let mut u = w.clone();
                    u[j] = v;
                    rank(&u, k) as u32
                });
                edges.push(pts);
                realizations.push((j, w.clone(), a));
            }
        }
    }
    let steps = alt_word_from_3cycles(total, &edges, pi)?;
    let mut out = GateWord::empty(k, n, 2);
    let mut cache: HashMap<usize, GateWord> = HashMap::new();
    for (e, inv) in steps {
        let word = cache.entry(e).or_insert_with(|| {
            let (j, ctx, a) = &realizations[e];
            let tau = relabeling(k, n, 2, *j, ctx, *a);
            controlled[*j].conjugated_by(&tau).simplified()
        });
        if inv {
            out.extend(&word.inverse());
        } else {
            out.extend(word);
        }
    }
    Ok(out.simplified())
}

/// Even single-cell relabelling sending `ctx` to 0 outside `j` and
/// `(0, 1, a)` to `(0, 1, 2)` at `j`.
fn relabeling(k: usize, n: usize, window: usize, j: usize, ctx: &[Symbol], a: Symbol) -> GateWord {
    let mut tau = GateWord::empty(k, n, window);
    for (cell, &v) in ctx.iter().enumerate() {
        let rho = if cell == j {
            if a == 2 {
                continue;
            }
            if k % 2 == 0 {
                Permutation::transposition(k, 2, a)
            } else {
                let x = (3..k as u32).find(|&x| x != a).expect("odd alphabet above 3 has a spare symbol");
                Permutation::from_cycles(k, &[vec![a, 2, x]]).unwrap()
            }
        } else {
            if v == 0 {
                continue;
            }
            if k % 2 == 0 {
                Permutation::transposition(k, 0, v)
            } else {
                let x = (1..k as u32).find(|&x| x != v).unwrap();
                Permutation::from_cycles(k, &[vec![v, 0, x]]).unwrap()
            }
        };
        let (p, g) = single_cell_gate(k, n, window, cell, &rho);
        tau.push(p, g);
    }
    tau
}

/// Decomposes an even permutation of `{0,1}^n` (`n >= 3`) into even gates
/// on windows of three adjacent bits.
pub fn decompose_even_binary(n: usize, pi: &Permutation) -> Result<GateWord> {
    if n < 3 {
        return Err(Error::DegenerateInput("binary gates need at least three cells".into()));
    }
    let total = 1usize << n;
    if pi.len() != total {
        return Err(Error::SizeMismatch { expected: total, got: pi.len() });
    }
    if !pi.is_even() {
        return Err(Error::NotEven);
    }
    let mut out = GateWord::empty(2, n, 3);
    if pi.is_identity() {
        return Ok(out);
    }
    if n == 3 {
        out.push(0, pi.clone());
        return Ok(out);
    }
    // hyperedges: two-bit blocks (i, i+1) in a fixed context, on the block
    // values {00, 01, 10} and {00, 01, 11}
    let mut edges = Vec::new();
    let mut realizations = Vec::new();
    for i in 0..n - 1 {
        for ctx in 0..total {
            let w = unrank(ctx, 2, n);
            if w[i] != 0 || w[i + 1] != 0 {
                continue;
            }
            for third in [2u32, 3] {
                let pts: [u32; 3] = [0u32, 1, third].map(|v| {
                    let mut u = w.clone();
                    u[i] = v >> 1;
                    u[i + 1] = v & 1;
                    rank(&u, 2) as u32
                });
                edges.push(pts);
                realizations.push((i, w.clone(), third));
            }
        }
    }
    let steps = alt_word_from_3cycles(total, &edges, pi)?;
    let controlled: Vec<GateWord> = (0..n - 1).map(|i| controlled_block_cycle(n, i)).collect::<Result<_>>()?;
    let mut cache: HashMap<usize, GateWord> = HashMap::new();
    for (e, inv) in steps {
        let word = cache.entry(e).or_insert_with(|| {
            let (i, ctx, third) = &realizations[e];
            let tau = binary_relabeling(n, *i, ctx, *third);
            controlled[*i].conjugated_by(&tau).simplified()
        });
        if inv {
            out.extend(&word.inverse());
        } else {
            out.extend(word);
        }
    }
    Ok(out.simplified())
}

/// Leftmost width-3 window containing cells `i` and `i + 1`.
fn block_window(n: usize, i: usize) -> usize {
    i.min(n - 3)
}

/// A width-3 gate acting on the block `(i, i+1)` by `rho` on block values.
fn block_gate(n: usize, i: usize, rho: &Permutation) -> (usize, Permutation) {
    let pos = block_window(n, i);
    let off = i - pos;
    window_gate(2, 3, pos, |w| {
        let v = rho.apply(w[off] * 2 + w[off + 1]);
        w[off] = v >> 1;
        w[off + 1] = v & 1;
    })
}

/// The 3-cycle `00 → 01 → 10` on bits `(i, i+1)` when every other bit is 0.
fn controlled_block_cycle(n: usize, i: usize) -> Result<GateWord> {
    let c = Permutation::from_cycles(4, &[vec![0, 1, 2]])?;
    let mut cur = GateWord::empty(2, n, 3);
    let (p, g) = block_gate(n, i, &c);
    cur.push(p, g);
    let s = Permutation::transposition(4, 0, 1);
    let comm = Permutation::commutator(&c, &s);
    // a block relabelling carrying comm onto c
    let rho = (0..256)
        .filter_map(|r| Permutation::from_images(unrank(r, 4, 4)).ok())
        .find(|r| comm.conj(r) == c)
        .ok_or_else(|| Error::Inconsistent("no block relabelling".into()))?;
    let mut rho_word = GateWord::empty(2, n, 3);
    let (p, g) = block_gate(n, i, &rho);
    rho_word.push(p, g);
    let mut news: Vec<(usize, bool)> = (i + 2..n).map(|k| (k, true)).collect();
    news.extend((0..i).rev().map(|k| (k, false)));
    for (new, right) in news {
        // flag cell next to the block; ψ xors the new bit into it along the
        // cells between, which are 0 whenever the old control holds
        let flag = if right { i + 2 } else { i - 1 };
        let mut psi = GateWord::empty(2, n, 3);
        if right {
            for m in (flag..new).rev() {
                let pos = m.min(n - 3);
                let off = m - pos;
                psi.gates.push(window_gate(2, 3, pos, |w| w[off] ^= w[off + 1]));
            }
        } else {
            for m in new + 1..=flag {
                let pos = (m - 1).min(n - 3);
                let off = m - pos;
                psi.gates.push(window_gate(2, 3, pos, |w| w[off] ^= w[off - 1]));
            }
        }
        // Y: swap block values 00 ↔ 01 iff the flag is 1; the flag flip on
        // block value 11 keeps the gate even and commutes with everything
        let mut y = GateWord::empty(2, n, 3);
        let pos = if right { i.min(n - 3) } else { i - 1 };
        let (bo, fo) = (i - pos, flag - pos);
        y.gates.push(window_gate(2, 3, pos, |w| {
            let block = w[bo] * 2 + w[bo + 1];
            if block <= 1 && w[fo] == 1 {
                w[bo + 1] ^= 1;
            } else if block == 3 {
                w[fo] ^= 1;
            }
        }));
        let x = GateWord::commutator(&cur, &y.conjugated_by(&psi)).conjugated_by(&rho_word.inverse());
        // x applies c where the old control holds and the new bit is 1
        let mut next = x.inverse();
        next.extend(&cur);
        cur = next;
    }
    Ok(cur.simplified())
}

fn binary_relabeling(n: usize, i: usize, ctx: &[Symbol], third: u32) -> GateWord {
    let mut tau = GateWord::empty(2, n, 3);
    let not = Permutation::transposition(2, 0, 1);
    for (cell, &v) in ctx.iter().enumerate() {
        if v == 1 {
            let (p, g) = single_cell_gate(2, n, 3, cell, &not);
            tau.push(p, g);
        }
    }
    if third == 3 {
        let (p, g) = block_gate(n, i, &Permutation::transposition(4, 2, 3));
        tau.push(p, g);
    }
    tau
}

/// Applies a gate word to a word of length `n`.
pub fn gate_word_apply(gw: &GateWord, w: &[Symbol]) -> Result<Vec<Symbol>> {
    gw.apply(w)
}

impl GateWord {
    /// `[[i, [image table]], …]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.gates.iter().map(|(p, g)| serde_json::json!([p, g.images()])).collect(),
        )
    }

    pub fn from_json(k: usize, n: usize, window: usize, v: &serde_json::Value) -> Result<GateWord> {
        let list: Vec<(usize, Vec<u32>)> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let size = k.pow(window as u32);
        let mut gw = GateWord::empty(k, n, window);
        for (p, images) in list {
            if p + window > n {
                return Err(Error::Invalid(format!("gate position {p} out of range")));
            }
            let g = Permutation::from_images(images)?;
            if g.len() != size {
                return Err(Error::SizeMismatch { expected: size, got: g.len() });
            }
            if !g.is_even() {
                return Err(Error::NotEven);
            }
            gw.push(p, g);
        }
        Ok(gw)
    }
}

/// The group generated by all even gates of width `window` on `n` cells,
/// enumerated by closure.
pub fn even_gate_closure(k: usize, n: usize, window: usize) -> Result<Vec<Permutation>> {
    let size = k.pow(window as u32);
    let gate_perms: Vec<Permutation> = (0..size)
        .flat_map(|a| (a + 1..size).map(move |b| (a, b)))
        .flat_map(|(a, b)| {
            (0..size).filter(move |&c| c != a && c != b).map(move |c| (a, b, c))
        })
        .filter_map(|(a, b, c)| Permutation::from_cycles(size, &[vec![a as u32, b as u32, c as u32]]).ok())
        .collect();
    let mut gens = Vec::new();
    for pos in 0..=n - window {
        for g in &gate_perms {
            let gw = GateWord { k, n, window, gates: vec![(pos, g.clone())] };
            gens.push(gw.to_perm());
        }
    }
    gens.sort();
    gens.dedup();
    let total = k.pow(n as u32);
    let limit = (1..=total).product::<usize>() / 2;
    crate::permgroup::closure(total, &gens, limit)
}

#[cfg(test)]
mod tests;
