//! Small permutation-group algorithms: closures, commutator series,
//! straight-line programs and a randomized Schreier–Sims chain.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// All elements of `⟨gens⟩` on `n` points, by breadth-first search.
/// Fails once more than `limit` elements have been found.
pub fn closure(n: usize, gens: &[Permutation], limit: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                if seen.len() > limit {
                    return Err(Error::BudgetExceeded { needed: seen.len() as u128, budget: limit as u64 });
                }
                order.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(order)
}

/// Smallest subgroup containing `elements` and closed under conjugation by
/// `by`, returned as an element list.
fn normal_closure(n: usize, elements: Vec<Permutation>, by: &[Permutation], limit: usize) -> Result<Vec<Permutation>> {
    let mut gens: Vec<Permutation> = elements.into_iter().filter(|g| !g.is_identity()).collect();
    loop {
        let group = closure(n, &gens, limit)?;
        let set: HashSet<&Permutation> = group.iter().collect();
        let extra: Vec<Permutation> = gens
            .iter()
            .flat_map(|g| by.iter().map(move |h| g.conj(h)))
            .filter(|c| !set.contains(c))
            .collect();
        if extra.is_empty() {
            return Ok(group);
        }
        gens.extend(extra);
    }
}

/// `[G, H]` for `H` normal in `G`: the normal closure of the commutators of
/// generators.
pub fn commutator_subgroup(
    n: usize,
    g_gens: &[Permutation],
    h_gens: &[Permutation],
    limit: usize,
) -> Result<Vec<Permutation>> {
    let comms: Vec<Permutation> = g_gens
        .iter()
        .flat_map(|g| h_gens.iter().map(move |h| Permutation::commutator(g, h)))
        .collect();
    normal_closure(n, comms, g_gens, limit)
}

/// The limit of `G_0 = G`, `G_{k+1} = [G, G_k]`, as an element list.
pub fn hypocenter(n: usize, gens: &[Permutation], limit: usize) -> Result<Vec<Permutation>> {
    let mut current = closure(n, gens, limit)?;
    loop {
        let next = commutator_subgroup(n, gens, &current, limit)?;
        if next.len() == current.len() {
            return Ok(current);
        }
        current = next;
    }
}

/// Node of a straight-line program over numbered generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlpNode {
    Identity,
    Gen(usize),
    Inv(usize),
    /// `a ∘ b`: apply `b` first.
    Mul(usize, usize),
}

/// A shared arena of straight-line program nodes.
#[derive(Debug, Clone, Default)]
pub struct Slp {
    nodes: Vec<SlpNode>,
}

impl Slp {
    pub fn new() -> Self {
        Slp { nodes: vec![SlpNode::Identity] }
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn nodes(&self) -> &[SlpNode] {
        &self.nodes
    }

    fn push(&mut self, node: SlpNode) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn gen(&mut self, i: usize) -> usize {
        self.push(SlpNode::Gen(i))
    }

    pub fn inv(&mut self, a: usize) -> usize {
        match self.nodes[a] {
            SlpNode::Identity => a,
            SlpNode::Inv(b) => b,
            _ => self.push(SlpNode::Inv(a)),
        }
    }

    pub fn mul(&mut self, a: usize, b: usize) -> usize {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        self.push(SlpNode::Mul(a, b))
    }

    /// Evaluates `root` in any group given by `gens`, with memoization.
    pub fn eval<T: Clone, E>(
        &self,
        root: usize,
        gens: &[T],
        id: &T,
        mul: &mut impl FnMut(&T, &T) -> std::result::Result<T, E>,
        inv: &mut impl FnMut(&T) -> std::result::Result<T, E>,
    ) -> std::result::Result<T, E> {
        let mut memo: HashMap<usize, T> = HashMap::new();
        // iterative post-order to avoid deep recursion
        let mut stack = vec![(root, false)];
        while let Some((v, ready)) = stack.pop() {
            if memo.contains_key(&v) {
                continue;
            }
            let children: Vec<usize> = match self.nodes[v] {
                SlpNode::Identity | SlpNode::Gen(_) => vec![],
                SlpNode::Inv(a) => vec![a],
                SlpNode::Mul(a, b) => vec![a, b],
            };
            if !ready && children.iter().any(|c| !memo.contains_key(c)) {
                stack.push((v, true));
                stack.extend(children.into_iter().map(|c| (c, false)));
                continue;
            }
            let value = match self.nodes[v] {
                SlpNode::Identity => id.clone(),
                SlpNode::Gen(i) => gens[i].clone(),
                SlpNode::Inv(a) => inv(&memo[&a])?,
                SlpNode::Mul(a, b) => mul(&memo[&a], &memo[&b])?,
            };
            memo.insert(v, value);
        }
        Ok(memo.remove(&root).expect("root evaluated"))
    }

    pub fn eval_perm(&self, root: usize, gens: &[Permutation]) -> Permutation {
        let id = Permutation::identity(gens.first().map(|g| g.len()).unwrap_or(0));
        let r: std::result::Result<Permutation, ()> =
            self.eval(root, gens, &id, &mut |a, b| Ok(a.compose(b)), &mut |a| Ok(a.inverse()));
        r.unwrap()
    }

    /// Number of nodes reachable from `root`.
    pub fn size(&self, root: usize) -> usize {
        let mut seen = HashSet::new();
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                match self.nodes[v] {
                    SlpNode::Inv(a) => stack.push(a),
                    SlpNode::Mul(a, b) => stack.extend([a, b]),
                    _ => {}
                }
            }
        }
        seen.len()
    }
}

/// A permutation together with a program computing it.
#[derive(Debug, Clone)]
struct Tracked {
    perm: Permutation,
    slp: usize,
}

#[derive(Debug, Clone)]
struct Level {
    base: u32,
    gens: Vec<Tracked>,
    /// transversal element for each orbit point, mapping `base` to it
    orbit: HashMap<u32, Tracked>,
}

/// A base and strong generating set, with every transversal element
/// expressed as a straight-line program in the input generators.
#[derive(Debug, Clone)]
pub struct StabChain {
    n: usize,
    gens: Vec<Permutation>,
    levels: Vec<Level>,
    pub slp: Slp,
}

impl StabChain {
    /// Randomized Schreier–Sims. Stops once `stop_after` consecutive random
    /// elements sift through, or as soon as the order reaches `target_log_order`
    /// (natural log) when given.
    pub fn build(n: usize, gens: &[Permutation], seed: u64, stop_after: usize, target_log_order: Option<f64>) -> StabChain {
        let mut slp = Slp::new();
        let tracked: Vec<Tracked> =
            gens.iter().enumerate().map(|(i, g)| Tracked { perm: g.clone(), slp: slp.gen(i) }).collect();
        let mut chain = StabChain { n, gens: gens.to_vec(), levels: Vec::new(), slp };
        for g in &tracked {
            chain.add_residue(g.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // product replacement state
        let mut pool: Vec<Tracked> = tracked.clone();
        while pool.len() < 10 && !tracked.is_empty() {
            pool.push(tracked[pool.len() % tracked.len()].clone());
        }
        let mut acc = Tracked { perm: Permutation::identity(n), slp: 0 };
        if pool.is_empty() {
            return chain;
        }
        for _ in 0..50 {
            chain.replace_step(&mut rng, &mut pool, &mut acc);
        }
        let mut quiet = 0;
        while quiet < stop_after {
            if let Some(t) = target_log_order {
                if chain.log_order() > t - 0.5 {
                    break;
                }
            }
            chain.replace_step(&mut rng, &mut pool, &mut acc);
            let (residue, _) = chain.sift(&acc);
            if residue.perm.is_identity() {
                quiet += 1;
            } else {
                quiet = 0;
                chain.add_residue(residue);
            }
        }
        chain
    }

    fn replace_step(&mut self, rng: &mut ChaCha8Rng, pool: &mut [Tracked], acc: &mut Tracked) {
        let i = rng.gen_range(0..pool.len());
        let mut j = rng.gen_range(0..pool.len());
        while pool.len() > 1 && j == i {
            j = rng.gen_range(0..pool.len());
        }
        let (a, b) = (pool[i].clone(), pool[j].clone());
        let b = if rng.gen_bool(0.5) { b } else { Tracked { perm: b.perm.inverse(), slp: self.slp.inv(b.slp) } };
        let new = if rng.gen_bool(0.5) {
            Tracked { perm: a.perm.compose(&b.perm), slp: self.slp.mul(a.slp, b.slp) }
        } else {
            Tracked { perm: b.perm.compose(&a.perm), slp: self.slp.mul(b.slp, a.slp) }
        };
        pool[i] = new.clone();
        *acc = Tracked { perm: acc.perm.compose(&new.perm), slp: self.slp.mul(acc.slp, new.slp) };
    }

    /// Strips `g` through the chain: returns the residue and the level it
    /// stopped at.
    fn sift(&mut self, g: &Tracked) -> (Tracked, usize) {
        let mut g = g.clone();
        for (k, level) in self.levels.iter().enumerate() {
            let p = g.perm.apply(level.base);
            match level.orbit.get(&p) {
                None => return (g, k),
                Some(u) => {
                    let uinv = self.slp.inv(u.slp);
                    g = Tracked { perm: u.perm.inverse().compose(&g.perm), slp: self.slp.mul(uinv, g.slp) };
                }
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    fn add_residue(&mut self, h: Tracked) {
        if h.perm.is_identity() {
            return;
        }
        // h fixes the base points of the levels it passed; find its level
        let mut k = 0;
        while k < self.levels.len() && h.perm.apply(self.levels[k].base) == self.levels[k].base {
            k += 1;
        }
        if k == self.levels.len() {
            let moved = (0..self.n as u32).find(|&p| h.perm.apply(p) != p).expect("nontrivial");
            self.levels.push(Level { base: moved, gens: Vec::new(), orbit: HashMap::new() });
        }
        for j in 0..=k {
            self.levels[j].gens.push(h.clone());
            self.rebuild_orbit(j);
        }
    }

    fn rebuild_orbit(&mut self, j: usize) {
        let base = self.levels[j].base;
        let mut orbit: HashMap<u32, Tracked> = HashMap::new();
        orbit.insert(base, Tracked { perm: Permutation::identity(self.n), slp: 0 });
        let mut queue = VecDeque::from([base]);
        let gens = self.levels[j].gens.clone();
        while let Some(p) = queue.pop_front() {
            for s in &gens {
                let q = s.perm.apply(p);
                if !orbit.contains_key(&q) {
                    let u = &orbit[&p];
                    let t = Tracked { perm: s.perm.compose(&u.perm), slp: self.slp.mul(s.slp, u.slp) };
                    orbit.insert(q, t);
                    queue.push_back(q);
                }
            }
        }
        self.levels[j].orbit = orbit;
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn log_order(&self) -> f64 {
        self.levels.iter().map(|l| (l.orbit.len() as f64).ln()).sum()
    }

    /// `true` when the generated group is provably all of `Alt(n)`: every
    /// generator is even and the chain order exceeds half of `n!/2`.
    pub fn is_alternating(&self) -> bool {
        if self.n < 3 || !self.gens.iter().all(Permutation::is_even) {
            return false;
        }
        self.log_order() > log_half_factorial(self.n) - std::f64::consts::LN_2 + 1e-9
    }

    /// A program for `g` in the input generators, or `None` when `g` is not
    /// in the group.
    pub fn express(&mut self, g: &Permutation) -> Option<usize> {
        // sift g, accumulating the transversal programs
        let mut cur = g.clone();
        let mut prog = self.slp.identity();
        let mut factors = Vec::new();
        for level in &self.levels {
            let p = cur.apply(level.base);
            let u = level.orbit.get(&p)?;
            cur = u.perm.inverse().compose(&cur);
            factors.push(u.slp);
        }
        if !cur.is_identity() {
            return None;
        }
        // g = u_1 ∘ u_2 ∘ … ∘ u_k
        for &f in factors.iter().rev() {
            prog = self.slp.mul(f, prog);
        }
        Some(prog)
    }
}

/// `ln(n!/2)`.
pub fn log_half_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum::<f64>() - std::f64::consts::LN_2
}

/// A shortest expression of `target` as a product of elements of `gens`,
/// by breadth-first search over the generated group (small groups only).
/// Returns indices into `gens`, in composition order (last applied first).
pub fn shortest_product(n: usize, gens: &[Permutation], target: &Permutation, limit: usize) -> Result<Option<Vec<usize>>> {
    let id = Permutation::identity(n);
    if target == &id {
        return Ok(Some(Vec::new()));
    }
    let mut parent: HashMap<Permutation, (Permutation, usize)> = HashMap::new();
    let mut queue = VecDeque::from([id.clone()]);
    let mut seen: HashSet<Permutation> = HashSet::from([id]);
    while let Some(g) = queue.pop_front() {
        for (i, s) in gens.iter().enumerate() {
            // h = s ∘ g: s applied after g
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                if seen.len() > limit {
                    return Err(Error::BudgetExceeded { needed: seen.len() as u128, budget: limit as u64 });
                }
                parent.insert(h.clone(), (g.clone(), i));
                if &h == target {
                    let mut word = Vec::new();
                    let mut cur = h;
                    while let Some((prev, i)) = parent.get(&cur) {
                        word.push(*i);
                        cur = prev.clone();
                    }
                    // word lists the last-applied generator first
                    return Ok(Some(word));
                }
                queue.push_back(h);
            }
        }
    }
    Ok(None)
}
