use std::collections::VecDeque;

use super::{compose, de_bruijn, equal, table_size, window_indices, Ca, Rule, DEFAULT_BUDGET};
use crate::alphabet::Symbol;
use crate::error::{Error, Result};

pub const DEFAULT_INVERSE_RADIUS: usize = 16;

/// Largest pair graph (vertices times edge fan-out) we are willing to build.
const PAIR_GRAPH_LIMIT: u128 = 1 << 26;

/// Injectivity on `A^Z`, decided on the pair graph over `(w-1)`-blocks.
///
/// A vertex `(u, v)` has an edge to `(u', v')` when `u·a` and `v·b` have
/// the same image and `u' = (u·a)[1..]`, `v' = (v·b)[1..]`. Two distinct
/// configurations with the same image exist iff some off-diagonal vertex
/// lies on a bi-infinite path.
pub fn is_reversible(f: &Ca) -> Result<bool> {
    match &f.rule {
        Rule::Compose(a, b) => Ok(is_reversible(a)? && is_reversible(b)?),
        Rule::Native(r) => match r.inverse() {
            Some(_) => Ok(true),
            None => Err(Error::Invalid(format!("cannot decide reversibility of native rule {}", r.name()))),
        },
        Rule::Table(t) => table_is_reversible(f, t),
    }
}

fn table_is_reversible(f: &Ca, t: &[Symbol]) -> Result<bool> {
    let n = f.alphabet.size();
    let w = f.width();
    if w == 1 {
        let mut seen = vec![false; n];
        for &s in t {
            if std::mem::replace(&mut seen[s as usize], true) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let v = n.pow((w - 1) as u32);
    let cost = (v as u128) * (v as u128) * (n as u128) * (n as u128);
    if cost > PAIR_GRAPH_LIMIT {
        return Err(Error::BudgetExceeded { needed: cost, budget: PAIR_GRAPH_LIMIT as u64 });
    }
    let m = v * v;
    let mut succ: Vec<Vec<u32>> = vec![Vec::new(); m];
    let mut indeg = vec![0u32; m];
    for p in 0..v {
        for q in 0..v {
            for a in 0..n {
                let ia = p * n + a;
                for b in 0..n {
                    let ib = q * n + b;
                    if t[ia] == t[ib] {
                        let target = (ia % v) * v + (ib % v);
                        succ[p * v + q].push(target as u32);
                        indeg[target] += 1;
                    }
                }
            }
        }
    }
    let mut pred: Vec<Vec<u32>> = vec![Vec::new(); m];
    for (x, s) in succ.iter().enumerate() {
        for &y in s {
            pred[y as usize].push(x as u32);
        }
    }
    let outdeg: Vec<u32> = succ.iter().map(|s| s.len() as u32).collect();
    let forward = prune(&outdeg, &pred);
    let backward = prune(&indeg, &succ);
    Ok((0..m).all(|x| !(forward[x] && backward[x]) || x / v == x % v))
}

/// Repeatedly deletes vertices of zero degree; `towards` lists, for each
/// vertex, the vertices whose degree drops when it is deleted.
fn prune(degree: &[u32], towards: &[Vec<u32>]) -> Vec<bool> {
    let mut deg = degree.to_vec();
    let mut alive = vec![true; deg.len()];
    let mut queue: VecDeque<usize> = (0..deg.len()).filter(|&x| deg[x] == 0).collect();
    while let Some(x) = queue.pop_front() {
        if !alive[x] {
            continue;
        }
        alive[x] = false;
        for &y in &towards[x] {
            let y = y as usize;
            deg[y] -= 1;
            if deg[y] == 0 && alive[y] {
                queue.push_back(y);
            }
        }
    }
    alive
}

/// The inverse automaton, found by searching symmetric radii
/// `0..=max_radius` for a window size on which the image determines the
/// centre cell of the preimage.
pub fn invert(f: &Ca, max_radius: usize) -> Result<Ca> {
    let inv = match &f.rule {
        Rule::Compose(a, b) => return compose(&invert(b, max_radius)?, &invert(a, max_radius)?),
        Rule::Native(r) => return r.inverse().ok_or(Error::NotInvertible),
        Rule::Table(t) => {
            if !is_reversible(f)? {
                return Err(Error::NotReversible);
            }
            search_inverse(f, t, max_radius)?
        }
    };
    let id = Ca::identity(&f.alphabet);
    if !equal(&compose(&inv, f)?, &id, DEFAULT_BUDGET, 0)?.is_equal() {
        return Err(Error::Inconsistent("inverse search produced a non-inverse".into()));
    }
    Ok(inv)
}

fn search_inverse(f: &Ca, t: &[Symbol], max_radius: usize) -> Result<Ca> {
    let n = f.alphabet.size();
    let w = f.width();
    if w == 1 {
        let mut table = vec![0; n];
        for (a, &b) in t.iter().enumerate() {
            table[b as usize] = a as Symbol;
        }
        return Ca::from_table(f.alphabet.clone(), -f.lo, -f.lo, table);
    }
    'radius: for s in 0..=max_radius {
        let span = 2 * s + w;
        let image_size = table_size(n, 2 * s + 1)?;
        let input_size = table_size(n, span)?;
        if input_size > DEFAULT_BUDGET as u128 {
            return Err(Error::RadiusBoundExceeded(s));
        }
        let seq = de_bruijn(n, span);
        let out = f.eval_segment(&seq);
        let centre = s as i64 - f.lo;
        let mut map = vec![Symbol::MAX; image_size as usize];
        let images = window_indices(&out, n, 2 * s + 1);
        for (j, img) in images.enumerate() {
            let x0 = seq[j + centre as usize];
            match map[img] {
                Symbol::MAX => map[img] = x0,
                y if y == x0 => {}
                _ => continue 'radius,
            }
        }
        for slot in map.iter_mut().filter(|v| **v == Symbol::MAX) {
            *slot = 0;
        }
        let g = Ca::from_table(f.alphabet.clone(), -(s as i64), s as i64, map)?;
        return Ok(g.tabulated(DEFAULT_BUDGET)?.trimmed());
    }
    Err(Error::RadiusBoundExceeded(max_radius))
}
