//! The conveyor embedding rewritten as a sequence of controlled block
//! permutations: regroup into stairs, join stairs across neighbouring
//! blocks, fix the two ends of each run, and put the halves back in place.

use std::sync::Arc;

use crate::alphabet::{Alphabet, Symbol};
use crate::ca::{compose, Ca};
use crate::clopen::ClopenSet;
use crate::control::{BlockMap, ControlledPerm};
use crate::error::{Error, Result};

use super::conveyor::EmbeddingSpec;
use super::stairs::{stairs, StairData};

/// One controlled rewrite: `map` applied to the `n` data cells starting at
/// each position where the control track lies in `clopen`.
#[derive(Debug, Clone)]
pub struct Stage {
    pub label: &'static str,
    pub clopen: ClopenSet,
    pub n: usize,
    pub map: BlockMap,
}

impl Stage {
    pub fn to_controlled(&self, c: usize) -> Result<ControlledPerm> {
        ControlledPerm::new(c, self.clopen.clone(), self.n, self.map.clone())
    }

    /// Sign of the block permutation, by cycle counting over `C^n`.
    pub fn sign(&self, c: usize) -> i8 {
        self.map.sign(c, self.n)
    }
}

fn rev(w: &[Symbol]) -> Vec<Symbol> {
    w.iter().rev().copied().collect()
}

fn cat(parts: &[&[Symbol]]) -> Vec<Symbol> {
    parts.concat()
}

/// The maps of the stages, on words of the stated lengths.
struct Rewrites {
    sd: StairData,
}

impl Rewrites {
    fn r(&self) -> usize {
        self.sd.r
    }

    /// `u v ↦ α_L(γ_L u, γ̄_L v) α_R(γ_R u, γ̄_R v)` on `12r` cells.
    fn regroup(&self, uv: &[Symbol]) -> (Vec<Symbol>, Vec<Symbol>) {
        let s = 6 * self.r();
        let (u, v) = uv.split_at(s);
        let sd = &self.sd;
        (sd.alpha_l(&sd.gamma_l(u), &sd.gamma_bar_l(v)), sd.alpha_r(&sd.gamma_r(u), &sd.gamma_bar_r(v)))
    }

    fn ungroup(&self, al: &[Symbol], ar: &[Symbol]) -> Vec<Symbol> {
        let sd = &self.sd;
        let (l, lbar) = sd.alpha_l_inv(al);
        let (rr, rbar) = sd.alpha_r_inv(ar);
        cat(&[&sd.join(&l, &rr), &sd.join_bar(&lbar, &rbar)])
    }

    /// New cells `[3r, 6r)` of one segment and `[0, 3r)` of the next, from
    /// the right stair of the first and the left stair of the second.
    fn seam(&self, bar: bool, right: &[Symbol], left: &[Symbol]) -> Vec<Symbol> {
        let r = self.r();
        let tops = cat(&[&right[..2 * r], &left[..2 * r]]);
        let mid = self.sd.run(bar, false, &tops);
        cat(&[&right[2 * r..], &mid, &left[2 * r..]])
    }

    fn unseam(&self, bar: bool, new: &[Symbol]) -> (Vec<Symbol>, Vec<Symbol>) {
        let r = self.r();
        let tops = self.sd.run(bar, true, new);
        (cat(&[&tops[..2 * r], &new[..2 * r]]), cat(&[&tops[2 * r..], &new[4 * r..]]))
    }

    /// Stage 1 on `24r` cells.
    fn stage1(&self, w: &[Symbol]) -> Vec<Symbol> {
        let h = w.len() / 2;
        let (al, ar) = self.regroup(&w[..h]);
        let (al2, ar2) = self.regroup(&w[h..]);
        cat(&[&al, &al2, &ar, &ar2])
    }

    fn stage1_inv(&self, w: &[Symbol]) -> Vec<Symbol> {
        let s = w.len() / 4;
        let ch: Vec<&[Symbol]> = w.chunks(s).collect();
        cat(&[&self.ungroup(ch[0], ch[2]), &self.ungroup(ch[1], ch[3])])
    }

    /// Stage 2 on `24r` cells: `A_R A'_R · A_L A'_L` across a seam.
    fn stage2(&self, w: &[Symbol]) -> Vec<Symbol> {
        let s = w.len() / 4;
        let h = s / 2;
        let sd = &self.sd;
        let ch: Vec<&[Symbol]> = w.chunks(s).collect();
        let mut firsts: Vec<Vec<Symbol>> = Vec::new();
        let mut seconds: Vec<Vec<Symbol>> = Vec::new();
        for (ar, al) in [(ch[0], ch[2]), (ch[1], ch[3])] {
            let (ru, rv) = sd.alpha_r_inv(ar);
            let (lu, lv) = sd.alpha_l_inv(al);
            for (bar, rs, ls) in [(false, &ru, &lu), (true, &rv, &lv)] {
                let n = self.seam(bar, rs, ls);
                firsts.push(n[..h].to_vec());
                seconds.push(n[h..].to_vec());
            }
        }
        firsts.into_iter().chain(seconds).collect::<Vec<_>>().concat()
    }

    fn stage2_inv(&self, w: &[Symbol]) -> Vec<Symbol> {
        let h = w.len() / 8;
        let ch: Vec<&[Symbol]> = w.chunks(h).collect();
        let sd = &self.sd;
        let mut ars = Vec::new();
        let mut als = Vec::new();
        for k in [0, 2] {
            let (ru, lu) = self.unseam(false, &cat(&[ch[k], ch[k + 4]]));
            let (rv, lv) = self.unseam(true, &cat(&[ch[k + 1], ch[k + 5]]));
            ars.push(sd.alpha_r(&ru, &rv));
            als.push(sd.alpha_l(&lu, &lv));
        }
        cat(&[&ars[0], &ars[1], &als[0], &als[1]])
    }

    /// Left end of a run on `12r` cells.
    fn corner_left(&self, w: &[Symbol]) -> Vec<Symbol> {
        let r = self.r();
        let mut out = Vec::new();
        for a in w.chunks(6 * r) {
            let (lu, lv) = self.sd.alpha_l_inv(a);
            let tops = cat(&[&rev(&lv[..2 * r]), &lu[..2 * r]]);
            let m = self.sd.run(false, false, &tops);
            out.extend(cat(&[&m[r..], &lu[2 * r..]]));
            out.extend(cat(&[&rev(&m[..r]), &lv[2 * r..]]));
        }
        out
    }

    fn corner_left_inv(&self, w: &[Symbol]) -> Vec<Symbol> {
        let r = self.r();
        let mut out = Vec::new();
        for pq in w.chunks(6 * r) {
            let (p, q) = pq.split_at(3 * r);
            let tops = self.sd.run(false, true, &cat(&[&rev(q), p]));
            let lu = cat(&[&tops[2 * r..], &p[r..]]);
            let lv = cat(&[&rev(&tops[..2 * r]), &q[r..]]);
            out.extend(self.sd.alpha_l(&lu, &lv));
        }
        out
    }

    /// Right end of a run on `12r` cells.
    fn corner_right(&self, w: &[Symbol]) -> Vec<Symbol> {
        let r = self.r();
        let mut out = Vec::new();
        for a in w.chunks(6 * r) {
            let (ru, rv) = self.sd.alpha_r_inv(a);
            let tops = cat(&[&ru[..2 * r], &rev(&rv[..2 * r])]);
            let m = self.sd.run(false, false, &tops);
            out.extend(cat(&[&ru[2 * r..], &m[..r]]));
            out.extend(cat(&[&rv[2 * r..], &rev(&m[r..])]));
        }
        out
    }

    fn corner_right_inv(&self, w: &[Symbol]) -> Vec<Symbol> {
        let r = self.r();
        let mut out = Vec::new();
        for pq in w.chunks(6 * r) {
            let (p, q) = pq.split_at(3 * r);
            let tops = self.sd.run(false, true, &cat(&[p, &rev(q)]));
            let ru = cat(&[&tops[..2 * r], &p[..2 * r]]);
            let rv = cat(&[&rev(&tops[2 * r..]), &q[..2 * r]]);
            out.extend(self.sd.alpha_r(&ru, &rv));
        }
        out
    }
}

/// Chunk reorder for the last stage: halves `L·R` of each segment rejoined.
const FINAL_ORDER: [usize; 8] = [0, 4, 1, 5, 2, 6, 3, 7];

fn reorder(w: &[Symbol], order: &[usize]) -> Vec<Symbol> {
    let h = w.len() / order.len();
    order.iter().flat_map(|&k| w[k * h..(k + 1) * h].iter().copied()).collect()
}

fn unreorder(w: &[Symbol], order: &[usize]) -> Vec<Symbol> {
    let h = w.len() / order.len();
    let mut out = vec![0; w.len()];
    for (j, &k) in order.iter().enumerate() {
        out[k * h..(k + 1) * h].copy_from_slice(&w[j * h..(j + 1) * h]);
    }
    out
}

/// The stages realizing `conveyor_embed(f, spec)` for an `f` of biradius
/// `r = ℓ / 24`, in application order.
pub fn embed_as_controlled_stages(f: &Ca, spec: &EmbeddingSpec) -> Result<Vec<Stage>> {
    let l = spec.block_len();
    if l % 24 != 0 {
        return Err(Error::Invalid(format!("block length {l} is not a multiple of 24")));
    }
    let r = l / 24;
    let sd = stairs(f, r)?;
    let rw = Arc::new(Rewrites { sd });
    let ba = Alphabet::new(spec.b)?;
    let w = spec.marker.clone();
    let ww = [w.clone(), w.clone()].concat();
    let li = l as i64;
    let func = |fw: fn(&Rewrites, &[Symbol]) -> Vec<Symbol>, bw: fn(&Rewrites, &[Symbol]) -> Vec<Symbol>| {
        let (a, b) = (rw.clone(), rw.clone());
        BlockMap::Func { forward: Arc::new(move |x| fw(&a, x)), backward: Arc::new(move |x| bw(&b, x)) }
    };
    let cyl = |m: i64, u: &[Symbol]| ClopenSet::cylinder(ba.clone(), m, u.to_vec());
    let mut out = vec![
        Stage { label: "regroup", clopen: cyl(0, &w)?, n: l, map: func(Rewrites::stage1, Rewrites::stage1_inv) },
        Stage { label: "seam", clopen: cyl(-li / 2, &ww)?, n: l, map: func(Rewrites::stage2, Rewrites::stage2_inv) },
    ];
    // ends of runs: act under every marker, undo where the run continues
    let left = func(Rewrites::corner_left, Rewrites::corner_left_inv);
    out.push(Stage { label: "left end", clopen: cyl(0, &w)?, n: l / 2, map: left.clone() });
    out.push(Stage { label: "left end (undo inside runs)", clopen: cyl(-li, &ww)?, n: l / 2, map: left.inverse() });
    let right = func(Rewrites::corner_right, Rewrites::corner_right_inv);
    out.push(Stage { label: "right end", clopen: cyl(-li / 2, &w)?, n: l / 2, map: right.clone() });
    out.push(Stage { label: "right end (undo inside runs)", clopen: cyl(-li / 2, &ww)?, n: l / 2, map: right.inverse() });
    let order_f = |_: &Rewrites, x: &[Symbol]| reorder(x, &FINAL_ORDER);
    let order_b = |_: &Rewrites, x: &[Symbol]| unreorder(x, &FINAL_ORDER);
    out.push(Stage { label: "rejoin halves", clopen: cyl(0, &w)?, n: l, map: func(order_f, order_b) });
    Ok(out)
}

/// Composes the stages into one automaton (applied in list order).
pub fn stages_to_ca(stages: &[Stage], c: usize) -> Result<Ca> {
    let mut acc: Option<Ca> = None;
    for s in stages {
        let g = s.to_controlled(c)?.to_ca()?;
        acc = Some(match acc {
            None => g,
            Some(f) => compose(&g, &f)?,
        });
    }
    acc.ok_or_else(|| Error::DegenerateInput("no stages".into()))
}
