//! Left and right stairs of a reversible automaton and the bijections
//! between stair pairs and words.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::alphabet::Symbol;
use crate::ca::{invert, Ca, DEFAULT_INVERSE_RADIUS};
use crate::error::{Error, Result};
use crate::gates::{rank, unrank};

/// Stairs of `f` and of its mirror image `f^T`, for a fixed radius `r`.
///
/// A left stair is a top word of length `2r` at `[0, 2r)` together with the
/// image word at `[r, 3r)` one time step later; a right stair has its image
/// word shifted left instead, at `[-r, r)` relative to the top.
#[derive(Debug, Clone, Serialize)]
pub struct StairData {
    #[serde(skip)]
    pub f: Ca,
    #[serde(skip)]
    pub f_inv: Ca,
    #[serde(skip)]
    f_bar: Ca,
    #[serde(skip)]
    f_bar_inv: Ca,
    pub c: usize,
    pub r: usize,
    pub left: Vec<Vec<Symbol>>,
    pub right: Vec<Vec<Symbol>>,
    pub left_bar: Vec<Vec<Symbol>>,
    pub right_bar: Vec<Vec<Symbol>>,
    #[serde(skip)]
    index: [HashMap<Vec<Symbol>, usize>; 4],
}

/// Computes the stairs of `f`; both `f` and `f⁻¹` must have radius `≤ r`.
pub fn stairs(f: &Ca, r: usize) -> Result<StairData> {
    if r == 0 {
        return Err(Error::DegenerateInput("stair radius must be positive".into()));
    }
    let f_inv = invert(f, DEFAULT_INVERSE_RADIUS.max(r))?;
    if f.radius() > r || f_inv.radius() > r {
        return Err(Error::BiradiusExceeded { found: f.radius().max(f_inv.radius()), bound: r });
    }
    let ri = r as i64;
    let f = f.widened(-ri, ri)?;
    let f_inv = f_inv.widened(-ri, ri)?;
    let f_bar = f.reverse_conjugate().widened(-ri, ri)?;
    let f_bar_inv = f_inv.reverse_conjugate().widened(-ri, ri)?;
    let c = f.alphabet().size();
    let mut sets: [BTreeSet<Vec<Symbol>>; 4] = Default::default();
    for i in 0..c.pow(4 * r as u32) {
        let x = unrank(i, c, 4 * r);
        for (slot, g) in [(0, &f), (2, &f_bar)] {
            // image at [r, 3r) of the segment [0, 4r)
            let img = g.eval_segment(&x);
            let mut left = x[..2 * r].to_vec();
            left.extend_from_slice(&img);
            sets[slot].insert(left);
            let mut right = x[2 * r..].to_vec();
            right.extend_from_slice(&img);
            sets[slot + 1].insert(right);
        }
    }
    let lists: Vec<Vec<Vec<Symbol>>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
    let index = std::array::from_fn(|k| lists[k].iter().enumerate().map(|(i, w)| (w.clone(), i)).collect());
    let [left, right, left_bar, right_bar]: [Vec<Vec<Symbol>>; 4] = lists.try_into().expect("four lists");
    let data = StairData { f, f_inv, f_bar, f_bar_inv, c, r, left, right, left_bar, right_bar, index };
    let total = c.pow(6 * r as u32);
    if data.left.len() * data.right.len() != total || data.left.len() * data.left_bar.len() != total {
        return Err(Error::Inconsistent(format!(
            "stair counts {} x {} (mirror {}) do not multiply to {total}",
            data.left.len(),
            data.right.len(),
            data.left_bar.len()
        )));
    }
    Ok(data)
}

impl StairData {
    fn stair(&self, g: &Ca, z: &[Symbol], left: bool) -> Vec<Symbol> {
        let r = self.r;
        assert_eq!(z.len(), 6 * r, "stair words have length 6r");
        if left {
            let mut out = z[..2 * r].to_vec();
            out.extend(g.eval_segment(&z[..4 * r]));
            out
        } else {
            let mut out = z[4 * r..].to_vec();
            out.extend(g.eval_segment(&z[2 * r..]));
            out
        }
    }

    /// `γ_L(z)`: top `z_{[0,2r)}` and image `f(z)_{[r,3r)}`.
    pub fn gamma_l(&self, z: &[Symbol]) -> Vec<Symbol> {
        self.stair(&self.f, z, true)
    }

    /// `γ_R(z)`: top `z_{[4r,6r)}` and image `f(z)_{[3r,5r)}`.
    pub fn gamma_r(&self, z: &[Symbol]) -> Vec<Symbol> {
        self.stair(&self.f, z, false)
    }

    pub fn gamma_bar_l(&self, z: &[Symbol]) -> Vec<Symbol> {
        self.stair(&self.f_bar, z, true)
    }

    pub fn gamma_bar_r(&self, z: &[Symbol]) -> Vec<Symbol> {
        self.stair(&self.f_bar, z, false)
    }

    fn pair(&self, a: usize, b: usize, s: &[Symbol], t: &[Symbol]) -> Vec<Symbol> {
        let i = self.index[a][s];
        let j = self.index[b][t];
        unrank(i * self.index[b].len() + j, self.c, 6 * self.r)
    }

    fn unpair(&self, a: usize, b: usize, z: &[Symbol]) -> (Vec<Symbol>, Vec<Symbol>) {
        let k = rank(z, self.c);
        let lists = [&self.left, &self.right, &self.left_bar, &self.right_bar];
        let nb = lists[b].len();
        (lists[a][k / nb].clone(), lists[b][k % nb].clone())
    }

    /// `α_L: L × L̄ → C^{6r}`, pairing rank-lexicographic indices.
    pub fn alpha_l(&self, l: &[Symbol], lbar: &[Symbol]) -> Vec<Symbol> {
        self.pair(0, 2, l, lbar)
    }

    pub fn alpha_r(&self, r: &[Symbol], rbar: &[Symbol]) -> Vec<Symbol> {
        self.pair(1, 3, r, rbar)
    }

    pub fn alpha_l_inv(&self, z: &[Symbol]) -> (Vec<Symbol>, Vec<Symbol>) {
        self.unpair(0, 2, z)
    }

    pub fn alpha_r_inv(&self, z: &[Symbol]) -> (Vec<Symbol>, Vec<Symbol>) {
        self.unpair(1, 3, z)
    }

    /// `f` (or `f^T` when `bar`), or its inverse, on a segment: the output
    /// drops `r` cells at each end.
    pub(crate) fn run(&self, bar: bool, inverse: bool, seg: &[Symbol]) -> Vec<Symbol> {
        let g = match (bar, inverse) {
            (false, false) => &self.f,
            (false, true) => &self.f_inv,
            (true, false) => &self.f_bar,
            (true, true) => &self.f_bar_inv,
        };
        g.eval_segment(seg)
    }

    /// [`StairData::join`] for the mirrored automaton.
    pub fn join_bar(&self, l: &[Symbol], rr: &[Symbol]) -> Vec<Symbol> {
        let r = self.r;
        let mut img = l[2 * r..].to_vec();
        img.extend_from_slice(&rr[2 * r..]);
        let mut z = l[..2 * r].to_vec();
        z.extend(self.run(true, true, &img));
        z.extend_from_slice(&rr[..2 * r]);
        z
    }

    /// Recovers `z` from its left and right stairs, using `f⁻¹` on the
    /// known image `f(z)_{[r,5r)}`.
    pub fn join(&self, l: &[Symbol], rr: &[Symbol]) -> Vec<Symbol> {
        let r = self.r;
        let mut img = l[2 * r..].to_vec();
        img.extend_from_slice(&rr[2 * r..]);
        let middle = self.f_inv.eval_segment(&img);
        let mut z = l[..2 * r].to_vec();
        z.extend(middle);
        z.extend_from_slice(&rr[..2 * r]);
        z
    }

    /// Stair ranks as JSON: the word lists, in rank order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}
