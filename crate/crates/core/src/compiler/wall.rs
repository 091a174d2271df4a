//! Radius-one embedding into a larger alphabet `B² ⊔ C`: symbols of `C`
//! are walls that never change, and each stretch of `B²` cells between two
//! walls is a conveyor belt, top track read rightwards and bottom track read
//! back leftwards, on which the embedded automaton acts.

use crate::alphabet::{Alphabet, Symbol};
use crate::ca::{invert, Ca, DEFAULT_INVERSE_RADIUS};
use crate::error::{Error, Result};

/// Embeds `f` (biradius at most 1 on `k` symbols) into the radius-one
/// automata on `target = k² + m` symbols, `m ≥ 1`. Symbol `t·k + s` of
/// `B²` has top `t` and bottom `s`; symbols `k²..target` are walls.
pub fn wall_embed(f: &Ca, target: usize) -> Result<Ca> {
    let k = f.alphabet().size();
    if target <= k * k {
        return Err(Error::SizeMismatch { expected: k * k + 1, got: target });
    }
    let f_inv = invert(f, DEFAULT_INVERSE_RADIUS)?;
    let found = f.radius().max(f_inv.radius());
    if found > 1 {
        return Err(Error::BiradiusExceeded { found, bound: 1 });
    }
    let f3 = f.widened(-1, 1)?;
    let kk = (k * k) as Symbol;
    let ks = k as Symbol;
    Ca::from_fn(Alphabet::new(target)?, -1, 1, |w| {
        let (a, b, c) = (w[0], w[1], w[2]);
        if b >= kk {
            return b;
        }
        let (t, s) = (b / ks, b % ks);
        // belt neighbours: a wall folds the top track onto the bottom one
        let top_l = if a >= kk { s } else { a / ks };
        let top_r = if c >= kk { s } else { c / ks };
        let bot_prev = if c >= kk { t } else { c % ks };
        let bot_next = if a >= kk { t } else { a % ks };
        f3.local(&[top_l, t, top_r]) * ks + f3.local(&[bot_prev, s, bot_next])
    })
}
