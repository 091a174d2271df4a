//! The conveyor-belt embedding `f ↦ f̂` of automata on `C^Z` into
//! automata on `(B × C)^Z`.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Symbol;
use crate::ca::{invert, Ca, Deps, NativeRule, DEFAULT_INVERSE_RADIUS};
use crate::config::SupportedConfig;
use crate::control::two_track;
use crate::error::{Error, Result};
use crate::word::word_is_unbordered;

/// The marker word on the control track; its length `ℓ` is the block
/// length, split into four data segments of `ℓ / 4` cells.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingSpec {
    pub b: usize,
    pub marker: Vec<Symbol>,
}

impl EmbeddingSpec {
    pub fn new(b: usize, marker: Vec<Symbol>) -> Result<EmbeddingSpec> {
        let l = marker.len();
        if l == 0 || l % 4 != 0 {
            return Err(Error::Invalid(format!("marker length {l} is not a positive multiple of 4")));
        }
        if marker.iter().any(|&s| s as usize >= b) {
            return Err(Error::Invalid("marker symbol outside the control alphabet".into()));
        }
        if !word_is_unbordered(&marker, l)? {
            return Err(Error::NotUnbordered(l));
        }
        Ok(EmbeddingSpec { b, marker })
    }

    /// `1 0^{ℓ-1}` with `ℓ = 24 r`, the default for radius `r`.
    pub fn standard(b: usize, r: usize) -> Result<EmbeddingSpec> {
        let mut marker = vec![0; 24 * r];
        marker[0] = 1;
        EmbeddingSpec::new(b, marker)
    }

    pub fn block_len(&self) -> usize {
        self.marker.len()
    }

    pub fn segment_len(&self) -> usize {
        self.marker.len() / 4
    }

    /// A configuration with a few runs of the marker planted on a random
    /// background, so that sampled comparisons exercise the embedding.
    pub fn sample_config(&self, c: usize, rng: &mut ChaCha8Rng) -> SupportedConfig {
        let l = self.block_len() as i64;
        let alphabet = two_track(self.b, c).expect("two-track alphabet");
        let span = 8 * l;
        let mut xs: Vec<Symbol> = (0..span).map(|_| rng.gen_range(0..self.b as Symbol)).collect();
        let mut pos = rng.gen_range(0..l);
        while pos < span - l {
            let m = rng.gen_range(1..=4).min((span - pos) / l);
            for k in 0..m {
                for (j, &s) in self.marker.iter().enumerate() {
                    xs[(pos + k * l) as usize + j] = s;
                }
            }
            pos += m * l + rng.gen_range(1..2 * l);
        }
        let center: Vec<Symbol> =
            xs.iter().map(|&x| x * c as Symbol + rng.gen_range(0..c as Symbol)).collect();
        let tail = |rng: &mut ChaCha8Rng| vec![rng.gen_range(0..alphabet.size() as Symbol)];
        let (left, right) = (tail(rng), tail(rng));
        SupportedConfig::with_offset(alphabet, left, center, right, -span / 2).expect("symbols in range")
    }
}

/// `f̂`: under every maximal run `w^m` of the marker, the data words
/// `u_i v_i u'_i v'_i` are read as two conveyor belts
/// `u_1 ⋯ u_m v_m^T ⋯ v_1^T` (and the primed one), `f` is applied to each
/// belt as a periodic point, and the results are written back.
pub fn conveyor_embed(f: &Ca, spec: &EmbeddingSpec) -> Result<Ca> {
    let c = f.alphabet().size();
    let seg = spec.segment_len();
    if f.radius() > seg {
        return Err(Error::BiradiusExceeded { found: f.radius(), bound: seg });
    }
    let alphabet = two_track(spec.b, c)?;
    // the identity moves nothing on any belt
    if crate::ca::equal(f, &Ca::identity(f.alphabet()), crate::ca::DEFAULT_BUDGET, 0)? == crate::ca::EqualityVerdict::ExactEqual {
        return Ok(Ca::identity(&alphabet));
    }
    let reach = 2 * spec.block_len() as i64;
    let rule = ConveyorRule { f: f.clone(), spec: spec.clone(), c, reach };
    Ok(Ca::native(alphabet, -reach, reach, Arc::new(rule)))
}

#[derive(Debug)]
struct ConveyorRule {
    f: Ca,
    spec: EmbeddingSpec,
    c: usize,
    reach: i64,
}

/// A data cell of a belt: block index relative to the cell's own block,
/// top or bottom row, position in the segment.
#[derive(Clone, Copy, Debug, PartialEq)]
struct BeltCell {
    block: i64,
    top: bool,
    t: i64,
}

impl NativeRule for ConveyorRule {
    fn name(&self) -> String {
        format!("conveyor embedding of {}", self.f)
    }

    fn eval_segment(&self, input: &[Symbol]) -> Vec<Symbol> {
        let len = input.len() as i64;
        if len < 2 * self.reach + 1 {
            return Vec::new();
        }
        let c = self.c as Symbol;
        let l = self.spec.block_len() as i64;
        let seg = self.spec.segment_len() as i64;
        let xs: Vec<Symbol> = input.iter().map(|&s| s / c).collect();
        let ys: Vec<Symbol> = input.iter().map(|&s| s % c).collect();
        let occ: Vec<bool> = (0..len)
            .map(|p| p + l <= len && xs[p as usize..(p + l) as usize] == self.spec.marker[..])
            .collect();
        let (flo, fhi) = self.f.interval();
        let mut out = Vec::with_capacity((len - 2 * self.reach) as usize);
        for i in self.reach..len - self.reach {
            let Some(p) = (i - l + 1..=i).find(|&p| occ[p as usize]) else {
                out.push(input[i as usize]);
                continue;
            };
            let q = i - p;
            let (s, t) = (q / seg, q % seg);
            // primed belts sit two segments further right
            let base = p + if s >= 2 { 2 * seg } else { 0 };
            let exists = |block: i64| {
                let at = p + block * l;
                (0..len).contains(&at) && occ[at as usize]
            };
            let phys = |cell: BeltCell| -> Symbol {
                let off = base + cell.block * l + if cell.top { 0 } else { seg } + cell.t;
                ys[off as usize]
            };
            let me = BeltCell { block: 0, top: s % 2 == 0, t };
            let mut window = Vec::with_capacity((fhi - flo + 1) as usize);
            for d in flo..=fhi {
                window.push(phys(walk(me, d, seg, &exists)));
            }
            out.push(xs[i as usize] * c + self.f.local(&window));
        }
        out
    }

    fn deps(&self) -> Option<Deps> {
        let all = (-self.reach..=self.reach).flat_map(|k| [(k, 0), (k, 1)]).collect();
        Some(vec![[(0, 0)].into_iter().collect(), all])
    }

    fn inverse(&self) -> Option<Ca> {
        let g = invert(&self.f, DEFAULT_INVERSE_RADIUS).ok()?;
        conveyor_embed(&g, &self.spec).ok()
    }
}

/// Moves `d` steps along the belt direction (top row left to right, bottom
/// row right to left, turning at the ends of the run).
fn walk(mut cell: BeltCell, d: i64, seg: i64, exists: &impl Fn(i64) -> bool) -> BeltCell {
    let forward = d >= 0;
    for _ in 0..d.unsigned_abs() {
        cell = step(cell, forward, seg, exists);
    }
    cell
}

fn step(cell: BeltCell, forward: bool, seg: i64, exists: &impl Fn(i64) -> bool) -> BeltCell {
    let BeltCell { block, top, t } = cell;
    // moving right on the top row or left on the bottom row
    let rightward = forward == top;
    if rightward {
        if t + 1 < seg {
            return BeltCell { t: t + 1, ..cell };
        }
        if exists(block + 1) {
            return BeltCell { block: block + 1, t: 0, ..cell };
        }
        BeltCell { top: !top, ..cell }
    } else {
        if t > 0 {
            return BeltCell { t: t - 1, ..cell };
        }
        if exists(block - 1) {
            return BeltCell { block: block - 1, t: seg - 1, ..cell };
        }
        BeltCell { top: !top, ..cell }
    }
}
