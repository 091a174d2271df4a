use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{de_bruijn, table_size, Ca};
use crate::alphabet::Symbol;
use crate::config::SupportedConfig;
use crate::error::{Error, Result};
use crate::word::format_symbols;

pub const DEFAULT_SAMPLES: u64 = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub enum EqualityVerdict {
    ExactEqual,
    /// The two rules differ at cell 0 of any configuration that carries
    /// `witness` on cells `start ..`.
    ExactUnequal { witness: Vec<Symbol>, start: i64 },
    SampledEqual { samples: u64, seed: u64 },
    SampledUnequal { witness: SupportedConfig },
}

impl EqualityVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, EqualityVerdict::ExactEqual | EqualityVerdict::SampledEqual { .. })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, EqualityVerdict::ExactEqual | EqualityVerdict::ExactUnequal { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            EqualityVerdict::ExactEqual => "ExactEqual",
            EqualityVerdict::ExactUnequal { .. } => "ExactUnequal",
            EqualityVerdict::SampledEqual { .. } => "SampledEqual",
            EqualityVerdict::SampledUnequal { .. } => "SampledUnequal",
        }
    }

    pub fn to_json(&self, alphabet_size: usize) -> serde_json::Value {
        match self {
            EqualityVerdict::ExactEqual => json!({ "kind": self.name() }),
            EqualityVerdict::ExactUnequal { witness, start } => json!({
                "kind": self.name(),
                "witness": format_symbols(alphabet_size, witness),
                "start": start,
            }),
            EqualityVerdict::SampledEqual { samples, seed } => {
                json!({ "kind": self.name(), "samples": samples, "seed": seed })
            }
            EqualityVerdict::SampledUnequal { witness } => {
                json!({ "kind": self.name(), "witness": witness.to_string() })
            }
        }
    }
}

/// Decides `f = g`.
///
/// Exhaustive over all windows of the joint neighbourhood when that fits the
/// budget; otherwise exhaustive over the coordinates each output track can
/// depend on, when every such enumeration fits; otherwise sampled over
/// random periodic points.
pub fn equal(f: &Ca, g: &Ca, budget: u64, seed: u64) -> Result<EqualityVerdict> {
    if f.alphabet != g.alphabet {
        return Err(Error::AlphabetMismatch(format!("{} vs {}", f.alphabet, g.alphabet)));
    }
    let lo = f.lo.min(g.lo);
    let hi = f.hi.max(g.hi);
    let n = f.alphabet.size();
    let w = (hi - lo + 1) as usize;
    if table_size(n, w).map(|s| s <= budget as u128).unwrap_or(false) {
        return Ok(exhaustive(f, g, lo, hi));
    }
    if let Some(v) = by_dependencies(f, g, lo, hi, budget) {
        return Ok(v);
    }
    let r = lo.unsigned_abs().max(hi.unsigned_abs()) as usize;
    let alphabet = f.alphabet.clone();
    Ok(equal_sampled_with(f, g, DEFAULT_SAMPLES, seed, |rng| {
        let p = rng.gen_range(2 * r + 1..=2 * r + 17);
        let period: Vec<Symbol> = (0..p).map(|_| rng.gen_range(0..n as Symbol)).collect();
        SupportedConfig::new(alphabet.clone(), period.clone(), Vec::new(), period).unwrap()
    }))
}

/// Compares `f` and `g` on cells `[-2R, 2R]` of `samples` configurations
/// drawn by `gen` from a ChaCha stream seeded with `seed`.
pub fn equal_sampled_with(
    f: &Ca,
    g: &Ca,
    samples: u64,
    seed: u64,
    mut gen: impl FnMut(&mut ChaCha8Rng) -> SupportedConfig,
) -> EqualityVerdict {
    let r = f.radius().max(g.radius()) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = gen(&mut rng);
        if f.apply_window(&x, -2 * r, 2 * r + 1) != g.apply_window(&x, -2 * r, 2 * r + 1) {
            return EqualityVerdict::SampledUnequal { witness: x };
        }
    }
    EqualityVerdict::SampledEqual { samples, seed }
}

fn witness(window: &[Symbol], lo: i64, hi: i64) -> EqualityVerdict {
    let start = lo.min(0);
    let end = hi.max(0);
    let mut w = vec![0; (end - start + 1) as usize];
    for (k, &s) in window.iter().enumerate() {
        w[(lo - start) as usize + k] = s;
    }
    EqualityVerdict::ExactUnequal { witness: w, start }
}

fn exhaustive(f: &Ca, g: &Ca, lo: i64, hi: i64) -> EqualityVerdict {
    let n = f.alphabet.size();
    let w = (hi - lo + 1) as usize;
    let seq = de_bruijn(n, w);
    let len = seq.len() as i64;
    let run = |c: &Ca| c.eval_segment(&seq[(c.lo - lo) as usize..(len - (hi - c.hi)) as usize]);
    let (a, b) = (run(f), run(g));
    match a.iter().zip(&b).position(|(x, y)| x != y) {
        None => EqualityVerdict::ExactEqual,
        Some(j) => witness(&seq[j..j + w], lo, hi),
    }
}

fn by_dependencies(f: &Ca, g: &Ca, lo: i64, hi: i64, budget: u64) -> Option<EqualityVerdict> {
    let alphabet = &f.alphabet;
    let tracks = alphabet.tracks();
    let mut plans = Vec::new();
    for t in 0..tracks.len() {
        let coords: Vec<(i64, usize)> = f.deps[t].union(&g.deps[t]).copied().collect();
        let count = coords
            .iter()
            .try_fold(1u128, |acc, &(_, s)| acc.checked_mul(tracks[s] as u128))?;
        if count > budget as u128 {
            return None;
        }
        plans.push((t, coords, count as u64));
    }
    let w = (hi - lo + 1) as usize;
    for (t, coords, count) in plans {
        let mut window = vec![0 as Symbol; w];
        for idx in 0..count {
            let mut v = idx;
            for &(o, s) in coords.iter().rev() {
                let cell = (o - lo) as usize;
                let val = (v % tracks[s] as u64) as Symbol;
                v /= tracks[s] as u64;
                window[cell] = alphabet.with_track(window[cell], s, val);
            }
            let a = f.local(&window[(f.lo - lo) as usize..(f.hi - lo) as usize + 1]);
            let b = g.local(&window[(g.lo - lo) as usize..(g.hi - lo) as usize + 1]);
            if alphabet.track_of(a, t) != alphabet.track_of(b, t) {
                return Some(witness(&window, lo, hi));
            }
        }
    }
    Some(EqualityVerdict::ExactEqual)
}
