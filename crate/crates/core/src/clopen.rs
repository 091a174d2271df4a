use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Symbol};
use crate::config::SupportedConfig;
use crate::error::{Error, Result};

/// A finite union of cylinders `[w]_offset` sharing one offset and width.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClopenSet {
    alphabet: Alphabet,
    offset: i64,
    width: usize,
    words: Vec<Vec<Symbol>>,
}

impl ClopenSet {
    pub fn new(alphabet: Alphabet, offset: i64, words: Vec<Vec<Symbol>>) -> Result<Self> {
        let width = words.first().map(Vec::len).ok_or_else(|| Error::DegenerateInput("clopen set needs a word".into()))?;
        if width == 0 {
            return Err(Error::DegenerateInput("cylinder words must be nonempty".into()));
        }
        let n = alphabet.size() as Symbol;
        for w in &words {
            if w.len() != width {
                return Err(Error::LengthMismatch { expected: width, got: w.len() });
            }
            if w.iter().any(|&s| s >= n) {
                return Err(Error::Invalid("cylinder symbol outside alphabet".into()));
            }
        }
        let words: BTreeSet<Vec<Symbol>> = words.into_iter().collect();
        Ok(ClopenSet { alphabet, offset, width, words: words.into_iter().collect() })
    }

    /// The single cylinder `[w]_offset`.
    pub fn cylinder(alphabet: Alphabet, offset: i64, w: Vec<Symbol>) -> Result<Self> {
        Self::new(alphabet, offset, vec![w])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    pub fn offset(&self) -> i64 {
        self.offset
    }
    pub fn width(&self) -> usize {
        self.width
    }
    pub fn words(&self) -> &[Vec<Symbol>] {
        &self.words
    }

    pub fn contains_word(&self, w: &[Symbol]) -> bool {
        self.words.binary_search_by(|v| v.as_slice().cmp(w)).is_ok()
    }

    pub fn contains(&self, x: &SupportedConfig) -> bool {
        self.contains_word(&x.window(self.offset, self.offset + self.width as i64))
    }

    /// The same set described on the window `[offset, offset + width)`,
    /// which must contain the current window.
    pub fn refine(&self, offset: i64, width: usize) -> Result<ClopenSet> {
        let pre = self.offset - offset;
        if pre < 0 || pre as usize + self.width > width {
            return Err(Error::Invalid("refinement window must contain the cylinder window".into()));
        }
        let pre = pre as usize;
        let post = width - pre - self.width;
        let n = self.alphabet.size();
        let free = pre + post;
        let count = (n as u128).pow(free as u32);
        if count > 1 << 24 {
            return Err(Error::BudgetExceeded { needed: count * self.words.len() as u128, budget: 1 << 24 });
        }
        let mut out = Vec::new();
        for w in &self.words {
            for idx in 0..count as u64 {
                let mut fill = vec![0; free];
                let mut v = idx;
                for slot in fill.iter_mut().rev() {
                    *slot = (v % n as u64) as Symbol;
                    v /= n as u64;
                }
                let mut word = fill[..pre].to_vec();
                word.extend_from_slice(w);
                word.extend_from_slice(&fill[pre..]);
                out.push(word);
            }
        }
        ClopenSet::new(self.alphabet.clone(), offset, out)
    }

    /// Union of two clopen sets, refined to a common window.
    pub fn union(&self, other: &ClopenSet) -> Result<ClopenSet> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch("clopen union".into()));
        }
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.width as i64).max(other.offset + other.width as i64);
        let width = (hi - lo) as usize;
        let mut words = self.refine(lo, width)?.words;
        words.extend(other.refine(lo, width)?.words);
        ClopenSet::new(self.alphabet.clone(), lo, words)
    }
}

/// `true` iff `F ∩ σ^d(F) = ∅` for every `d` in `1..m`.
///
/// A point lies in `σ^d(F)` iff its cells `[i-d, i-d+n)` spell a word of
/// `F`, so the intersection is nonempty iff two words of `F` agree on
/// their overlap at shift `d` (always the case once `d >= n`).
pub fn clopen_is_unbordered(f: &ClopenSet, m: usize) -> bool {
    let n = f.width;
    for d in 1..m {
        if d >= n {
            return false;
        }
        let overlap = f
            .words
            .iter()
            .any(|u| f.words.iter().any(|v| (0..n - d).all(|j| u[j] == v[j + d])));
        if overlap {
            return false;
        }
    }
    true
}
