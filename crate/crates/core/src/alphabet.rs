use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u32;

/// A finite alphabet `0..size`, optionally factored into ordered tracks.
///
/// Factored symbols are mixed-radix tuples with track 1 most significant,
/// so on `2 x 3` the symbol `(1, 2)` is `1 * 3 + 2 = 5`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    size: usize,
    factors: Vec<usize>,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::DegenerateInput("alphabet size must be positive".into()));
        }
        Ok(Alphabet { size, factors: Vec::new() })
    }

    pub fn product(factors: &[usize]) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(|&f| f == 0) {
            return Err(Error::DegenerateInput("factors must be positive".into()));
        }
        let size = factors.iter().product();
        Ok(Alphabet { size, factors: factors.to_vec() })
    }

    /// Builds from a size and an optional factor list (empty = unfactored).
    pub fn with_factors(size: usize, factors: &[usize]) -> Result<Self> {
        if factors.is_empty() {
            return Alphabet::new(size);
        }
        let a = Alphabet::product(factors)?;
        if a.size != size {
            return Err(Error::SizeMismatch { expected: size, got: a.size });
        }
        Ok(a)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Track sizes; an unfactored alphabet is a single track.
    pub fn tracks(&self) -> Vec<usize> {
        if self.factors.is_empty() {
            vec![self.size]
        } else {
            self.factors.clone()
        }
    }

    pub fn arity(&self) -> usize {
        self.factors.len().max(1)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (s as usize) < self.size
    }

    pub fn encode(&self, tuple: &[Symbol]) -> Result<Symbol> {
        let tracks = self.tracks();
        if tuple.len() != tracks.len() {
            return Err(Error::LengthMismatch { expected: tracks.len(), got: tuple.len() });
        }
        let mut s = 0usize;
        for (&t, &n) in tuple.iter().zip(&tracks) {
            if t as usize >= n {
                return Err(Error::Invalid(format!("track symbol {t} out of range {n}")));
            }
            s = s * n + t as usize;
        }
        Ok(s as Symbol)
    }

    pub fn decode(&self, s: Symbol) -> Vec<Symbol> {
        let tracks = self.tracks();
        let mut out = vec![0; tracks.len()];
        let mut s = s as usize;
        for (slot, &n) in out.iter_mut().zip(&tracks).rev() {
            *slot = (s % n) as Symbol;
            s /= n;
        }
        out
    }

    /// Component of symbol `s` on track `t` (0-based).
    pub fn track_of(&self, s: Symbol, t: usize) -> Symbol {
        let tracks = self.tracks();
        let below: usize = tracks[t + 1..].iter().product();
        ((s as usize / below) % tracks[t]) as Symbol
    }

    /// Replaces track `t` of `s` by `v`.
    pub fn with_track(&self, s: Symbol, t: usize, v: Symbol) -> Symbol {
        let tracks = self.tracks();
        let below: usize = tracks[t + 1..].iter().product();
        let old = self.track_of(s, t) as usize;
        (s as usize - old * below + v as usize * below) as Symbol
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        0..self.size as Symbol
    }
}

impl std::fmt::Display for Alphabet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            write!(f, "{}", self.size)
        } else {
            let parts: Vec<String> = self.factors.iter().map(|n| n.to_string()).collect();
            write!(f, "{}", parts.join("x"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_first_factor_most_significant() {
        let a = Alphabet::product(&[2, 3]).unwrap();
        assert_eq!(a.encode(&[1, 2]).unwrap(), 5);
        assert_eq!(a.decode(4), vec![1, 1]);
        assert_eq!(a.track_of(5, 0), 1);
        assert_eq!(a.with_track(5, 1, 0), 3);
    }

    #[test]
    fn encode_decode_identity() {
        let a = Alphabet::product(&[2, 3, 2, 3]).unwrap();
        for s in a.symbols() {
            assert_eq!(a.encode(&a.decode(s)).unwrap(), s);
        }
    }

    #[test]
    fn rejects_bad_factors() {
        assert!(Alphabet::with_factors(6, &[2, 2]).is_err());
        assert!(Alphabet::new(0).is_err());
    }
}
