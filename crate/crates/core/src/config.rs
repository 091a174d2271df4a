use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::word::{format_symbols, parse_symbols};

/// An eventually periodic configuration `^ω(left) center (right)^ω`.
///
/// `center[0]` sits at cell `offset`; the left period ends at cell
/// `offset - 1` and the right period starts right after the center.
#[derive(Debug, Clone)]
pub struct SupportedConfig {
    alphabet: Alphabet,
    left: Vec<Symbol>,
    center: Vec<Symbol>,
    right: Vec<Symbol>,
    offset: i64,
}

impl SupportedConfig {
    pub fn new(
        alphabet: Alphabet,
        left: Vec<Symbol>,
        center: Vec<Symbol>,
        right: Vec<Symbol>,
    ) -> Result<Self> {
        Self::with_offset(alphabet, left, center, right, 0)
    }

    pub fn with_offset(
        alphabet: Alphabet,
        left: Vec<Symbol>,
        center: Vec<Symbol>,
        right: Vec<Symbol>,
        offset: i64,
    ) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::DegenerateInput("tail periods must be nonempty".into()));
        }
        let n = alphabet.size() as Symbol;
        if left.iter().chain(&center).chain(&right).any(|&s| s >= n) {
            return Err(Error::Invalid("configuration symbol outside alphabet".into()));
        }
        Ok(SupportedConfig { alphabet, left, center, right, offset })
    }

    /// The constant configuration `s^Z`.
    pub fn constant(alphabet: Alphabet, s: Symbol) -> Result<Self> {
        Self::new(alphabet, vec![s], Vec::new(), vec![s])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    pub fn left(&self) -> &[Symbol] {
        &self.left
    }
    pub fn center(&self) -> &[Symbol] {
        &self.center
    }
    pub fn right(&self) -> &[Symbol] {
        &self.right
    }
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// First cell after the center.
    pub fn center_end(&self) -> i64 {
        self.offset + self.center.len() as i64
    }

    pub fn at(&self, i: i64) -> Symbol {
        let j = i - self.offset;
        let c = self.center.len() as i64;
        if j < 0 {
            let l = self.left.len() as i64;
            self.left[j.rem_euclid(l) as usize]
        } else if j < c {
            self.center[j as usize]
        } else {
            let r = self.right.len() as i64;
            self.right[(j - c).rem_euclid(r) as usize]
        }
    }

    /// Cells `lo..hi` (half-open).
    pub fn window(&self, lo: i64, hi: i64) -> Vec<Symbol> {
        (lo..hi).map(|i| self.at(i)).collect()
    }

    /// `σ^k(x)`, i.e. `σ^k(x)_i = x_{i+k}`.
    pub fn shifted(&self, k: i64) -> SupportedConfig {
        let mut out = self.clone();
        out.offset -= k;
        out
    }

    /// Applies a cellwise map to every symbol.
    pub fn map(&self, f: impl Fn(Symbol) -> Symbol) -> SupportedConfig {
        SupportedConfig {
            alphabet: self.alphabet.clone(),
            left: self.left.iter().map(|&s| f(s)).collect(),
            center: self.center.iter().map(|&s| f(s)).collect(),
            right: self.right.iter().map(|&s| f(s)).collect(),
            offset: self.offset,
        }
    }

    /// Canonical form: primitive tail periods, center trimmed as far as the
    /// tails can absorb it. Two configurations are equal iff their
    /// normalizations coincide field by field.
    pub fn normalized(&self) -> SupportedConfig {
        let mut left = primitive_root(&self.left);
        let mut right = primitive_root(&self.right);
        let mut center = self.center.clone();
        let mut offset = self.offset;
        // absorb from the right end of the center into the right tail
        while let Some(&last) = center.last() {
            if last == right[right.len() - 1] {
                center.pop();
                right.rotate_right(1);
            } else {
                break;
            }
        }
        let mut start = 0;
        while start < center.len() && center[start] == left[0] {
            start += 1;
            left.rotate_left(1);
        }
        center.drain(..start);
        offset += start as i64;
        if center.is_empty() {
            let same_tail = left.len() == right.len()
                && (0..right.len()).all(|k| left[k] == right[k]);
            if same_tail {
                // fully periodic: any boundary works, put it at cell 0
                let s = offset.rem_euclid(left.len() as i64) as usize;
                left.rotate_right(s);
                right.rotate_right(s);
                offset = 0;
            } else {
                while left[left.len() - 1] == right[right.len() - 1] {
                    left.rotate_right(1);
                    right.rotate_right(1);
                    offset -= 1;
                }
            }
        }
        SupportedConfig { alphabet: self.alphabet.clone(), left, center, right, offset }
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let (body, offset) = match text.rsplit_once('@') {
            Some((b, o)) => (
                b,
                o.trim().parse::<i64>().map_err(|e| Error::Parse(format!("bad origin offset: {e}")))?,
            ),
            None => (text, 0),
        };
        let parts: Vec<&str> = body.split('|').collect();
        if parts.len() != 3 {
            return Err(Error::Parse("configuration must have the form LEFT|CENTER|RIGHT".into()));
        }
        let n = alphabet.size();
        Self::with_offset(
            alphabet.clone(),
            parse_symbols(n, parts[0])?,
            parse_symbols(n, parts[1])?,
            parse_symbols(n, parts[2])?,
            offset,
        )
    }
}

impl std::fmt::Display for SupportedConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.alphabet.size();
        write!(
            f,
            "{}|{}|{}",
            format_symbols(n, &self.left),
            format_symbols(n, &self.center),
            format_symbols(n, &self.right)
        )?;
        if self.offset != 0 {
            write!(f, "@{}", self.offset)?;
        }
        Ok(())
    }
}

impl PartialEq for SupportedConfig {
    fn eq(&self, other: &Self) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        let lp = lcm(self.left.len(), other.left.len()) as i64;
        let rp = lcm(self.right.len(), other.right.len()) as i64;
        let lo = self.offset.min(other.offset) - lp;
        let hi = self.center_end().max(other.center_end()) + rp;
        (lo..hi).all(|i| self.at(i) == other.at(i))
    }
}

impl Eq for SupportedConfig {}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn primitive_root(p: &[Symbol]) -> Vec<Symbol> {
    let n = p.len();
    for d in 1..=n {
        if n % d == 0 && (d..n).all(|j| p[j] == p[j - d]) {
            return p[..d].to_vec();
        }
    }
    p.to_vec()
}
