use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// A finite word over an alphabet, 0-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn new(alphabet: Alphabet, symbols: Vec<Symbol>) -> Result<Self> {
        if let Some(&s) = symbols.iter().find(|&&s| !alphabet.contains(s)) {
            return Err(Error::Invalid(format!("symbol {s} not in alphabet of size {}", alphabet.size())));
        }
        Ok(Word { alphabet, symbols })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word { alphabet, symbols: Vec::new() }
    }

    /// Parses the literal syntax: a digit string when the alphabet has at
    /// most 10 symbols, comma-separated integers otherwise.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        Word::new(alphabet.clone(), parse_symbols(alphabet.size(), text)?)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn reversed(&self) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Word { alphabet: self.alphabet.clone(), symbols }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word { alphabet: self.alphabet.clone(), symbols }
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_symbols(self.alphabet.size(), &self.symbols))
    }
}

pub fn parse_symbols(size: usize, text: &str) -> Result<Vec<Symbol>> {
    let text = text.trim();
    if text.is_empty() || text == "ε" {
        return Ok(Vec::new());
    }
    let out: Result<Vec<Symbol>> = if size <= 10 && !text.contains(',') {
        text.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::Parse(format!("bad symbol character `{c}`")))
            })
            .collect()
    } else {
        text.split(',')
            .map(|t| t.trim().parse::<Symbol>().map_err(|e| Error::Parse(format!("bad symbol `{t}`: {e}"))))
            .collect()
    };
    let out = out?;
    if let Some(&s) = out.iter().find(|&&s| s as usize >= size) {
        return Err(Error::Parse(format!("symbol {s} out of range for alphabet of size {size}")));
    }
    Ok(out)
}

pub fn format_symbols(size: usize, symbols: &[Symbol]) -> String {
    if size <= 10 {
        symbols.iter().map(|s| char::from_digit(*s, 10).unwrap()).collect()
    } else {
        let parts: Vec<String> = symbols.iter().map(|s| s.to_string()).collect();
        parts.join(",")
    }
}

/// `true` iff `w` has no period `d` with `1 <= d <= m - 1`, i.e. `vw = wv'`
/// forces `|v| = 0` or `|v| >= m`. Periods `d >= |w|` always exist, so a
/// word is never `m`-unbordered for `m > |w|`.
pub fn word_is_unbordered(w: &[Symbol], m: usize) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::DegenerateInput("empty word".into()));
    }
    let n = w.len();
    for d in 1..m {
        if d >= n {
            return Ok(false);
        }
        if (d..n).all(|j| w[j] == w[j - d]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `1 0^(len-1)`.
pub fn canonical_unbordered(len: usize, alphabet: &Alphabet) -> Result<Word> {
    if len < 2 {
        return Err(Error::DegenerateInput("canonical unbordered word needs length >= 2".into()));
    }
    if alphabet.size() < 2 {
        return Err(Error::AlphabetTooSmall("need at least two symbols".into()));
    }
    let mut symbols = vec![0; len];
    symbols[0] = 1;
    Word::new(alphabet.clone(), symbols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unbordered_examples() {
        assert!(word_is_unbordered(&[1, 0], 2).unwrap());
        assert!(!word_is_unbordered(&[1, 1], 2).unwrap());
        assert!(word_is_unbordered(&[1], 1).unwrap());
        assert!(word_is_unbordered(&[], 1).is_err());
    }

    #[test]
    fn canonical_words() {
        let a = Alphabet::new(2).unwrap();
        assert_eq!(canonical_unbordered(2, &a).unwrap().to_string(), "10");
        assert_eq!(canonical_unbordered(5, &a).unwrap().to_string(), "10000");
        assert!(canonical_unbordered(1, &a).is_err());
        for len in 2..30 {
            let w = canonical_unbordered(len, &a).unwrap();
            assert!(word_is_unbordered(w.symbols(), len).unwrap());
        }
    }

    #[test]
    fn literal_syntax() {
        let small = Alphabet::new(3).unwrap();
        assert_eq!(Word::parse(&small, "0120").unwrap().symbols(), &[0, 1, 2, 0]);
        let big = Alphabet::new(12).unwrap();
        let w = Word::parse(&big, "11,0,3").unwrap();
        assert_eq!(w.symbols(), &[11, 0, 3]);
        assert_eq!(w.to_string(), "11,0,3");
        assert!(Word::parse(&small, "3").is_err());
    }
}
