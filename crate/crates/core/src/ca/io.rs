use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{index_of, table_size, Ca, DEFAULT_BUDGET};
use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::word::{format_symbols, parse_symbols};

/// On-disk rule table: window words (in the literal word syntax) to symbols.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleFile {
    pub alphabet: usize,
    #[serde(default)]
    pub factors: Vec<usize>,
    pub interval: [i64; 2],
    pub table: BTreeMap<String, Symbol>,
}

impl RuleFile {
    pub fn from_ca(f: &Ca) -> Result<RuleFile> {
        let tab = f.tabulated(DEFAULT_BUDGET)?;
        let n = tab.alphabet.size();
        let w = tab.width();
        let t = tab.table().expect("tabulated");
        let mut window = vec![0 as Symbol; w];
        let mut table = BTreeMap::new();
        for &out in t.iter() {
            table.insert(format_symbols(n, &window), out);
            for slot in window.iter_mut().rev() {
                *slot += 1;
                if (*slot as usize) < n {
                    break;
                }
                *slot = 0;
            }
        }
        Ok(RuleFile {
            alphabet: n,
            factors: tab.alphabet.factors().to_vec(),
            interval: [tab.lo, tab.hi],
            table,
        })
    }

    pub fn to_ca(&self) -> Result<Ca> {
        let alphabet = Alphabet::with_factors(self.alphabet, &self.factors)?;
        let [lo, hi] = self.interval;
        if lo > hi {
            return Err(Error::Invalid(format!("empty interval [{lo}, {hi}]")));
        }
        let w = (hi - lo + 1) as usize;
        let size = table_size(self.alphabet, w)?;
        if size > DEFAULT_BUDGET as u128 {
            return Err(Error::BudgetExceeded { needed: size, budget: DEFAULT_BUDGET });
        }
        if self.table.len() as u128 != size {
            return Err(Error::SizeMismatch { expected: size as usize, got: self.table.len() });
        }
        let mut table = vec![Symbol::MAX; size as usize];
        for (word, &out) in &self.table {
            let symbols = parse_symbols(self.alphabet, word)?;
            if symbols.len() != w {
                return Err(Error::LengthMismatch { expected: w, got: symbols.len() });
            }
            table[index_of(&symbols, self.alphabet)] = out;
        }
        Ca::from_table(alphabet, lo, hi, table)
    }

    pub fn load(path: &Path) -> Result<Ca> {
        let text = std::fs::read_to_string(path)?;
        let mut v: serde_json::Value = serde_json::from_str(&text)?;
        // command-line reports carry the rule under a `rule` key
        if let Some(inner) = v.get_mut("rule").map(serde_json::Value::take) {
            v = inner;
        }
        let rf: RuleFile = serde_json::from_value(v)?;
        rf.to_ca()
    }

    pub fn save(f: &Ca, path: &Path) -> Result<()> {
        let rf = RuleFile::from_ca(f)?;
        std::fs::write(path, serde_json::to_string_pretty(&rf)?)?;
        Ok(())
    }
}
