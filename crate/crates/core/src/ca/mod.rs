//! Local-rule cellular automata with exact composition, equality and inversion.

mod debruijn;
mod equal;
mod invert;
mod io;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Symbol};
use crate::config::SupportedConfig;
use crate::error::{Error, Result};

pub use debruijn::{de_bruijn, window_indices};
pub use equal::{equal, equal_sampled_with, EqualityVerdict, DEFAULT_SAMPLES};
pub use invert::{invert, is_reversible, DEFAULT_INVERSE_RADIUS};
pub use io::RuleFile;

/// Largest rule table kept in memory (entries).
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Tables up to this size get their dependencies computed exactly.
const EXACT_DEPS_LIMIT: usize = 1 << 24;

/// Per output track, the `(cell offset, input track)` coordinates the
/// output may depend on. Always a sound over-approximation.
pub type Deps = Vec<BTreeSet<(i64, usize)>>;

/// A rule evaluated by user code instead of a table, for automata whose
/// neighbourhood is too wide to tabulate.
pub trait NativeRule: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    /// Maps a segment of `len` cells to the `len - (width - 1)` output cells
    /// whose windows fit in it.
    fn eval_segment(&self, input: &[Symbol]) -> Vec<Symbol>;

    fn deps(&self) -> Option<Deps> {
        None
    }

    fn inverse(&self) -> Option<Ca> {
        None
    }
}

#[derive(Debug, Clone)]
pub enum Rule {
    Table(Arc<[Symbol]>),
    /// `f ∘ g`, kept lazily because the combined table would not fit.
    Compose(Arc<Ca>, Arc<Ca>),
    Native(Arc<dyn NativeRule>),
}

/// A cellular automaton with neighbourhood `[lo, hi]`: `f(x)_i` depends on
/// `x_{i+lo} … x_{i+hi}`.
#[derive(Debug, Clone)]
pub struct Ca {
    alphabet: Alphabet,
    lo: i64,
    hi: i64,
    rule: Rule,
    deps: Arc<Deps>,
}

impl Ca {
    pub fn identity(alphabet: &Alphabet) -> Ca {
        let table: Vec<Symbol> = alphabet.symbols().collect();
        Ca::from_table_unchecked(alphabet.clone(), 0, 0, table)
    }

    /// Builds from an explicit table indexed by the window read as a
    /// mixed-radix number, leftmost cell most significant.
    pub fn from_table(alphabet: Alphabet, lo: i64, hi: i64, table: Vec<Symbol>) -> Result<Ca> {
        if lo > hi {
            return Err(Error::Invalid(format!("empty neighbourhood [{lo}, {hi}]")));
        }
        let needed = table_size(alphabet.size(), (hi - lo + 1) as usize)?;
        if table.len() as u128 != needed {
            return Err(Error::SizeMismatch { expected: needed as usize, got: table.len() });
        }
        if table.iter().any(|&s| !alphabet.contains(s)) {
            return Err(Error::Invalid("rule table output outside alphabet".into()));
        }
        Ok(Ca::from_table_unchecked(alphabet, lo, hi, table))
    }

    fn from_table_unchecked(alphabet: Alphabet, lo: i64, hi: i64, table: Vec<Symbol>) -> Ca {
        let deps = table_deps(&alphabet, lo, hi, &table);
        Ca { alphabet, lo, hi, rule: Rule::Table(table.into()), deps: Arc::new(deps) }
    }

    /// Tabulates a local rule given as a closure on windows.
    pub fn from_fn(alphabet: Alphabet, lo: i64, hi: i64, mut f: impl FnMut(&[Symbol]) -> Symbol) -> Result<Ca> {
        let w = (hi - lo + 1) as usize;
        let size = table_size(alphabet.size(), w)?;
        if size > DEFAULT_BUDGET as u128 {
            return Err(Error::BudgetExceeded { needed: size, budget: DEFAULT_BUDGET });
        }
        let n = alphabet.size();
        let mut window = vec![0 as Symbol; w];
        let mut table = Vec::with_capacity(size as usize);
        for _ in 0..size {
            table.push(f(&window));
            for slot in window.iter_mut().rev() {
                *slot += 1;
                if (*slot as usize) < n {
                    break;
                }
                *slot = 0;
            }
        }
        Ca::from_table(alphabet, lo, hi, table)
    }

    pub fn native(alphabet: Alphabet, lo: i64, hi: i64, rule: Arc<dyn NativeRule>) -> Ca {
        let deps = rule.deps().unwrap_or_else(|| full_deps(&alphabet, lo, hi));
        Ca { alphabet, lo, hi, rule: Rule::Native(rule), deps: Arc::new(deps) }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn interval(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    /// `max(|lo|, |hi|)`.
    pub fn radius(&self) -> usize {
        self.lo.unsigned_abs().max(self.hi.unsigned_abs()) as usize
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn deps(&self) -> &Deps {
        &self.deps
    }

    pub fn table(&self) -> Option<&[Symbol]> {
        match &self.rule {
            Rule::Table(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.rule, Rule::Table(_))
    }

    /// Local rule on one window of `width()` cells.
    pub fn local(&self, window: &[Symbol]) -> Symbol {
        debug_assert_eq!(window.len(), self.width());
        match &self.rule {
            Rule::Table(t) => t[index_of(window, self.alphabet.size())],
            _ => self.eval_segment(window)[0],
        }
    }

    /// Image of a finite segment: output `j` is the rule applied to
    /// `input[j .. j + width]`.
    pub fn eval_segment(&self, input: &[Symbol]) -> Vec<Symbol> {
        let w = self.width();
        if input.len() < w {
            return Vec::new();
        }
        match &self.rule {
            Rule::Table(t) => window_indices(input, self.alphabet.size(), w).map(|i| t[i]).collect(),
            Rule::Compose(f, g) => f.eval_segment(&g.eval_segment(input)),
            Rule::Native(r) => r.eval_segment(input),
        }
    }

    /// `f(x)` for an eventually periodic `x`.
    pub fn apply(&self, x: &SupportedConfig) -> Result<SupportedConfig> {
        if x.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch(format!("automaton over {}, configuration over {}", self.alphabet, x.alphabet())));
        }
        let lp = x.left().len() as i64;
        let rp = x.right().len() as i64;
        let start = x.offset() - self.hi.max(0);
        let end = x.center_end() - self.lo.min(0);
        let seg = x.window(start - lp + self.lo, end + rp + self.hi);
        let out = self.eval_segment(&seg);
        let c = (end - start) as usize;
        let (lp, rp) = (lp as usize, rp as usize);
        let y = SupportedConfig::with_offset(
            self.alphabet.clone(),
            out[..lp].to_vec(),
            out[lp..lp + c].to_vec(),
            out[lp + c..lp + c + rp].to_vec(),
            start,
        )?;
        Ok(y.normalized())
    }

    /// Cells `lo..hi` of `f(x)`.
    pub fn apply_window(&self, x: &SupportedConfig, lo: i64, hi: i64) -> Vec<Symbol> {
        self.eval_segment(&x.window(lo + self.lo, hi + self.hi))
    }

    /// Exactly the same map, tabulated over its neighbourhood.
    pub fn tabulated(&self, budget: u64) -> Result<Ca> {
        if self.is_tabulated() {
            return Ok(self.clone());
        }
        let n = self.alphabet.size();
        let w = self.width();
        let size = table_size(n, w)?;
        if size > budget as u128 {
            return Err(Error::BudgetExceeded { needed: size, budget });
        }
        let seq = de_bruijn(n, w);
        let out = self.eval_segment(&seq);
        let mut table = vec![0 as Symbol; size as usize];
        for (j, i) in window_indices(&seq, n, w).enumerate() {
            table[i] = out[j];
        }
        let deps = if table.len() <= EXACT_DEPS_LIMIT {
            table_deps(&self.alphabet, self.lo, self.hi, &table)
        } else {
            (*self.deps).clone()
        };
        Ok(Ca { alphabet: self.alphabet.clone(), lo: self.lo, hi: self.hi, rule: Rule::Table(table.into()), deps: Arc::new(deps) }
            .trimmed())
    }

    /// Shrinks a table to the hull of the cells it actually reads.
    fn trimmed(self) -> Ca {
        let Rule::Table(table) = &self.rule else { return self };
        let offs = self.deps.iter().flat_map(|d| d.iter().map(|&(o, _)| o));
        let (nlo, nhi) = match (offs.clone().min(), offs.max()) {
            (Some(a), Some(b)) => (a, b),
            _ => (self.lo, self.lo),
        };
        if (nlo, nhi) == (self.lo, self.hi) {
            return self;
        }
        let n = self.alphabet.size();
        let stride = n.pow((self.hi - nhi) as u32);
        let size = n.pow((nhi - nlo + 1) as u32);
        let new: Vec<Symbol> = (0..size).map(|i| table[i * stride]).collect();
        Ca { alphabet: self.alphabet, lo: nlo, hi: nhi, rule: Rule::Table(new.into()), deps: self.deps }
    }

    /// The same map with a wider neighbourhood, as a table.
    pub fn widened(&self, lo: i64, hi: i64) -> Result<Ca> {
        if lo > self.lo || hi < self.hi {
            return Err(Error::Invalid("widening must contain the neighbourhood".into()));
        }
        let a = (self.lo - lo) as usize;
        let inner = self.clone();
        let w = self.width();
        Ca::from_fn(self.alphabet.clone(), lo, hi, move |win| inner.local(&win[a..a + w]))
    }

    /// `f^T`: conjugation by the mirror map `x ↦ (x_{-i})_i`.
    pub fn reverse_conjugate(&self) -> Ca {
        match &self.rule {
            Rule::Table(t) => {
                let n = self.alphabet.size();
                let w = self.width();
                let mut window = vec![0 as Symbol; w];
                let table: Vec<Symbol> = (0..t.len())
                    .map(|i| {
                        let mut v = i;
                        for slot in window.iter_mut().rev() {
                            *slot = (v % n) as Symbol;
                            v /= n;
                        }
                        window.reverse();
                        t[index_of(&window, n)]
                    })
                    .collect();
                Ca::from_table_unchecked(self.alphabet.clone(), -self.hi, -self.lo, table)
            }
            Rule::Compose(f, g) => compose_lazy(&f.reverse_conjugate(), &g.reverse_conjugate()),
            Rule::Native(_) => {
                let inner = Arc::new(self.clone());
                Ca::native(self.alphabet.clone(), -self.hi, -self.lo, Arc::new(Mirrored(inner)))
            }
        }
    }
}

#[derive(Debug)]
struct Mirrored(Arc<Ca>);

impl NativeRule for Mirrored {
    fn name(&self) -> String {
        "mirror".into()
    }
    fn eval_segment(&self, input: &[Symbol]) -> Vec<Symbol> {
        let mut rev = input.to_vec();
        rev.reverse();
        let mut out = self.0.eval_segment(&rev);
        out.reverse();
        out
    }
    fn deps(&self) -> Option<Deps> {
        Some(self.0.deps.iter().map(|d| d.iter().map(|&(o, t)| (-o, t)).collect()).collect())
    }
}

impl fmt::Display for Ca {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.rule {
            Rule::Table(_) => "table".to_string(),
            Rule::Compose(..) => "composition".to_string(),
            Rule::Native(r) => r.name(),
        };
        write!(f, "CA over {} on [{}, {}] ({kind})", self.alphabet, self.lo, self.hi)
    }
}

/// `f ∘ g`, tabulated and trimmed when the table fits `DEFAULT_BUDGET`.
pub fn compose(f: &Ca, g: &Ca) -> Result<Ca> {
    compose_with_budget(f, g, DEFAULT_BUDGET)
}

pub fn compose_with_budget(f: &Ca, g: &Ca, budget: u64) -> Result<Ca> {
    if f.alphabet != g.alphabet {
        return Err(Error::AlphabetMismatch(format!("{} vs {}", f.alphabet, g.alphabet)));
    }
    let lazy = compose_lazy(f, g);
    let size = table_size(f.alphabet.size(), lazy.width()).unwrap_or(u128::MAX);
    if size <= budget as u128 {
        lazy.tabulated(budget)
    } else {
        Ok(lazy)
    }
}

/// Composes several automata right to left: `fs[0] ∘ fs[1] ∘ …`.
pub fn compose_all(alphabet: &Alphabet, fs: &[Ca]) -> Result<Ca> {
    let mut acc = Ca::identity(alphabet);
    for f in fs.iter().rev() {
        acc = compose(f, &acc)?;
    }
    Ok(acc)
}

fn compose_lazy(f: &Ca, g: &Ca) -> Ca {
    let mut deps: Deps = vec![BTreeSet::new(); f.deps.len()];
    for (t, dt) in f.deps.iter().enumerate() {
        for &(k, s) in dt {
            for &(k2, s2) in &g.deps[s] {
                deps[t].insert((k + k2, s2));
            }
        }
    }
    Ca {
        alphabet: f.alphabet.clone(),
        lo: f.lo + g.lo,
        hi: f.hi + g.hi,
        rule: Rule::Compose(Arc::new(f.clone()), Arc::new(g.clone())),
        deps: Arc::new(deps),
    }
}

pub(crate) fn table_size(n: usize, w: usize) -> Result<u128> {
    (n as u128).checked_pow(w as u32).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget: DEFAULT_BUDGET })
}

pub(crate) fn index_of(window: &[Symbol], n: usize) -> usize {
    window.iter().fold(0usize, |acc, &s| acc * n + s as usize)
}

fn full_deps(alphabet: &Alphabet, lo: i64, hi: i64) -> Deps {
    let k = alphabet.arity();
    let all: BTreeSet<(i64, usize)> = (lo..=hi).flat_map(|o| (0..k).map(move |t| (o, t))).collect();
    vec![all; k]
}

/// Exact dependencies of a table: coordinate `(c, s)` matters for output
/// track `t` iff bumping track `s` of cell `c` by one (cyclically) changes
/// track `t` of the output for some window. Cyclic bumps connect all values
/// of a coordinate, so this finds every dependency.
fn table_deps(alphabet: &Alphabet, lo: i64, hi: i64, table: &[Symbol]) -> Deps {
    if table.len() > EXACT_DEPS_LIMIT {
        return full_deps(alphabet, lo, hi);
    }
    let n = alphabet.size();
    let w = (hi - lo + 1) as usize;
    let tracks = alphabet.tracks();
    let k = tracks.len();
    let mut below = vec![1usize; k];
    for t in (0..k.saturating_sub(1)).rev() {
        below[t] = below[t + 1] * tracks[t + 1];
    }
    let mut deps: Deps = vec![BTreeSet::new(); k];
    for c in 0..w {
        let cell_stride = n.pow((w - 1 - c) as u32);
        for s in 0..k {
            let mut found = vec![false; k];
            for (i, &out) in table.iter().enumerate() {
                let sym = (i / cell_stride) % n;
                let v = (sym / below[s]) % tracks[s];
                let bumped_sym = sym - v * below[s] + ((v + 1) % tracks[s]) * below[s];
                let j = i - sym * cell_stride + bumped_sym * cell_stride;
                let other = table[j];
                if other != out {
                    for t in 0..k {
                        if !found[t] && (out as usize / below[t]) % tracks[t] != (other as usize / below[t]) % tracks[t] {
                            found[t] = true;
                        }
                    }
                    if found.iter().all(|&b| b) {
                        break;
                    }
                }
            }
            for t in 0..k {
                if found[t] {
                    deps[t].insert((lo + c as i64, s));
                }
            }
        }
    }
    deps
}

#[cfg(test)]
mod tests;
