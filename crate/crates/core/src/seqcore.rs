//! Words over `Σ_q`, run decomposition, the canonical extremal words and
//! lexicographic enumeration of word families.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::math::{binomial, checked_pow};

/// A finite word over the alphabet `{0, .., q-1}`.
///
/// Ordering is lexicographic on the symbols, which is the order every ball,
/// witness list and scan in this crate uses.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    symbols: Vec<u8>,
    q: u8,
}

impl Word {
    pub fn new(symbols: Vec<u8>, q: usize) -> Result<Self> {
        check_alphabet(q)?;
        if let Some(&s) = symbols.iter().find(|&&s| s as usize >= q) {
            return Err(Error::SymbolOutOfRange {
                symbol: s as usize,
                q,
            });
        }
        Ok(Word {
            symbols,
            q: q as u8,
        })
    }

    /// Parses a string of digit characters, e.g. `"11220"`.
    pub fn parse(text: &str, q: usize) -> Result<Self> {
        check_alphabet(q)?;
        if q > 10 {
            return Err(Error::OutOfRange(format!(
                "textual words support q <= 10, got q={q}"
            )));
        }
        let symbols = text
            .trim()
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or(Error::BadCharacter(c)))
            .collect::<Result<Vec<_>>>()?;
        Word::new(symbols, q)
    }

    /// The constant word `σ^len`.
    pub fn constant(q: usize, symbol: u8, len: usize) -> Result<Self> {
        Word::new(vec![symbol; len], q)
    }

    pub fn empty(q: usize) -> Result<Self> {
        Word::new(Vec::new(), q)
    }

    /// Builds a word from run symbols and run lengths. Adjacent runs must
    /// carry different symbols and every length must be positive.
    pub fn from_runs(q: usize, run_symbols: &[u8], lengths: &[usize]) -> Result<Self> {
        if run_symbols.len() != lengths.len() {
            return Err(Error::LengthMismatch {
                expected: run_symbols.len(),
                actual: lengths.len(),
            });
        }
        if lengths.contains(&0) {
            return Err(Error::OutOfRange("run lengths must be positive".into()));
        }
        if run_symbols.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::OutOfRange(
                "adjacent runs must use different symbols".into(),
            ));
        }
        let symbols = run_symbols
            .iter()
            .zip(lengths)
            .flat_map(|(&s, &l)| std::iter::repeat_n(s, l))
            .collect();
        Word::new(symbols, q)
    }

    pub(crate) fn from_raw(symbols: Vec<u8>, q: u8) -> Self {
        Word { symbols, q }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn q(&self) -> usize {
        self.q as usize
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of runs, `ρ(w)`; zero for the empty word.
    pub fn run_count(&self) -> usize {
        if self.symbols.is_empty() {
            0
        } else {
            1 + self.symbols.windows(2).filter(|w| w[0] != w[1]).count()
        }
    }

    /// Symbol of each run, left to right.
    pub fn run_symbols(&self) -> Vec<u8> {
        let mut out: Vec<u8> = Vec::new();
        for &s in &self.symbols {
            if out.last() != Some(&s) {
                out.push(s);
            }
        }
        out
    }

    /// `α ∘ w`.
    pub fn prepend(&self, alpha: u8) -> Result<Self> {
        let mut symbols = Vec::with_capacity(self.len() + 1);
        symbols.push(alpha);
        symbols.extend_from_slice(&self.symbols);
        Word::new(symbols, self.q())
    }

    /// The suffix starting at zero-based position `from`.
    pub fn suffix(&self, from: usize) -> Word {
        let from = from.min(self.len());
        Word::from_raw(self.symbols[from..].to_vec(), self.q)
    }

    /// Relabels every symbol `s` as `q-1-s`.
    pub fn complement(&self) -> Word {
        let top = self.q - 1;
        Word::from_raw(self.symbols.iter().map(|&s| top - s).collect(), self.q)
    }

    pub(crate) fn same_alphabet(&self, other: &Word) -> Result<()> {
        if self.q != other.q {
            return Err(Error::AlphabetMismatch {
                left: self.q(),
                right: other.q(),
            });
        }
        Ok(())
    }
}

pub(crate) fn check_alphabet(q: usize) -> Result<()> {
    if !(2..=255).contains(&q) {
        return Err(Error::AlphabetSize(q));
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            let c = char::from_digit(s as u32, 36).unwrap_or('?');
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\", q={})", self.q)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Run lengths `(r_1, .., r_R)` of a nonempty word, left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RunLengthProfile {
    lengths: Vec<usize>,
}

impl RunLengthProfile {
    pub fn new(lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::EmptyWord);
        }
        if lengths.contains(&0) {
            return Err(Error::OutOfRange("run lengths must be positive".into()));
        }
        Ok(RunLengthProfile { lengths })
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// `R`, the number of runs.
    pub fn runs(&self) -> usize {
        self.lengths.len()
    }

    /// One-based access `r_i`.
    pub fn run(&self, i: usize) -> usize {
        self.lengths[i - 1]
    }

    pub fn total(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Run lengths sorted descending; equal for words related by a
    /// permutation of their runs.
    pub fn sorted_desc(&self) -> Vec<usize> {
        let mut v = self.lengths.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

pub fn run_profile(w: &Word) -> Result<RunLengthProfile> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut lengths = Vec::with_capacity(w.run_count());
    let mut current = 1;
    for pair in w.symbols().windows(2) {
        if pair[0] == pair[1] {
            current += 1;
        } else {
            lengths.push(current);
            current = 1;
        }
    }
    lengths.push(current);
    Ok(RunLengthProfile { lengths })
}

/// The run indices `f_i` and `b_i` around each run boundary.
///
/// `f_i` (for `i` in `0..=R`) is the smallest run index in `[i+1, R]` whose
/// run is longer than one, defaulting to `R`; `b_i` is the largest such index
/// in `[1, i]`, defaulting to `1`. Indices are one-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunIndexBounds {
    forward: Vec<usize>,
    backward: Vec<usize>,
}

impl RunIndexBounds {
    pub fn forward(&self, i: usize) -> usize {
        self.forward[i]
    }

    pub fn backward(&self, i: usize) -> usize {
        self.backward[i]
    }

    pub fn runs(&self) -> usize {
        self.forward.len() - 1
    }
}

pub fn run_index_bounds(p: &RunLengthProfile) -> RunIndexBounds {
    let r = p.lengths();
    let big = r.len();
    let mut forward = vec![big; big + 1];
    let mut next_long = big;
    for i in (0..big).rev() {
        // run i+1 (one-based) is r[i]
        if r[i] > 1 {
            next_long = i + 1;
        }
        forward[i] = next_long;
    }
    let mut backward = vec![1; big + 1];
    let mut last_long = 1;
    for i in 1..=big {
        if r[i - 1] > 1 {
            last_long = i;
        }
        backward[i] = last_long;
    }
    RunIndexBounds { forward, backward }
}

/// Canonical run symbols: each run takes the cyclic successor of the
/// previous run's symbol, so binary words alternate and `q=3` gives `012..`.
fn canonical_run_symbols(q: usize, first_symbol: u8, runs: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(runs);
    let mut s = first_symbol;
    for _ in 0..runs {
        out.push(s);
        s = ((s as usize + 1) % q) as u8;
    }
    out
}

fn check_shape(q: usize, m: usize, runs: usize, first_symbol: u8) -> Result<()> {
    check_alphabet(q)?;
    if runs == 0 {
        return Err(Error::OutOfRange("run count must be at least 1".into()));
    }
    if runs > m {
        return Err(Error::TooManyRuns { runs, len: m });
    }
    if first_symbol as usize >= q {
        return Err(Error::SymbolOutOfRange {
            symbol: first_symbol as usize,
            q,
        });
    }
    Ok(())
}

/// Skewed word: `R-1` runs of length one and a single run of length
/// `m-R+1` at one-based position `long_run_position`.
pub fn skewed_word(
    q: usize,
    m: usize,
    runs: usize,
    first_symbol: u8,
    long_run_position: usize,
) -> Result<Word> {
    check_shape(q, m, runs, first_symbol)?;
    if !(1..=runs).contains(&long_run_position) {
        return Err(Error::OutOfRange(format!(
            "long run position {long_run_position} not in [1, {runs}]"
        )));
    }
    let mut lengths = vec![1; runs];
    lengths[long_run_position - 1] = m - runs + 1;
    Word::from_runs(q, &canonical_run_symbols(q, first_symbol, runs), &lengths)
}

/// Balanced word: `m mod R` runs of length `⌈m/R⌉` followed by the rest of
/// length `⌊m/R⌋`.
pub fn balanced_word(q: usize, m: usize, runs: usize, first_symbol: u8) -> Result<Word> {
    check_shape(q, m, runs, first_symbol)?;
    let lengths = balanced_lengths(m, runs);
    Word::from_runs(q, &canonical_run_symbols(q, first_symbol, runs), &lengths)
}

pub(crate) fn balanced_lengths(m: usize, runs: usize) -> Vec<usize> {
    let (base, extra) = (m / runs, m % runs);
    (0..runs)
        .map(|i| if i < extra { base + 1 } else { base })
        .collect()
}

/// `|Σ_{q,R}^m| = C(m-1, R-1) q (q-1)^(R-1)`.
pub fn count_words_with_runs(q: usize, m: usize, runs: usize) -> Result<u128> {
    if runs == 0 || runs > m {
        return Ok(0);
    }
    let c = binomial(m as u64 - 1, runs as u64 - 1)?;
    let labels = checked_pow(q as u64 - 1, runs as u64 - 1)?
        .checked_mul(q as u128)
        .ok_or(Error::Overflow("word count"))?;
    c.checked_mul(labels).ok_or(Error::Overflow("word count"))
}

/// All of `Σ_q^m` in lexicographic order.
pub fn enumerate_words(q: usize, m: usize, config: &Config) -> Result<Words> {
    check_alphabet(q)?;
    config.check_space(checked_pow(q as u64, m as u64)?)?;
    Ok(Words::new(q, m, None))
}

/// All words of `Σ_q^m` with exactly `runs` runs, lexicographic order.
/// Empty when `runs > m`.
pub fn enumerate_words_with_runs(q: usize, m: usize, runs: usize, config: &Config) -> Result<Words> {
    check_alphabet(q)?;
    config.check_space(count_words_with_runs(q, m, runs)?)?;
    Ok(Words::new(q, m, Some(runs)))
}

/// Streaming lexicographic odometer over words, optionally restricted to a
/// fixed number of runs.
#[derive(Debug, Clone)]
pub struct Words {
    q: u8,
    m: usize,
    target_runs: Option<usize>,
    current: Option<Vec<u8>>,
    started: bool,
}

impl Words {
    fn new(q: usize, m: usize, target_runs: Option<usize>) -> Self {
        Words {
            q: q as u8,
            m,
            target_runs,
            current: None,
            started: false,
        }
    }

    fn feasible(&self, runs_so_far: usize, remaining: usize) -> bool {
        match self.target_runs {
            None => true,
            Some(t) => runs_so_far <= t && runs_so_far + remaining >= t,
        }
    }

    /// Overwrites `buf[from..]` with the lexicographically smallest feasible
    /// completion of `buf[..from]`.
    fn fill_smallest(&self, buf: &mut [u8], from: usize, mut runs: usize) -> bool {
        for p in from..self.m {
            let remaining = self.m - p - 1;
            let mut placed = false;
            for a in 0..self.q {
                let r = if p == 0 || buf[p - 1] != a { runs + 1 } else { runs };
                if self.feasible(r, remaining) {
                    buf[p] = a;
                    runs = r;
                    placed = true;
                    break;
                }
            }
            if !placed {
                return false;
            }
        }
        true
    }

    fn first(&self) -> Option<Vec<u8>> {
        if self.m == 0 {
            return match self.target_runs {
                None | Some(0) => Some(Vec::new()),
                Some(_) => None,
            };
        }
        if self.target_runs == Some(0) {
            return None;
        }
        let mut buf = vec![0u8; self.m];
        self.fill_smallest(&mut buf, 0, 0).then_some(buf)
    }

    fn successor(&self, cur: &[u8]) -> Option<Vec<u8>> {
        let mut buf = cur.to_vec();
        // prefix_runs[p] = runs within buf[..p]
        let mut prefix_runs = vec![0usize; self.m + 1];
        for p in 0..self.m {
            prefix_runs[p + 1] = prefix_runs[p] + usize::from(p == 0 || buf[p - 1] != buf[p]);
        }
        for p in (0..self.m).rev() {
            for a in (buf[p] + 1)..self.q {
                let r = prefix_runs[p] + usize::from(p == 0 || buf[p - 1] != a);
                if !self.feasible(r, self.m - p - 1) {
                    continue;
                }
                buf[p] = a;
                if self.fill_smallest(&mut buf, p + 1, r) {
                    return Some(buf);
                }
            }
        }
        None
    }
}

impl Iterator for Words {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let next = if !self.started {
            self.started = true;
            self.first()
        } else {
            match &self.current {
                Some(cur) => self.successor(cur),
                None => None,
            }
        };
        self.current = next.clone();
        next.map(|s| Word::from_raw(s, self.q))
    }
}
