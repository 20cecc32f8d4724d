//! Embedding numbers and weighted insertion/deletion balls, plus the
//! structural identities behind the 2-deletion analysis.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::math::{binomial, checked_pow};
use crate::seqcore::{run_index_bounds, run_profile, Word};

/// Channel direction: symbols are deleted from, or inserted into, the
/// transmitted word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Deletion,
    Insertion,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Deletion => "deletion",
            Direction::Insertion => "insertion",
        }
    }
}

/// `ω_y(x)`: the number of index sets `i_1 < .. < i_|y|` with `x_{i_j} = y_j`.
pub fn embedding_number(x: &Word, y: &Word) -> Result<u128> {
    x.same_alphabet(y)?;
    if y.len() > x.len() {
        return Err(Error::LengthOrder {
            sub: y.len(),
            sup: x.len(),
        });
    }
    count_embeddings(x.symbols(), y.symbols())
}

/// Standard subsequence-count DP; `table[j]` counts embeddings of `y[..j]`
/// in the prefix of `x` read so far.
pub(crate) fn count_embeddings(x: &[u8], y: &[u8]) -> Result<u128> {
    let mut table = vec![0u128; y.len() + 1];
    table[0] = 1;
    for (i, &c) in x.iter().enumerate() {
        // y[..j] cannot fit in fewer than j symbols
        let hi = y.len().min(i + 1);
        let lo = (y.len() + i + 1).saturating_sub(x.len()).max(1);
        for j in (lo..=hi).rev() {
            if y[j - 1] == c {
                table[j] = table[j]
                    .checked_add(table[j - 1])
                    .ok_or(Error::Overflow("embedding number"))?;
            }
        }
    }
    Ok(table[y.len()])
}

/// One step of the first-symbol recursion:
/// `ω_y(x) = ω_{y[2..]}(x[2..]) + ω_y(x[2..])` when `y_1 = x_1`, and
/// `ω_y(x[2..])` otherwise. Sub-terms use the DP.
pub fn first_symbol_recursion(x: &Word, y: &Word) -> Result<u128> {
    x.same_alphabet(y)?;
    if y.len() > x.len() {
        return Err(Error::LengthOrder {
            sub: y.len(),
            sup: x.len(),
        });
    }
    if y.is_empty() {
        return Ok(1);
    }
    let x_tail = x.suffix(1);
    let skip = if y.len() <= x_tail.len() {
        embedding_number(&x_tail, y)?
    } else {
        0
    };
    if x.symbols()[0] == y.symbols()[0] {
        let take = embedding_number(&x_tail, &y.suffix(1))?;
        take.checked_add(skip).ok_or(Error::Overflow("embedding number"))
    } else {
        Ok(skip)
    }
}

/// Both sides of the prepend identity
/// `ω_{α∘y}(α∘x) = ω_y(x) + Σ_{i=1}^{k} ω_y(x_{[i+1,n]}) · 1[α = x_i]`
/// with `k = |x| - |y|`. The left side is computed directly by the DP.
pub fn prepend_recursion_check(x: &Word, y: &Word, alpha: u8) -> Result<(u128, u128)> {
    x.same_alphabet(y)?;
    if y.len() > x.len() {
        return Err(Error::LengthOrder {
            sub: y.len(),
            sup: x.len(),
        });
    }
    let lhs = embedding_number(&x.prepend(alpha)?, &y.prepend(alpha)?)?;
    let k = x.len() - y.len();
    let mut rhs = embedding_number(x, y)?;
    for i in 1..=k {
        if x.symbols()[i - 1] == alpha {
            let term = embedding_number(&x.suffix(i), y)?;
            rhs = rhs.checked_add(term).ok_or(Error::Overflow("embedding number"))?;
        }
    }
    Ok((lhs, rhs))
}

/// An insertion or deletion ball with embedding-number multiplicities.
///
/// Entries are unique and sorted lexicographically by word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBall {
    center: Word,
    k: usize,
    direction: Direction,
    entries: Vec<(Word, u128)>,
}

impl WeightedBall {
    pub fn center(&self) -> &Word {
        &self.center
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn entries(&self) -> &[(Word, u128)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight_of(&self, word: &Word) -> Option<u128> {
        self.entries
            .binary_search_by(|(w, _)| w.cmp(word))
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn total_weight(&self) -> Result<u128> {
        self.entries.iter().try_fold(0u128, |acc, (_, w)| {
            acc.checked_add(*w).ok_or(Error::Overflow("ball weight"))
        })
    }

    /// The normalizer the weights must sum to: `C(n,k) q^k` with
    /// `n = |center| + k` for insertion balls, `C(|center|, k)` for deletion
    /// balls.
    pub fn expected_total(&self) -> Result<u128> {
        let n = self.center.len() as u64;
        let k = self.k as u64;
        match self.direction {
            Direction::Insertion => binomial(n + k, k)?
                .checked_mul(checked_pow(self.center.q() as u64, k)?)
                .ok_or(Error::Overflow("ball normalizer")),
            Direction::Deletion => binomial(n, k),
        }
    }

    /// Line-oriented `word<TAB>weight` text, one entry per line in
    /// lexicographic order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (w, weight) in &self.entries {
            let _ = writeln!(out, "{w}\t{weight}");
        }
        out
    }

    /// Parses the `word<TAB>weight` format back into entries.
    pub fn parse_entries(text: &str, q: usize) -> Result<Vec<(Word, u128)>> {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                let (word, weight) = line
                    .split_once('\t')
                    .ok_or_else(|| Error::OutOfRange(format!("malformed ball line {line:?}")))?;
                let weight = weight
                    .trim()
                    .parse::<u128>()
                    .map_err(|_| Error::OutOfRange(format!("malformed weight in {line:?}")))?;
                Ok((Word::parse(word, q)?, weight))
            })
            .collect()
    }
}

/// `|I_k(y)| = Σ_{i=0}^{k} C(n,i) (q-1)^i` with `n = |y| + k`.
pub fn insertion_ball_size(len: usize, k: usize, q: usize) -> Result<u128> {
    let n = (len + k) as u64;
    (0..=k as u64).try_fold(0u128, |acc, i| {
        let term = binomial(n, i)?
            .checked_mul(checked_pow(q as u64 - 1, i)?)
            .ok_or(Error::Overflow("ball size"))?;
        acc.checked_add(term).ok_or(Error::Overflow("ball size"))
    })
}

fn weigh(
    center: &Word,
    k: usize,
    direction: Direction,
    members: BTreeSet<Vec<u8>>,
) -> Result<WeightedBall> {
    let q = center.q() as u8;
    let entries = members
        .into_iter()
        .map(|s| {
            let weight = match direction {
                Direction::Insertion => count_embeddings(&s, center.symbols())?,
                Direction::Deletion => count_embeddings(center.symbols(), &s)?,
            };
            Ok((Word::from_raw(s, q), weight))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightedBall {
        center: center.clone(),
        k,
        direction,
        entries,
    })
}

/// `I_k(y)`: every distinct word obtained by inserting `k` symbols into `y`,
/// weighted by `ω_y(x)`.
pub fn insertion_ball(y: &Word, k: usize, config: &Config) -> Result<WeightedBall> {
    config.check_ball(insertion_ball_size(y.len(), k, y.q())?)?;
    let q = y.q() as u8;
    let mut level: BTreeSet<Vec<u8>> = BTreeSet::new();
    level.insert(y.symbols().to_vec());
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for s in &level {
            for pos in 0..=s.len() {
                for a in 0..q {
                    let mut t = Vec::with_capacity(s.len() + 1);
                    t.extend_from_slice(&s[..pos]);
                    t.push(a);
                    t.extend_from_slice(&s[pos..]);
                    next.insert(t);
                }
            }
        }
        level = next;
    }
    weigh(y, k, Direction::Insertion, level)
}

/// `D_k(x)`: every distinct word obtained by deleting `k` symbols from `x`,
/// weighted by `ω_y(x)`.
pub fn deletion_ball(x: &Word, k: usize, config: &Config) -> Result<WeightedBall> {
    if k > x.len() {
        return Err(Error::OutOfRange(format!(
            "cannot delete {k} symbols from a word of length {}",
            x.len()
        )));
    }
    let bound = binomial(x.len() as u64, k as u64)?;
    let space = checked_pow(x.q() as u64, (x.len() - k) as u64).unwrap_or(u128::MAX);
    config.check_ball(bound.min(space))?;
    let mut level: BTreeSet<Vec<u8>> = BTreeSet::new();
    level.insert(x.symbols().to_vec());
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for s in &level {
            for pos in 0..s.len() {
                // deleting any symbol of a run gives the same word
                if pos > 0 && s[pos - 1] == s[pos] {
                    continue;
                }
                let mut t = s.clone();
                t.remove(pos);
                next.insert(t);
            }
        }
        level = next;
    }
    weigh(x, k, Direction::Deletion, level)
}

fn require_binary(y: &Word) -> Result<()> {
    if y.q() != 2 {
        return Err(Error::NotBinary);
    }
    Ok(())
}

/// Inserts two length-one runs right after run `i` (`0 <= i <= R`) of the
/// binary word `y` and returns the resulting supersequence together with
/// the closed-form embedding number `1 + Σ_{j=b_i}^{f_i} r_j`.
pub fn two_run_insertion_embedding(y: &Word, i: usize) -> Result<(Word, u128)> {
    require_binary(y)?;
    let profile = run_profile(y)?;
    let runs = profile.runs();
    if i > runs {
        return Err(Error::OutOfRange(format!("run index {i} not in [0, {runs}]")));
    }
    let mut symbols = y.run_symbols();
    let mut lengths = profile.lengths().to_vec();
    // new runs continue the alternation on both sides
    let (inserted, at) = if i == 0 {
        ([symbols[0], 1 - symbols[0]], 0)
    } else {
        ([1 - symbols[i - 1], symbols[i - 1]], i)
    };
    symbols.splice(at..at, inserted);
    lengths.splice(at..at, [1, 1]);
    let x = Word::from_runs(2, &symbols, &lengths)?;

    let bounds = run_index_bounds(&profile);
    let span: usize = (bounds.backward(i)..=bounds.forward(i))
        .map(|j| profile.run(j))
        .sum();
    Ok((x, 1 + span as u128))
}

/// The three distinguished 2-supersequences of a binary word and their
/// closed-form embedding numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialSupersequences {
    /// Profile `(1, 1, r_1, .., r_R)`; weight `1 + Σ_{j=1}^{f_0} r_j`.
    pub beta: (Word, u128),
    /// Profile `(2, r_1, .., r_R)`; weight `1`.
    pub gamma: (Word, u128),
    /// Profile `(1, r_1 + 1, r_2, .., r_R)`; weight `r_1 + 1`.
    pub delta: (Word, u128),
}

pub fn special_supersequences(y: &Word) -> Result<SpecialSupersequences> {
    require_binary(y)?;
    let profile = run_profile(y)?;
    let beta = two_run_insertion_embedding(y, 0)?;

    let syms = y.run_symbols();
    let lead = 1 - syms[0];
    let mut gamma_syms = vec![lead];
    gamma_syms.extend_from_slice(&syms);
    let mut gamma_lengths = vec![2];
    gamma_lengths.extend_from_slice(profile.lengths());
    let gamma = Word::from_runs(2, &gamma_syms, &gamma_lengths)?;

    let mut delta_lengths = vec![1];
    delta_lengths.extend_from_slice(profile.lengths());
    delta_lengths[1] += 1;
    let delta = Word::from_runs(2, &gamma_syms, &delta_lengths)?;

    Ok(SpecialSupersequences {
        beta,
        gamma: (gamma, 1),
        delta: (delta, profile.run(1) as u128 + 1),
    })
}
