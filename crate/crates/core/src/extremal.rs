//! Extremal input entropies: closed forms with their extremizing words,
//! the 2-deletion minimum, and the exhaustive scans that certify them.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::Config;
use crate::embed::{insertion_ball, Direction};
use crate::entropy::{input_entropy_auto, raw_weight_sum};
use crate::error::{Error, Result};
use crate::math::{binomial, checked_pow, xlog2x};
use crate::seqcore::{
    balanced_lengths, check_alphabet, count_words_with_runs, enumerate_words,
    enumerate_words_with_runs, run_index_bounds, run_profile, Word,
};

/// Attainment band for witnesses.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Default number of witnesses written by [`ExtremalResult::to_record`].
pub const DEFAULT_WITNESS_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
}

/// The family an extremum is taken over: `Σ_{q,R}^m`, or all of `Σ_q^m`
/// when `runs` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Scope {
    pub q: usize,
    pub m: usize,
    pub runs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalResult {
    pub extremum: Extremum,
    pub value: f64,
    /// All attaining words, lexicographically sorted.
    pub witnesses: Vec<Word>,
    pub scope: Scope,
    pub direction: Direction,
    pub k: usize,
    pub exhaustive: bool,
    pub note: Option<String>,
}

/// Flat serializable view of an [`ExtremalResult`] with a truncated witness
/// list.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalRecord {
    pub extremum: Extremum,
    pub direction: Direction,
    pub k: usize,
    pub q: usize,
    pub m: usize,
    pub runs: Option<usize>,
    pub method: &'static str,
    pub value: f64,
    pub witness_count: usize,
    pub witnesses: Vec<String>,
    pub note: Option<String>,
}

impl ExtremalResult {
    pub fn to_record(&self, witness_limit: usize) -> ExtremalRecord {
        ExtremalRecord {
            extremum: self.extremum,
            direction: self.direction,
            k: self.k,
            q: self.scope.q,
            m: self.scope.m,
            runs: self.scope.runs,
            method: if self.exhaustive { "enumerated" } else { "closed_form" },
            value: self.value,
            witness_count: self.witnesses.len(),
            witnesses: self
                .witnesses
                .iter()
                .take(witness_limit)
                .map(Word::to_string)
                .collect(),
            note: self.note.clone(),
        }
    }
}

fn check_runs(q: usize, m: usize, runs: usize) -> Result<()> {
    check_alphabet(q)?;
    if runs == 0 {
        return Err(Error::OutOfRange("run count must be at least 1".into()));
    }
    if runs > m {
        return Err(Error::TooManyRuns { runs, len: m });
    }
    Ok(())
}

/// Every word whose run-length profile is a permutation of `lengths`, with
/// every symbol labelling, sorted.
fn words_with_run_multiset(q: usize, lengths: &[usize], config: &Config) -> Result<Vec<Word>> {
    let mut profile = lengths.to_vec();
    profile.sort_unstable();
    let runs = profile.len();

    let mut orderings: u128 = 1;
    let mut placed = 0u64;
    for chunk in profile.chunk_by(|a, b| a == b) {
        placed += chunk.len() as u64;
        orderings = orderings
            .checked_mul(binomial(placed, chunk.len() as u64)?)
            .ok_or(Error::Overflow("witness count"))?;
    }
    let labels = checked_pow(q as u64 - 1, runs as u64 - 1)?
        .checked_mul(q as u128)
        .ok_or(Error::Overflow("witness count"))?;
    config.check_space(orderings.checked_mul(labels).ok_or(Error::Overflow("witness count"))?)?;

    let mut out = Vec::new();
    let mut symbols = vec![0u8; runs];
    loop {
        push_labellings(q, &profile, &mut symbols, 0, &mut out)?;
        if !next_permutation(&mut profile) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

fn push_labellings(
    q: usize,
    lengths: &[usize],
    symbols: &mut [u8],
    at: usize,
    out: &mut Vec<Word>,
) -> Result<()> {
    if at == lengths.len() {
        out.push(Word::from_runs(q, symbols, lengths)?);
        return Ok(());
    }
    for a in 0..q as u8 {
        if at > 0 && symbols[at - 1] == a {
            continue;
        }
        symbols[at] = a;
        push_labellings(q, lengths, symbols, at + 1, out)?;
    }
    Ok(())
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn skewed_lengths(m: usize, runs: usize) -> Vec<usize> {
    let mut v = vec![1; runs];
    v[0] = m - runs + 1;
    v
}

fn closed(
    extremum: Extremum,
    value: f64,
    witnesses: Vec<Word>,
    scope: Scope,
    direction: Direction,
    k: usize,
) -> ExtremalResult {
    ExtremalResult {
        extremum,
        value,
        witnesses,
        scope,
        direction,
        k,
        exhaustive: false,
        note: None,
    }
}

/// Maximum of `H^In_{1-Del}` over `Σ_{q,R}^m`, attained by the balanced
/// words.
pub fn max_1del_fixed_runs(q: usize, m: usize, runs: usize, config: &Config) -> Result<ExtremalResult> {
    check_runs(q, m, runs)?;
    let nq = ((m + 1) * q) as f64;
    let lengths = balanced_lengths(m, runs);
    let (ceil, floor) = (m.div_ceil(runs) as f64, (m / runs) as f64);
    let r = (m % runs) as f64;
    let value = nq.log2()
        - r / nq * xlog2x(ceil + 1.0)
        - (runs as f64 - r) / nq * xlog2x(floor + 1.0);
    let scope = Scope { q, m, runs: Some(runs) };
    Ok(closed(
        Extremum::Max,
        value,
        words_with_run_multiset(q, &lengths, config)?,
        scope,
        Direction::Deletion,
        1,
    ))
}

/// Minimum of `H^In_{1-Del}` over `Σ_{q,R}^m`, attained by the skewed words.
pub fn min_1del_fixed_runs(q: usize, m: usize, runs: usize, config: &Config) -> Result<ExtremalResult> {
    check_runs(q, m, runs)?;
    let nq = ((m + 1) * q) as f64;
    let long = (m - runs + 2) as f64;
    let value = nq.log2() - (xlog2x(long) + 2.0 * (runs as f64 - 1.0)) / nq;
    let scope = Scope { q, m, runs: Some(runs) };
    Ok(closed(
        Extremum::Min,
        value,
        words_with_run_multiset(q, &skewed_lengths(m, runs), config)?,
        scope,
        Direction::Deletion,
        1,
    ))
}

fn constant_words(q: usize, m: usize) -> Result<Vec<Word>> {
    (0..q as u8).map(|s| Word::constant(q, s, m)).collect()
}

/// Global minimum `log(nq) - log(n)/q` (constant words) and maximum
/// `log(nq) - 2m/(nq)` (words with `m` runs) of `H^In_{1-Del}` over
/// `Σ_q^m`, `m = n-1`.
pub fn global_extrema_1del(q: usize, n: usize, config: &Config) -> Result<(ExtremalResult, ExtremalResult)> {
    check_alphabet(q)?;
    if n < 2 {
        return Err(Error::OutOfRange(format!("need n >= 2, got {n}")));
    }
    let m = n - 1;
    let nq = (n * q) as f64;
    let scope = Scope { q, m, runs: None };
    let min = closed(
        Extremum::Min,
        nq.log2() - (n as f64).log2() / q as f64,
        constant_words(q, m)?,
        scope,
        Direction::Deletion,
        1,
    );
    let max = closed(
        Extremum::Max,
        nq.log2() - 2.0 * m as f64 / nq,
        words_with_run_multiset(q, &vec![1; m], config)?,
        scope,
        Direction::Deletion,
        1,
    );
    Ok((min, max))
}

/// Minimum (skewed) and maximum (balanced) of `H^In_{1-Ins}` over
/// `Σ_{q,R}^m`, `m = n+1`.
pub fn extrema_1ins_fixed_runs(
    q: usize,
    m: usize,
    runs: usize,
    config: &Config,
) -> Result<(ExtremalResult, ExtremalResult)> {
    check_runs(q, m, runs)?;
    let mf = m as f64;
    let (ceil, floor) = (m.div_ceil(runs) as f64, (m / runs) as f64);
    let r = (m % runs) as f64;
    let max_value = mf.log2() - (r * xlog2x(ceil) + (runs as f64 - r) * xlog2x(floor)) / mf;
    let min_value = mf.log2() - xlog2x((m - runs + 1) as f64) / mf;
    let scope = Scope { q, m, runs: Some(runs) };
    let min = closed(
        Extremum::Min,
        min_value.max(0.0),
        words_with_run_multiset(q, &skewed_lengths(m, runs), config)?,
        scope,
        Direction::Insertion,
        1,
    );
    let max = closed(
        Extremum::Max,
        max_value,
        words_with_run_multiset(q, &balanced_lengths(m, runs), config)?,
        scope,
        Direction::Insertion,
        1,
    );
    Ok((min, max))
}

/// Global minimum `0` (constant words) and maximum `log m` (words with `m`
/// runs) of `H^In_{1-Ins}` over `Σ_q^m`.
pub fn global_extrema_1ins(q: usize, m: usize, config: &Config) -> Result<(ExtremalResult, ExtremalResult)> {
    check_alphabet(q)?;
    if m == 0 {
        return Err(Error::OutOfRange("need m >= 1".into()));
    }
    let scope = Scope { q, m, runs: None };
    let min = closed(Extremum::Min, 0.0, constant_words(q, m)?, scope, Direction::Insertion, 1);
    let max = closed(
        Extremum::Max,
        (m as f64).log2(),
        words_with_run_multiset(q, &vec![1; m], config)?,
        scope,
        Direction::Insertion,
        1,
    );
    Ok((min, max))
}

/// `2 + (3/4) log C(m+2, 2) - (1/2) log(m+1)`, the binary 2-deletion
/// minimum attained only by the constant words.
pub fn min_2del_value(m: usize) -> Result<f64> {
    let c = binomial(m as u64 + 2, 2)? as f64;
    Ok(2.0 + 0.75 * c.log2() - 0.5 * ((m + 1) as f64).log2())
}

/// The same expression with `C(m, 2)` in place of `C(m+2, 2)`; undefined
/// below `m = 2` and not equal to the true minimum anywhere.
pub fn min_2del_value_with_c_m_2(m: usize) -> Option<f64> {
    (m >= 2).then(|| {
        let c = (m * (m - 1) / 2) as f64;
        2.0 + 0.75 * c.log2() - 0.5 * ((m + 1) as f64).log2()
    })
}

pub fn min_2del(m: usize) -> Result<ExtremalResult> {
    if m == 0 {
        return Err(Error::OutOfRange("need m >= 1 for the 2-deletion minimum".into()));
    }
    let value = min_2del_value(m)?;
    let note = match min_2del_value_with_c_m_2(m) {
        Some(v) => format!(
            "value uses C(m+2,2); the variant with C(m,2) evaluates to {v:.12} here and disagrees with enumeration"
        ),
        None => "value uses C(m+2,2); the variant with C(m,2) is undefined for m < 2".to_string(),
    };
    let mut result = closed(
        Extremum::Min,
        value,
        constant_words(2, m)?,
        Scope { q: 2, m, runs: None },
        Direction::Deletion,
        2,
    );
    result.note = Some(note);
    Ok(result)
}

const SCAN_CHUNK: usize = 4096;

type Attained = (f64, Vec<Word>);

/// Streams `words` through `score`, evaluating each chunk in parallel, and
/// returns `(min, max)` as `(value, attainers)` pairs. The reduction runs
/// sequentially in iteration order, so the result does not depend on the
/// number of workers.
fn scan_extrema<I, F>(words: I, score: F, config: &Config) -> Result<Option<(Attained, Attained)>>
where
    I: Iterator<Item = Word> + Send,
    F: Fn(&Word) -> Result<f64> + Sync + Send,
{
    let run = move || -> Result<Option<(Attained, Attained)>> {
        let mut words = words;
        let mut low: Option<(f64, Vec<(Word, f64)>)> = None;
        let mut high: Option<(f64, Vec<(Word, f64)>)> = None;
        loop {
            let chunk: Vec<Word> = words.by_ref().take(SCAN_CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            let values: Vec<f64> = chunk.par_iter().map(&score).collect::<Result<_>>()?;
            for (w, v) in chunk.into_iter().zip(values) {
                absorb(&mut low, w.clone(), v, |a, b| a < b);
                absorb(&mut high, w, v, |a, b| a > b);
            }
        }
        Ok(low.zip(high).map(|(l, h)| (finish(l), finish(h))))
    };
    match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::OutOfRange(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn absorb(
    best: &mut Option<(f64, Vec<(Word, f64)>)>,
    word: Word,
    value: f64,
    better: impl Fn(f64, f64) -> bool,
) {
    match best {
        None => *best = Some((value, vec![(word, value)])),
        Some((cur, list)) => {
            if better(value, *cur) {
                *cur = value;
                let cur = *cur;
                list.retain(|(_, v)| (v - cur).abs() <= TIE_TOLERANCE);
                list.push((word, value));
            } else if (value - *cur).abs() <= TIE_TOLERANCE {
                list.push((word, value));
            }
        }
    }
}

fn finish((value, list): (f64, Vec<(Word, f64)>)) -> (f64, Vec<Word>) {
    let mut words: Vec<Word> = list.into_iter().map(|(w, _)| w).collect();
    words.sort();
    (value, words)
}

/// Scans every output word of length `m` (or only those with `runs` runs)
/// and returns the exact minimum and maximum input entropy with all
/// attainers.
pub fn exhaustive_extremizers(
    direction: Direction,
    k: usize,
    q: usize,
    m: usize,
    runs: Option<usize>,
    config: &Config,
) -> Result<(ExtremalResult, ExtremalResult)> {
    let words = match runs {
        Some(r) => {
            check_runs(q, m, r)?;
            enumerate_words_with_runs(q, m, r, config)?
        }
        None => enumerate_words(q, m, config)?,
    };
    let (low, high) = scan_extrema(
        words,
        |y| input_entropy_auto(direction, k, y, config).map(|r| r.bits),
        config,
    )?
    .ok_or_else(|| Error::OutOfRange("empty search space".into()))?;
    let scope = Scope { q, m, runs };
    let make = |extremum, (value, witnesses)| ExtremalResult {
        extremum,
        value,
        witnesses,
        scope,
        direction,
        k,
        exhaustive: true,
        note: None,
    };
    Ok((make(Extremum::Min, low), make(Extremum::Max, high)))
}

/// Which form of the appendix weight expression to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AppendixForm {
    /// The expression as stated, with the `(1+S) log(1+S) - S log S` term.
    Stated,
    /// The `(2+S) log(2+S) - (1+S) log(1+S)` term, which equals the
    /// enumerated increment exactly.
    Corrected,
}

/// The appendix weight `W(y)` for a binary word with profile
/// `(r_1, .., r_R)`, where `S = Σ_{i=1}^{f_1} r_i`.
pub fn appendix_weight(y: &Word, form: AppendixForm) -> Result<f64> {
    if y.q() != 2 {
        return Err(Error::NotBinary);
    }
    let profile = run_profile(y)?;
    let m = y.len() as f64;
    let runs = profile.runs();
    let r1 = profile.run(1) as f64;
    let f1 = run_index_bounds(&profile).forward(1);
    let s: f64 = (1..=f1).map(|i| profile.run(i) as f64).sum();

    let pairs = |a: f64| a * (a - 1.0) / 2.0;
    let mut v = xlog2x(pairs(r1 + 3.0)) - xlog2x(pairs(r1 + 2.0));
    v += match form {
        AppendixForm::Stated => xlog2x(1.0 + s) - xlog2x(s),
        AppendixForm::Corrected => xlog2x(2.0 + s) - xlog2x(1.0 + s),
    };
    let tail = m - runs as f64 + 1.0;
    v += tail * (xlog2x(r1 + 2.0) - xlog2x(r1 + 1.0));
    for i in 2..=runs {
        let ri = profile.run(i) as f64 + 1.0;
        v += xlog2x((r1 + 2.0) * ri) - xlog2x((r1 + 1.0) * ri);
    }
    Ok(v)
}

/// The increment the appendix weight abbreviates, by enumeration: with
/// `y = z_1 ∘ z`, the difference
/// `W_{z_1 z_1 ∘ I_2(z[2..])}(y) - W_{z_1 ∘ I_2(z[2..])}(z)`.
pub fn appendix_increment(z: &Word, config: &Config) -> Result<f64> {
    if z.q() != 2 {
        return Err(Error::NotBinary);
    }
    if z.is_empty() {
        return Err(Error::EmptyWord);
    }
    let lead = z.symbols()[0];
    let y = z.prepend(lead)?;
    let ball = insertion_ball(&z.suffix(1), 2, config)?;
    let once: Vec<Vec<u8>> = ball
        .entries()
        .iter()
        .map(|(x, _)| std::iter::once(lead).chain(x.symbols().iter().copied()).collect())
        .collect();
    let twice: Vec<Vec<u8>> = once
        .iter()
        .map(|x| std::iter::once(lead).chain(x.iter().copied()).collect())
        .collect();
    let a = raw_weight_sum(y.symbols(), twice.iter().map(Vec::as_slice))?;
    let b = raw_weight_sum(z.symbols(), once.iter().map(Vec::as_slice))?;
    Ok(a - b)
}

/// Argmax of [`appendix_weight`] over all of `Σ_2^m`.
pub fn appendix_weight_argmax(m: usize, form: AppendixForm, config: &Config) -> Result<ExtremalResult> {
    if m == 0 {
        return Err(Error::OutOfRange("need m >= 1".into()));
    }
    let words = enumerate_words(2, m, config)?;
    let (_, (value, witnesses)) = scan_extrema(words, |y| appendix_weight(y, form), config)?
        .ok_or_else(|| Error::OutOfRange("empty search space".into()))?;
    Ok(ExtremalResult {
        extremum: Extremum::Max,
        value,
        witnesses,
        scope: Scope { q: 2, m, runs: None },
        direction: Direction::Deletion,
        k: 2,
        exhaustive: true,
        note: Some(format!("appendix weight, {form:?} form")),
    })
}

/// Size of `Σ_{q,R}^m`, re-exported for callers sizing scans.
pub fn family_size(q: usize, m: usize, runs: Option<usize>) -> Result<u128> {
    match runs {
        Some(r) => count_words_with_runs(q, m, r),
        None => checked_pow(q as u64, m as u64),
    }
}
