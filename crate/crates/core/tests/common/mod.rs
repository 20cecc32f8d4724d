//! Brute-force references used by the integration tests. Nothing here calls
//! into the library except to build `Word` values.
#![allow(dead_code)]

use std::collections::BTreeMap;

use indel_entropy::Word;

pub fn word(s: &str, q: usize) -> Word {
    Word::parse(s, q).unwrap()
}

pub fn to_word(symbols: &[u8], q: usize) -> Word {
    Word::new(symbols.to_vec(), q).unwrap()
}

/// Every word of length `m` over `{0..q-1}`, in lexicographic order.
pub fn all_words(q: usize, m: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..q as u8).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// Embedding number by walking all index subsets of `x` of size `|y|`.
pub fn omega_subsets(x: &[u8], y: &[u8]) -> u128 {
    fn go(x: &[u8], y: &[u8]) -> u128 {
        if y.is_empty() {
            return 1;
        }
        if x.len() < y.len() {
            return 0;
        }
        let mut total = 0;
        for (i, &c) in x.iter().enumerate() {
            if x.len() - i < y.len() {
                break;
            }
            if c == y[0] {
                total += go(&x[i + 1..], &y[1..]);
            }
        }
        total
    }
    go(x, y)
}

/// Embedding number by a two-dimensional table, independent of the
/// library's rolling DP.
pub fn omega(x: &[u8], y: &[u8]) -> u128 {
    let (n, m) = (x.len(), y.len());
    let mut t = vec![vec![0u128; m + 1]; n + 1];
    for row in t.iter_mut() {
        row[0] = 1;
    }
    for i in 1..=n {
        for j in 1..=m {
            t[i][j] = t[i - 1][j] + if x[i - 1] == y[j - 1] { t[i - 1][j - 1] } else { 0 };
        }
    }
    t[n][m]
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn runs(y: &[u8]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, &c) in y.iter().enumerate() {
        if i > 0 && y[i - 1] == c {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
        }
    }
    out
}

/// Deletion ball by enumerating every set of `k` deleted positions; the
/// multiplicity of each result is its weight.
pub fn deletion_events(x: &[u8], k: usize) -> BTreeMap<Vec<u8>, u128> {
    let n = x.len();
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let y: Vec<u8> = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| x[i]).collect();
        *out.entry(y).or_insert(0) += 1;
    }
    out
}

/// Insertion ball by enumerating every choice of `k` output positions and
/// `k` inserted symbols.
pub fn insertion_events(y: &[u8], k: usize, q: usize) -> BTreeMap<Vec<u8>, u128> {
    let n = y.len() + k;
    let mut out = BTreeMap::new();
    let fills = all_words(q, k);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        for fill in &fills {
            let (mut a, mut b) = (y.iter(), fill.iter());
            let x: Vec<u8> = (0..n)
                .map(|i| if mask & (1 << i) != 0 { *b.next().unwrap() } else { *a.next().unwrap() })
                .collect();
            *out.entry(x).or_insert(0) += 1;
        }
    }
    out
}

pub fn shannon(weights: impl IntoIterator<Item = u128>) -> f64 {
    let w: Vec<f64> = weights.into_iter().map(|v| v as f64).collect();
    let total: f64 = w.iter().sum();
    -w.iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| {
            let p = v / total;
            p * p.log2()
        })
        .sum::<f64>()
}

/// Posterior entropy of the transmitted word given `y` under a uniform
/// prior, by scanning every candidate input of length `input_len`.
pub fn bayes_input_entropy(y: &[u8], input_len: usize, q: usize) -> f64 {
    let weights = all_words(q, input_len).into_iter().map(|x| {
        if x.len() >= y.len() {
            omega(&x, y)
        } else {
            omega(y, &x)
        }
    });
    shannon(weights)
}

/// Words of length `m` with exactly `lengths.len()` runs whose run lengths
/// are a permutation of `lengths`.
pub fn words_with_profile(q: usize, m: usize, lengths: &[usize]) -> Vec<Vec<u8>> {
    let mut want = lengths.to_vec();
    want.sort_unstable();
    all_words(q, m)
        .into_iter()
        .filter(|w| {
            let mut r = runs(w);
            r.sort_unstable();
            r == want
        })
        .collect()
}

pub fn balanced_profile(m: usize, r: usize) -> Vec<usize> {
    (0..r).map(|i| m / r + usize::from(i < m % r)).collect()
}

pub fn skewed_profile(m: usize, r: usize) -> Vec<usize> {
    let mut v = vec![1; r];
    v[0] = m - r + 1;
    v
}

/// `f_0`: the first run index in `[1, R]` with length above one, else `R`.
pub fn forward_from_start(r: &[usize]) -> usize {
    (1..=r.len()).find(|&j| r[j - 1] > 1).unwrap_or(r.len())
}
