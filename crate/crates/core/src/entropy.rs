//! The channel model and every entropy computation: generic `k` by ball
//! enumeration, closed forms for `k = 1`, weight sums and input/output
//! duality. All logarithms are base 2.

use num_rational::Ratio;
use serde::Serialize;

use crate::config::Config;
use crate::embed::{
    count_embeddings, deletion_ball, embedding_number, insertion_ball, Direction, WeightedBall,
};
use crate::error::{Error, Result};
use crate::math::{binomial, checked_pow, xlog2x};
use crate::seqcore::{check_alphabet, run_profile, Word};

/// A `k`-deletion or `k`-insertion channel on transmitted words of length
/// `n` over `Σ_q`, with uniform transmission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChannelSpec {
    pub direction: Direction,
    pub k: usize,
    pub q: usize,
    pub n: usize,
}

impl ChannelSpec {
    pub fn new(direction: Direction, k: usize, q: usize, n: usize) -> Result<Self> {
        check_alphabet(q)?;
        if direction == Direction::Deletion && k > n {
            return Err(Error::OutOfRange(format!(
                "cannot delete {k} symbols from length {n}"
            )));
        }
        Ok(ChannelSpec { direction, k, q, n })
    }

    /// The channel whose outputs have the length of `y`.
    pub fn for_output(direction: Direction, k: usize, y: &Word) -> Result<Self> {
        let n = match direction {
            Direction::Deletion => y.len() + k,
            Direction::Insertion => y.len().checked_sub(k).ok_or_else(|| {
                Error::OutOfRange(format!(
                    "output of length {} cannot carry {k} insertions",
                    y.len()
                ))
            })?,
        };
        ChannelSpec::new(direction, k, y.q(), n)
    }

    /// The channel whose inputs have the length of `x`.
    pub fn for_input(direction: Direction, k: usize, x: &Word) -> Result<Self> {
        ChannelSpec::new(direction, k, x.q(), x.len())
    }

    pub fn output_len(&self) -> usize {
        match self.direction {
            Direction::Deletion => self.n - self.k,
            Direction::Insertion => self.n + self.k,
        }
    }

    /// Total number of equally likely channel events: `C(n,k)` deletion
    /// patterns or `C(n+k,k) q^k` insertion patterns.
    pub fn event_count(&self) -> Result<u128> {
        match self.direction {
            Direction::Deletion => binomial(self.n as u64, self.k as u64),
            Direction::Insertion => binomial((self.n + self.k) as u64, self.k as u64)?
                .checked_mul(checked_pow(self.q as u64, self.k as u64)?)
                .ok_or(Error::Overflow("event count")),
        }
    }

    fn check_word(&self, w: &Word, expected: usize) -> Result<()> {
        if w.q() != self.q {
            return Err(Error::AlphabetMismatch {
                left: self.q,
                right: w.q(),
            });
        }
        if w.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: w.len(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Enumerated,
}

/// An entropy value in bits with the statistics it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub bits: f64,
    pub method: Method,
    /// Number of distinct ball entries; only set for enumerated reports.
    pub ball_size: Option<u64>,
    /// `Σ ω log ω` over the relevant ball.
    pub weight_sum: f64,
}

/// `Pr^Out{y | x}` as an exact fraction.
pub fn out_prob(spec: &ChannelSpec, x: &Word, y: &Word) -> Result<Ratio<u128>> {
    spec.check_word(x, spec.n)?;
    spec.check_word(y, spec.output_len())?;
    let omega = match spec.direction {
        Direction::Deletion => embedding_number(x, y)?,
        Direction::Insertion => embedding_number(y, x)?,
    };
    Ok(Ratio::new(omega, spec.event_count()?))
}

/// `W_S(y) = Σ_{x ∈ S} ω_y(x) log ω_y(x)`, summed in lexicographic order of
/// `S`. Each `x` must be a supersequence of `y`.
pub fn weight_sum(y: &Word, subset: &[Word]) -> Result<f64> {
    let mut sorted: Vec<&Word> = subset.iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut acc = 0.0;
    for x in sorted {
        acc += xlog2x(embedding_number(x, y)? as f64);
    }
    Ok(acc)
}

/// `Σ ω log ω` over the ball entries, in their stored (lexicographic) order.
pub fn ball_weight_sum(ball: &WeightedBall) -> f64 {
    ball.entries().iter().map(|(_, w)| xlog2x(*w as f64)).sum()
}

fn report_from_ball(ball: &WeightedBall) -> Result<EntropyReport> {
    let normalizer = ball.expected_total()? as f64;
    let weight_sum = ball_weight_sum(ball);
    let bits = (normalizer.log2() - weight_sum / normalizer).max(0.0);
    Ok(EntropyReport {
        bits,
        method: Method::Enumerated,
        ball_size: Some(ball.len() as u64),
        weight_sum,
    })
}

/// Input entropy of the received word `y` by full ball enumeration.
///
/// For deletion channels the posterior ranges over `I_k(y)`; for insertion
/// channels over `D_k(y)`.
pub fn input_entropy(spec: &ChannelSpec, y: &Word, config: &Config) -> Result<EntropyReport> {
    spec.check_word(y, spec.output_len())?;
    let ball = match spec.direction {
        Direction::Deletion => insertion_ball(y, spec.k, config)?,
        Direction::Insertion => deletion_ball(y, spec.k, config)?,
    };
    report_from_ball(&ball)
}

/// `H^In_{1-Del}(y) = log(nq) - (1/nq) Σ (r_i+1) log(r_i+1)` with `n = |y|+1`.
pub fn input_entropy_1del_closed(y: &Word) -> Result<EntropyReport> {
    let profile = run_profile(y)?;
    let nq = ((y.len() + 1) * y.q()) as f64;
    let weight_sum: f64 = profile
        .lengths()
        .iter()
        .map(|&r| xlog2x((r + 1) as f64))
        .sum();
    Ok(EntropyReport {
        bits: (nq.log2() - weight_sum / nq).max(0.0),
        method: Method::ClosedForm,
        ball_size: None,
        weight_sum,
    })
}

/// `H^In_{1-Ins}(y) = log|y| - (1/|y|) Σ r_i log r_i`.
pub fn input_entropy_1ins_closed(y: &Word) -> Result<EntropyReport> {
    let profile = run_profile(y)?;
    let m = y.len() as f64;
    let weight_sum: f64 = profile.lengths().iter().map(|&r| xlog2x(r as f64)).sum();
    Ok(EntropyReport {
        bits: (m.log2() - weight_sum / m).max(0.0),
        method: Method::ClosedForm,
        ball_size: None,
        weight_sum,
    })
}

/// Input entropy of `y` for a `k`-error channel: the closed form when
/// `k = 1`, ball enumeration otherwise.
pub fn input_entropy_auto(direction: Direction, k: usize, y: &Word, config: &Config) -> Result<EntropyReport> {
    match (direction, k) {
        (Direction::Deletion, 1) => input_entropy_1del_closed(y),
        (Direction::Insertion, 1) => input_entropy_1ins_closed(y),
        _ => input_entropy(&ChannelSpec::for_output(direction, k, y)?, y, config),
    }
}

/// Output entropy of the transmitted word `x`: `-Σ p log p` over the
/// channel-output distribution `Pr^Out{· | x}`.
pub fn output_entropy(spec: &ChannelSpec, x: &Word, config: &Config) -> Result<EntropyReport> {
    spec.check_word(x, spec.n)?;
    let ball = match spec.direction {
        Direction::Deletion => deletion_ball(x, spec.k, config)?,
        Direction::Insertion => insertion_ball(x, spec.k, config)?,
    };
    let events = spec.event_count()?;
    let mut bits = 0.0;
    let mut weight_sum = 0.0;
    for (_, w) in ball.entries() {
        let p = Ratio::new(*w, events);
        let p = *p.numer() as f64 / *p.denom() as f64;
        bits -= p * p.log2();
        weight_sum += xlog2x(*w as f64);
    }
    Ok(EntropyReport {
        bits: bits.max(0.0),
        method: Method::Enumerated,
        ball_size: Some(ball.len() as u64),
        weight_sum,
    })
}

/// Both sides of the input/output duality for a received word `y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualityCheck {
    /// `(H^In_{k-Del}(y), H^Out_{k-Ins}(y))`.
    pub deletion: (f64, f64),
    /// `(H^In_{k-Ins}(y), H^Out_{k-Del}(y))`; `None` when `k > |y|`.
    pub insertion: Option<(f64, f64)>,
}

impl DualityCheck {
    pub fn max_gap(&self) -> f64 {
        let a = (self.deletion.0 - self.deletion.1).abs();
        let b = self.insertion.map_or(0.0, |(x, y)| (x - y).abs());
        a.max(b)
    }
}

pub fn duality_check(y: &Word, k: usize, config: &Config) -> Result<DualityCheck> {
    let del_in = input_entropy(&ChannelSpec::for_output(Direction::Deletion, k, y)?, y, config)?;
    let ins_out = output_entropy(&ChannelSpec::for_input(Direction::Insertion, k, y)?, y, config)?;
    let insertion = if k <= y.len() {
        let ins_in = input_entropy(&ChannelSpec::for_output(Direction::Insertion, k, y)?, y, config)?;
        let del_out = output_entropy(&ChannelSpec::for_input(Direction::Deletion, k, y)?, y, config)?;
        Some((ins_in.bits, del_out.bits))
    } else {
        None
    };
    Ok(DualityCheck {
        deletion: (del_in.bits, ins_out.bits),
        insertion,
    })
}

/// Weight sum over an explicit set of supersequences given as raw symbol
/// slices; used by the appendix identity.
pub(crate) fn raw_weight_sum<'a>(y: &[u8], xs: impl Iterator<Item = &'a [u8]>) -> Result<f64> {
    let mut acc = 0.0;
    for x in xs {
        acc += xlog2x(count_embeddings(x, y)? as f64);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-5;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    fn spec(direction: Direction, k: usize, n: usize) -> ChannelSpec {
        ChannelSpec::new(direction, k, 2, n).unwrap()
    }

    #[test]
    fn out_prob_examples() {
        let del = spec(Direction::Deletion, 1, 3);
        assert_eq!(out_prob(&del, &w("000"), &w("00")).unwrap(), Ratio::from_integer(1));
        assert_eq!(out_prob(&del, &w("010"), &w("00")).unwrap(), Ratio::new(1, 3));
        let ins = spec(Direction::Insertion, 1, 2);
        assert_eq!(out_prob(&ins, &w("00"), &w("000")).unwrap(), Ratio::new(3, 6));
        assert!(matches!(
            out_prob(&del, &w("010"), &w("0")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn input_entropy_examples() {
        let cfg = Config::default();
        let r = input_entropy(&spec(Direction::Deletion, 2, 4), &w("00"), &cfg).unwrap();
        assert!((r.bits - 3.14624).abs() < TOL);
        assert_eq!(r.ball_size, Some(11));
        let r = input_entropy(&spec(Direction::Deletion, 1, 4), &w("000"), &cfg).unwrap();
        assert!((r.bits - 2.0).abs() < 1e-12);
        for dir in [Direction::Deletion, Direction::Insertion] {
            let r = input_entropy(&spec(dir, 0, 3), &w("010"), &cfg).unwrap();
            assert_eq!(r.bits, 0.0);
        }
    }

    #[test]
    fn closed_form_examples() {
        assert!((input_entropy_1del_closed(&w("010")).unwrap().bits - 2.25).abs() < 1e-12);
        let expected = 3.0 - (3.0 * 3f64.log2() + 2.0) / 8.0;
        assert!((input_entropy_1del_closed(&w("001")).unwrap().bits - expected).abs() < 1e-12);
        assert!((expected - 2.15564).abs() < TOL);
        assert!((input_entropy_1del_closed(&w("000")).unwrap().bits - 2.0).abs() < 1e-12);

        assert_eq!(input_entropy_1ins_closed(&w("0000")).unwrap().bits, 0.0);
        assert!((input_entropy_1ins_closed(&w("0101")).unwrap().bits - 2.0).abs() < 1e-12);
        assert!((input_entropy_1ins_closed(&w("0011")).unwrap().bits - 1.0).abs() < 1e-12);
    }

    #[test]
    fn output_entropy_examples() {
        let cfg = Config::default();
        let del = spec(Direction::Deletion, 1, 3);
        assert_eq!(output_entropy(&del, &w("000"), &cfg).unwrap().bits, 0.0);
        let r = output_entropy(&del, &w("010"), &cfg).unwrap();
        assert!((r.bits - 3f64.log2()).abs() < 1e-12);
        let r = output_entropy(&spec(Direction::Insertion, 1, 2), &w("00"), &cfg).unwrap();
        assert!((r.bits - 1.79248).abs() < TOL);
    }

    #[test]
    fn duality_examples() {
        let cfg = Config::default();
        let d = duality_check(&w("00"), 1, &cfg).unwrap();
        assert!((d.deletion.0 - 1.79248).abs() < TOL);
        assert!(d.max_gap() < 1e-12);
        let d = duality_check(&w("0110"), 0, &cfg).unwrap();
        assert_eq!(d.deletion, (0.0, 0.0));
        assert_eq!(d.insertion, Some((0.0, 0.0)));
        assert!(duality_check(&w("0"), 2, &cfg).unwrap().insertion.is_none());
    }

    #[test]
    fn weight_sum_examples() {
        let cfg = Config::default();
        let ball = insertion_ball(&w("00"), 1, &cfg).unwrap();
        let words: Vec<Word> = ball.entries().iter().map(|(x, _)| x.clone()).collect();
        let v = weight_sum(&w("00"), &words).unwrap();
        assert!((v - 3.0 * 3f64.log2()).abs() < 1e-12);
        assert!((v - 4.75489).abs() < TOL);
        assert_eq!(weight_sum(&w("00"), &[w("001"), w("010")]).unwrap(), 0.0);

        let ball = insertion_ball(&w("0"), 2, &cfg).unwrap();
        let words: Vec<Word> = ball.entries().iter().map(|(x, _)| x.clone()).collect();
        let v = weight_sum(&w("0"), &words).unwrap();
        assert!((v - (3.0 * 3f64.log2() + 6.0)).abs() < 1e-12);
        assert!((v - 10.75489).abs() < TOL);
        assert!((ball_weight_sum(&ball) - v).abs() < 1e-12);
    }
}
