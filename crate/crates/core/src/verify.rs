//! Self-check suites: each one compares a closed form or identity against
//! enumeration over a grid of words and reports the first counterexample.

use std::fmt;

use serde::Serialize;

use crate::average::{avg_1del, avg_1ins, run_count};
use crate::config::Config;
use crate::embed::{deletion_ball, insertion_ball, Direction};
use crate::entropy::duality_check;
use crate::error::{Error, Result};
use crate::extremal::{
    appendix_increment, appendix_weight, appendix_weight_argmax, exhaustive_extremizers,
    extrema_1ins_fixed_runs, max_1del_fixed_runs, min_1del_fixed_runs, min_2del, AppendixForm,
};
use crate::seqcore::{enumerate_words, run_profile, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Normalization,
    Duality,
    Extremal,
    Average,
    Appendix,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "normalization" => Suite::Normalization,
            "duality" => Suite::Duality,
            "extremal" => Suite::Extremal,
            "average" => Suite::Average,
            "appendix" => Suite::Appendix,
            other => return Err(Error::OutOfRange(format!("unknown suite {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub suite: Suite,
    pub cases: u64,
    pub failures: u64,
    pub first_counterexample: Option<String>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "PASS ({} cases)", self.cases)
        } else {
            write!(f, "FAIL ({} of {} cases)", self.failures, self.cases)?;
            if let Some(c) = &self.first_counterexample {
                write!(f, "; first counterexample: {c}")?;
            }
            Ok(())
        }
    }
}

struct Tally {
    suite: Suite,
    cases: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn new(suite: Suite) -> Self {
        Tally {
            suite,
            cases: 0,
            failures: 0,
            first: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    fn finish(self) -> VerifySummary {
        VerifySummary {
            suite: self.suite,
            cases: self.cases,
            failures: self.failures,
            first_counterexample: self.first,
        }
    }
}

const CLOSE: f64 = 1e-9;
const DUAL: f64 = 1e-12;

/// Runs one suite over words of length `1..=max_m` over `Σ_q`.
pub fn run_suite(suite: Suite, max_m: usize, q: usize, config: &Config) -> Result<VerifySummary> {
    if max_m == 0 {
        return Err(Error::OutOfRange("--max-m must be at least 1".into()));
    }
    let mut tally = Tally::new(suite);
    match suite {
        Suite::Normalization => normalization(&mut tally, max_m, q, config)?,
        Suite::Duality => duality(&mut tally, max_m, q, config)?,
        Suite::Extremal => extremal(&mut tally, max_m, q, config)?,
        Suite::Average => average(&mut tally, max_m, q, config)?,
        Suite::Appendix => appendix(&mut tally, max_m, config)?,
    }
    Ok(tally.finish())
}

/// One case per `(y, k)` with `k` in `{1, 2}`: both ball weight sums equal
/// their normalizers exactly.
fn normalization(t: &mut Tally, max_m: usize, q: usize, config: &Config) -> Result<()> {
    for m in 1..=max_m {
        for y in enumerate_words(q, m, config)? {
            for k in 1..=2 {
                let ins = insertion_ball(&y, k, config)?;
                let mut ok = ins.total_weight()? == ins.expected_total()?;
                if k <= y.len() {
                    let del = deletion_ball(&y, k, config)?;
                    ok &= del.total_weight()? == del.expected_total()?;
                }
                t.check(ok, || format!("y={y} k={k}"));
            }
        }
    }
    Ok(())
}

/// One case per `(y, k)` with `k` in `{0, 1, 2}`.
fn duality(t: &mut Tally, max_m: usize, q: usize, config: &Config) -> Result<()> {
    for m in 1..=max_m {
        for y in enumerate_words(q, m, config)? {
            for k in 0..=2 {
                let d = duality_check(&y, k, config)?;
                t.check(d.max_gap() <= DUAL, || {
                    format!("y={y} k={k} gap={:e}", d.max_gap())
                });
            }
        }
    }
    Ok(())
}

fn same_set(a: &[Word], b: &[Word]) -> bool {
    a == b
}

/// Per `(m, R, direction)`: exhaustive extrema over `Σ_{q,R}^m` equal the
/// closed forms in value and witness set. For `q = 2` also the 2-deletion
/// minimum per `m`.
fn extremal(t: &mut Tally, max_m: usize, q: usize, config: &Config) -> Result<()> {
    for m in 1..=max_m {
        for runs in 1..=m {
            for direction in [Direction::Deletion, Direction::Insertion] {
                let (lo, hi) = exhaustive_extremizers(direction, 1, q, m, Some(runs), config)?;
                let (cmin, cmax) = match direction {
                    Direction::Deletion => (
                        min_1del_fixed_runs(q, m, runs, config)?,
                        max_1del_fixed_runs(q, m, runs, config)?,
                    ),
                    Direction::Insertion => extrema_1ins_fixed_runs(q, m, runs, config)?,
                };
                let ok = (lo.value - cmin.value).abs() <= CLOSE
                    && (hi.value - cmax.value).abs() <= CLOSE
                    && same_set(&lo.witnesses, &cmin.witnesses)
                    && same_set(&hi.witnesses, &cmax.witnesses);
                t.check(ok, || {
                    format!("{} m={m} R={runs}", direction.as_str())
                });
            }
        }
        if q == 2 {
            let (lo, _) = exhaustive_extremizers(Direction::Deletion, 2, 2, m, None, config)?;
            let closed = min_2del(m)?;
            let ok = (lo.value - closed.value).abs() <= CLOSE && lo.witnesses == closed.witnesses;
            t.check(ok, || format!("2-deletion m={m}: argmin {:?}", lo.witnesses));
        }
    }
    Ok(())
}

/// Per `n`: closed-form averages equal direct expectations (both
/// channels); per `(m, r)`: run counts equal the census.
fn average(t: &mut Tally, max_m: usize, q: usize, config: &Config) -> Result<()> {
    for n in 2..=max_m + 1 {
        let del = avg_1del(n, q, true, config)?;
        if let Some(direct) = del.avg_direct {
            t.check((direct - del.avg_closed).abs() <= CLOSE, || {
                format!("avg 1-del n={n}")
            });
        }
    }
    for n in 2..max_m {
        let ins = avg_1ins(n, q, true, config)?;
        if let Some(direct) = ins.avg_direct {
            t.check((direct - ins.avg_closed).abs() <= CLOSE, || {
                format!("avg 1-ins n={n}")
            });
        }
    }
    for m in 1..=max_m {
        let mut census = vec![0u128; m + 1];
        for y in enumerate_words(q, m, config)? {
            for &r in run_profile(&y)?.lengths() {
                census[r] += 1;
            }
        }
        for (r, &count) in census.iter().enumerate().skip(1) {
            t.check(run_count(m, r, q)? == count, || format!("run count m={m} r={r}"));
        }
    }
    Ok(())
}

/// Per `m`: both forms of the appendix weight are maximized exactly by the
/// constant words; per binary `z` with `|z| <= min(max_m, 8)`: the
/// corrected form equals the enumerated increment.
fn appendix(t: &mut Tally, max_m: usize, config: &Config) -> Result<()> {
    for m in 1..=max_m {
        let constants = vec![Word::constant(2, 0, m)?, Word::constant(2, 1, m)?];
        for form in [AppendixForm::Stated, AppendixForm::Corrected] {
            let r = appendix_weight_argmax(m, form, config)?;
            t.check(r.witnesses == constants, || {
                format!("{form:?} argmax m={m}: {:?}", r.witnesses)
            });
        }
    }
    for m in 1..=max_m.min(8) {
        for z in enumerate_words(2, m, config)? {
            let direct = appendix_increment(&z, config)?;
            let closed = appendix_weight(&z, AppendixForm::Corrected)?;
            t.check((direct - closed).abs() <= CLOSE, || {
                format!("increment z={z}: enumerated {direct} vs {closed}")
            });
        }
    }
    Ok(())
}
