//! Run-count statistics and average input entropies for `k = 1`.

use serde::Serialize;

use crate::config::Config;
use crate::embed::Direction;
use crate::entropy::{input_entropy_1del_closed, input_entropy_1ins_closed};
use crate::error::{Error, Result};
use crate::math::{checked_pow, xlog2x};
use crate::seqcore::{check_alphabet, enumerate_words};

/// `N^m_r`: the total number of runs of length `r` over all of `Σ_q^m`.
///
/// For `r < m` this is `(q-1) q^(m-r-1) ((q-1)(m-r+1) + 2)`; the single
/// run of length `m` occurs once in each constant word, so `N^m_m = q`.
pub fn run_count(m: usize, r: usize, q: usize) -> Result<u128> {
    check_alphabet(q)?;
    if r == 0 || r > m {
        return Err(Error::OutOfRange(format!("run length {r} not in [1, {m}]")));
    }
    if r == m {
        return Ok(q as u128);
    }
    let q = q as u128;
    let scale = checked_pow(q as u64, (m - r - 1) as u64)?
        .checked_mul(q - 1)
        .ok_or(Error::Overflow("run count"))?;
    let inner = (q - 1) * (m - r + 1) as u128 + 2;
    scale.checked_mul(inner).ok_or(Error::Overflow("run count"))
}

/// The `r < m` expression applied at every `r`, including `r = m` where it
/// gives the non-integer `(q^2 - 1)/q`.
pub fn run_count_uncorrected(m: usize, r: usize, q: usize) -> f64 {
    let qf = q as f64;
    (qf - 1.0) * qf.powi(m as i32 - r as i32 - 1) * ((qf - 1.0) * (m - r + 1) as f64 + 2.0)
}

/// `N^m_r / q^m` without forming `q^m`.
fn run_density(m: usize, r: usize, q: usize) -> f64 {
    let qf = q as f64;
    if r == m {
        qf.powi(1 - m as i32)
    } else {
        (qf - 1.0) * qf.powi(-(r as i32) - 1) * ((qf - 1.0) * (m - r + 1) as f64 + 2.0)
    }
}

/// `Σ_{d=1}^{m-1} (m-d) x^d`.
fn weighted_geometric(m: usize, x: f64) -> f64 {
    if m < 2 {
        return 0.0;
    }
    let mf = m as f64;
    (mf - (mf + 1.0) * x + x.powi(m as i32 + 1)) / ((1.0 - x) * (1.0 - x)) - mf
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AverageReport {
    pub direction: Direction,
    pub n: usize,
    pub q: usize,
    pub avg_closed: f64,
    pub avg_direct: Option<f64>,
    pub lower_bound: f64,
    pub min: f64,
    pub max: f64,
}

fn check_average_args(n: usize, q: usize, least: usize) -> Result<()> {
    check_alphabet(q)?;
    if n < least {
        return Err(Error::OutOfRange(format!("need n >= {least}, got {n}")));
    }
    Ok(())
}

/// Closed-form `avg^In_{1-Del}(n)` from the corrected run counts.
pub fn avg_1del_closed(n: usize, q: usize) -> f64 {
    let m = n - 1;
    let nq = (n * q) as f64;
    let sum: f64 = (1..=m)
        .map(|r| run_density(m, r, q) * xlog2x((r + 1) as f64))
        .sum();
    nq.log2() - sum / nq
}

/// The same average built from [`run_count_uncorrected`] at every `r`.
pub fn avg_1del_uncorrected(n: usize, q: usize) -> f64 {
    let m = n - 1;
    let nq = (n * q) as f64;
    let qm = (q as f64).powi(m as i32);
    let sum: f64 = (1..=m)
        .map(|r| run_count_uncorrected(m, r, q) / qm * xlog2x((r + 1) as f64))
        .sum();
    nq.log2() - sum / nq
}

/// Closed-form `avg^In_{1-Ins}(n)` over `Σ_q^{n+1}`.
pub fn avg_1ins_closed(n: usize, q: usize) -> f64 {
    let m = n + 1;
    let mf = m as f64;
    let sum: f64 = (1..=m).map(|r| run_density(m, r, q) * xlog2x(r as f64)).sum();
    mf.log2() - sum / mf
}

fn direct_mean(q: usize, m: usize, config: &Config, f: impl Fn(&crate::Word) -> Result<f64>) -> Result<Option<f64>> {
    let words = match enumerate_words(q, m, config) {
        Ok(w) => w,
        Err(Error::CapExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut total = 0.0;
    let mut count = 0u64;
    for y in words {
        total += f(&y)?;
        count += 1;
    }
    Ok(Some(total / count as f64))
}

/// Analytic lower bounds `(del_lb, ins_lb)` on the two averages, obtained by
/// bounding `log(r+1) <= r` inside the run-count sums.
pub fn avg_lower_bounds(n: usize, q: usize) -> Result<(f64, f64)> {
    check_average_args(n, q, 2)?;
    let x = 1.0 / q as f64;

    // Σ_runs r(r+1) per word of length m = n-1
    let m = n - 1;
    let nq = (n * q) as f64;
    let per_word = 2.0 * weighted_geometric(m, x) + 2.0 * m as f64;
    let del_lb = nq.log2() - per_word / nq;

    // Σ_runs r(r-1) per word of length m = n+1
    let m = n + 1;
    let mf = m as f64;
    let ins_lb = mf.log2() - 2.0 * weighted_geometric(m, x) / mf;
    Ok((del_lb, ins_lb))
}

/// The deletion-side bound in the form built from the uncorrected run
/// counts: `log(nq) - (1/n)(2n/(q-1) - (n²-n)/q^(n+1) + (2q² - 2q^(n+2))/((q-1)² q^(n+1)))`.
/// It exceeds the true average for small `n`.
pub fn del_lower_bound_uncorrected(n: usize, q: usize) -> f64 {
    let (nf, qf) = (n as f64, q as f64);
    let qn1 = qf.powi(n as i32 + 1);
    let inner = 2.0 * nf / (qf - 1.0) - (nf * nf - nf) / qn1
        + (2.0 * qf * qf - 2.0 * qf.powi(n as i32 + 2)) / ((qf - 1.0) * (qf - 1.0) * qn1);
    (nf * qf).log2() - inner / nf
}

/// Average input entropy of the 1-deletion channel over `Σ_q^{n-1}`.
/// `avg_direct` is filled in when `direct` is set and `q^(n-1)` is within
/// the space cap.
pub fn avg_1del(n: usize, q: usize, direct: bool, config: &Config) -> Result<AverageReport> {
    check_average_args(n, q, 2)?;
    let avg_direct = if direct {
        direct_mean(q, n - 1, config, |y| Ok(input_entropy_1del_closed(y)?.bits))?
    } else {
        None
    };
    let nq = (n * q) as f64;
    Ok(AverageReport {
        direction: Direction::Deletion,
        n,
        q,
        avg_closed: avg_1del_closed(n, q),
        avg_direct,
        lower_bound: avg_lower_bounds(n, q)?.0,
        min: nq.log2() - (n as f64).log2() / q as f64,
        max: nq.log2() - 2.0 * (n - 1) as f64 / nq,
    })
}

/// Average input entropy of the 1-insertion channel over `Σ_q^{n+1}`.
pub fn avg_1ins(n: usize, q: usize, direct: bool, config: &Config) -> Result<AverageReport> {
    check_average_args(n, q, 2)?;
    let avg_direct = if direct {
        direct_mean(q, n + 1, config, |y| Ok(input_entropy_1ins_closed(y)?.bits))?
    } else {
        None
    };
    Ok(AverageReport {
        direction: Direction::Insertion,
        n,
        q,
        avg_closed: avg_1ins_closed(n, q),
        avg_direct,
        lower_bound: avg_lower_bounds(n, q)?.1,
        min: 0.0,
        max: ((n + 1) as f64).log2(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureRow {
    pub n: usize,
    pub min: f64,
    pub max: f64,
    pub avg: f64,
    pub avg_lower_bound: f64,
}

/// One row per `n` of the 1-deletion min, max, average and average lower
/// bound.
pub fn figure_table(n_min: usize, n_max: usize, q: usize) -> Result<Vec<FigureRow>> {
    check_average_args(n_min, q, 2)?;
    if n_max < n_min {
        return Err(Error::OutOfRange(format!("n range [{n_min}, {n_max}] is empty")));
    }
    (n_min..=n_max)
        .map(|n| {
            let nq = (n * q) as f64;
            Ok(FigureRow {
                n,
                min: nq.log2() - (n as f64).log2() / q as f64,
                max: nq.log2() - 2.0 * (n - 1) as f64 / nq,
                avg: avg_1del_closed(n, q),
                avg_lower_bound: avg_lower_bounds(n, q)?.0,
            })
        })
        .collect()
}

pub const FIGURE_HEADER: &str = "n,min,max,avg,avg_lower_bound";

/// Formats like C's `%.12g`.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        let s = format!("{x:.11e}");
        let (mantissa, e) = s.split_once('e').unwrap_or((&s, "0"));
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        let e: i32 = e.parse().unwrap_or(0);
        return format!("{mantissa}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn figure_csv(rows: &[FigureRow]) -> String {
    let mut out = String::from(FIGURE_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.n,
            format_sig12(row.min),
            format_sig12(row.max),
            format_sig12(row.avg),
            format_sig12(row.avg_lower_bound)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_count_examples() {
        assert_eq!(run_count(3, 1, 2).unwrap(), 10);
        assert_eq!(run_count(3, 2, 2).unwrap(), 4);
        assert_eq!(run_count(3, 3, 2).unwrap(), 2);
        assert_eq!(run_count_uncorrected(3, 3, 2), 1.5);
        assert!(run_count(3, 4, 2).is_err());
    }

    #[test]
    fn avg_examples() {
        let cfg = Config::default();
        let r = avg_1del(2, 2, true, &cfg).unwrap();
        assert!((r.avg_closed - 1.5).abs() < 1e-12);
        assert!((r.avg_direct.unwrap() - 1.5).abs() < 1e-12);
        assert!((avg_1del_uncorrected(2, 2) - 1.625).abs() < 1e-12);

        let r = avg_1del(3, 2, true, &cfg).unwrap();
        let expected = (2.0 * 1.792481250360578 + 2.0 * 1.918295834054489) / 4.0;
        assert!((r.avg_closed - expected).abs() < 1e-9);
        assert!((r.avg_closed - 1.85539).abs() < 1e-5);

        let r = avg_1ins(3, 2, true, &cfg).unwrap();
        assert!((r.avg_closed - r.avg_direct.unwrap()).abs() < 1e-12);
        assert!(r.avg_closed < r.max);
    }

    #[test]
    fn direct_average_skipped_above_cap() {
        let cfg = Config {
            max_space: 100,
            ..Config::default()
        };
        assert_eq!(avg_1del(12, 2, true, &cfg).unwrap().avg_direct, None);
    }

    #[test]
    fn weighted_geometric_matches_sum() {
        for m in 0..15 {
            for q in 2..5 {
                let x = 1.0 / q as f64;
                let brute: f64 = (1..m).map(|d| (m - d) as f64 * x.powi(d as i32)).sum();
                assert!((weighted_geometric(m, x) - brute).abs() < 1e-12, "m={m} q={q}");
            }
        }
    }

    #[test]
    fn lower_bound_below_log_nq() {
        for q in 2..5 {
            for n in 2..60 {
                let (d, _) = avg_lower_bounds(n, q).unwrap();
                assert!(d <= ((n * q) as f64).log2());
            }
        }
    }

    #[test]
    fn uncorrected_bound_overshoots_at_small_n() {
        assert!((del_lower_bound_uncorrected(2, 2) - 1.625).abs() < 1e-12);
        assert!(del_lower_bound_uncorrected(2, 2) > avg_1del_closed(2, 2));
        assert!(del_lower_bound_uncorrected(3, 2) > avg_1del_closed(3, 2));
        let (d, _) = avg_lower_bounds(100, 2).unwrap();
        assert!((d - del_lower_bound_uncorrected(100, 2)).abs() < 1e-9);
    }

    #[test]
    fn figure_rows() {
        let rows = figure_table(2, 6, 2).unwrap();
        assert_eq!(rows.len(), 5);
        assert!((rows[0].avg - 1.5).abs() < 1e-12);
        let r4 = rows[2];
        assert_eq!(r4.n, 4);
        assert!((r4.min - 2.0).abs() < 1e-12 && (r4.max - 2.25).abs() < 1e-12);
        assert!(r4.avg_lower_bound <= r4.avg && r4.avg <= r4.max);
        assert!(figure_table(5, 4, 2).is_err());
    }

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(1.5), "1.5");
        assert_eq!(format_sig12(2.0), "2");
        assert_eq!(format_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig12(2.1403195958), "2.1403195958");
        assert_eq!(format_sig12(6.372754931523819), "6.37275493152");
    }
}
