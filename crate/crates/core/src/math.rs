//! Small exact-integer and floating helpers shared by the entropy code.

use crate::error::{Error, Result};

/// Binomial coefficient with overflow detection.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binomial"))?
            / (i as u128 + 1);
    }
    Ok(acc)
}

pub fn checked_pow(base: u64, exp: u64) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base as u128)
            .ok_or(Error::Overflow("power"))?;
    }
    Ok(acc)
}

/// `x * log2(x)` with the convention `0 log 0 = 0`.
pub fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `g(r) = (r+1) log(r+1) - r log r`; strictly increasing for r >= 1.
pub fn run_gain(r: f64) -> f64 {
    xlog2x(r + 1.0) - xlog2x(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(10, 0).unwrap(), 1);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(60, 30).unwrap(), 118_264_581_564_861_424);
    }

    #[test]
    fn binomial_overflow_is_reported() {
        assert_eq!(binomial(400, 200), Err(Error::Overflow("binomial")));
    }

    #[test]
    fn run_gain_strictly_increasing() {
        let mut prev = run_gain(1.0);
        for r in 2..=1_000_000u32 {
            let g = run_gain(r as f64);
            assert!(g > prev, "g not increasing at r={r}");
            prev = g;
        }
    }
}
