//! Binary-expansion utilities: digit sequences, the order |n|, the variation
//! V(n), and running sums of V used by the asymptotic-ratio sweeps.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// The little-endian binary digit sequence of a nonnegative integer.
///
/// Index k holds the digit of weight 2^k; trailing zeros are omitted, so the
/// last stored digit is 1 unless the source is 0 (empty sequence).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryDigits {
    source: u64,
    digits: Vec<u8>,
}

impl BinaryDigits {
    pub fn new(source: u64) -> Self {
        let mut digits = Vec::new();
        let mut rest = source;
        while rest != 0 {
            digits.push((rest & 1) as u8);
            rest >>= 1;
        }
        BinaryDigits { source, digits }
    }

    pub fn source(&self) -> u64 {
        self.source
    }

    /// Digit of weight 2^k (zero beyond the stored length).
    pub fn digit(&self, k: usize) -> u8 {
        self.digits.get(k).copied().unwrap_or(0)
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// The variation evaluated literally as the defining sum
    /// d_0 + sum_{k >= 1} |d_k - d_{k-1}|. Terms vanish once k exceeds the
    /// stored length by one, so the sum is finite.
    pub fn variation_by_definition(&self) -> u64 {
        let mut total = u64::from(self.digit(0));
        for k in 1..=self.digits.len() {
            total += u64::from(self.digit(k).abs_diff(self.digit(k - 1)));
        }
        total
    }
}

/// The order |n|: the position of the leading binary digit, so that
/// 2^|n| <= n < 2^(|n|+1). Undefined for n = 0.
pub fn order(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::OrderOfZero);
    }
    Ok(63 - n.leading_zeros())
}

/// The variation V(n): the number of transitions in the binary digit
/// sequence of n padded with a leading and a trailing zero. Equivalent to the
/// defining sum d_0 + sum |d_k - d_{k-1}|; computed here as a single
/// popcount of n XOR 2n.
pub fn variation(n: u64) -> u64 {
    let wide = n as u128;
    u64::from((wide ^ (wide << 1)).count_ones())
}

/// Running sums of V: entry n-1 holds V(1) + ... + V(n), computed in one
/// incremental pass. Unbounded integers so large sweeps cannot overflow.
pub fn variation_prefix_sums(n_max: u64) -> Vec<BigInt> {
    let mut sums = Vec::with_capacity(n_max as usize);
    let mut running = BigInt::from(0u32);
    for n in 1..=n_max {
        running += variation(n);
        sums.push(running.clone());
    }
    sums
}
