//! Exact partition counts.
//!
//! `p(n)` comes from Euler's pentagonal-number recurrence, `p_k(j)` (parts
//! at most `k`) from the coin-counting dynamic program. Both are checked
//! against an explicit enumeration oracle and against truncated expansions
//! of the generating functions
//!
//! ```text
//! sum_j p_k(j) q^j       = prod_{i=1}^{k} 1/(1-q^i)
//! sum_j j p_k(j) q^j     = (sum_{i=1}^{k} i q^i/(1-q^i)) * prod_{i=1}^{k} 1/(1-q^i)
//! ```

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::{Error, Nat, Result};

/// Largest `n` the enumeration oracle accepts by default.
pub const DEFAULT_ORACLE_CAP: usize = 60;

/// `p(0..=max_n)`, immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    values: Vec<Nat>,
}

impl PartitionTable {
    /// Builds `p(0..=max_n)` with the pentagonal-number recurrence.
    ///
    /// Panics if the computed values ever break `p(n) <= p(n-1) + p(n-2)`,
    /// which would mean the recurrence itself is broken.
    pub fn build(max_n: usize) -> Self {
        let mut values: Vec<Nat> = Vec::with_capacity(max_n + 1);
        values.push(BigUint::one());
        for n in 1..=max_n {
            let mut plus = BigUint::zero();
            let mut minus = BigUint::zero();
            for i in 1.. {
                let g1 = i * (3 * i - 1) / 2;
                if g1 > n {
                    break;
                }
                let g2 = i * (3 * i + 1) / 2;
                let acc = if i % 2 == 1 { &mut plus } else { &mut minus };
                *acc += &values[n - g1];
                if g2 <= n {
                    *acc += &values[n - g2];
                }
            }
            let value = plus - minus;
            if n >= 2 {
                assert!(
                    value <= &values[n - 1] + &values[n - 2],
                    "sub-Fibonacci bound broken at n = {n}"
                );
            }
            values.push(value);
        }
        PartitionTable { values }
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&Nat> {
        self.values.get(n)
    }

    /// `p(n)`, or an error when `n` is beyond the table.
    pub fn try_get(&self, n: usize) -> Result<&Nat> {
        self.values.get(n).ok_or(Error::TableTooShort {
            index: n,
            max: self.max_n(),
        })
    }

    pub fn values(&self) -> &[Nat] {
        &self.values
    }
}

impl std::ops::Index<usize> for PartitionTable {
    type Output = Nat;

    fn index(&self, n: usize) -> &Nat {
        &self.values[n]
    }
}

/// `p_k(0..=max_n)`: partitions of `j` with every part at most `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedTable {
    max_part: usize,
    values: Vec<Nat>,
}

impl RestrictedTable {
    pub fn build(max_part: usize, max_n: usize) -> Result<Self> {
        if max_part == 0 {
            return Err(Error::domain("restricted partitions need max_part >= 1"));
        }
        let mut values = vec![BigUint::zero(); max_n + 1];
        values[0] = BigUint::one();
        for part in 1..=max_part.min(max_n) {
            for j in part..=max_n {
                let (head, tail) = values.split_at_mut(j);
                tail[0] += &head[j - part];
            }
        }
        Ok(RestrictedTable { max_part, values })
    }

    pub fn max_part(&self) -> usize {
        self.max_part
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, j: usize) -> Option<&Nat> {
        self.values.get(j)
    }

    pub fn values(&self) -> &[Nat] {
        &self.values
    }
}

/// One partition, parts in nonincreasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PartitionMultiset {
    parts: Vec<usize>,
}

impl PartitionMultiset {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartitionMultiset { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn largest_part(&self) -> Option<usize> {
        self.parts.first().copied()
    }
}

impl fmt::Display for PartitionMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

/// All partitions of `n` with parts at most `max_part`, in ascending
/// lexicographic order, each exactly once.
pub fn enumerate_partitions(n: usize, max_part: usize) -> Result<Vec<PartitionMultiset>> {
    enumerate_partitions_capped(n, max_part, DEFAULT_ORACLE_CAP)
}

pub fn enumerate_partitions_capped(
    n: usize,
    max_part: usize,
    cap: usize,
) -> Result<Vec<PartitionMultiset>> {
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    if max_part == 0 {
        return Err(Error::domain("enumeration needs max_part >= 1"));
    }
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(n);
    extend_partitions(n, max_part, &mut stack, &mut out);
    Ok(out)
}

fn extend_partitions(
    remaining: usize,
    max_part: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<PartitionMultiset>,
) {
    if remaining == 0 {
        out.push(PartitionMultiset {
            parts: prefix.clone(),
        });
        return;
    }
    for part in 1..=max_part.min(remaining) {
        prefix.push(part);
        extend_partitions(remaining - part, part, prefix, out);
        prefix.pop();
    }
}

/// Which generating-function identity a coefficient check refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GenFunIdentity {
    /// `sum p_k(j) q^j = prod 1/(1-q^i)`
    Counts,
    /// `sum j p_k(j) q^j = (sum i q^i/(1-q^i)) prod 1/(1-q^i)`
    Weighted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenFunMismatch {
    pub identity: GenFunIdentity,
    pub index: usize,
    #[serde(with = "crate::decimal")]
    pub expected: Nat,
    #[serde(with = "crate::decimal")]
    pub found: Nat,
}

/// Expands both generating functions for parts `<= k` to `degree` and
/// compares every coefficient with the coin-counting table.
pub fn check_generating_functions(
    k: usize,
    degree: usize,
) -> Result<std::result::Result<(), GenFunMismatch>> {
    if k == 0 || degree == 0 {
        return Err(Error::domain("generating-function check needs k >= 1 and degree >= 1"));
    }
    let product = restricted_product_series(k, degree);
    let weights = weighted_log_derivative_series(k, degree);
    let weighted = mul_truncated(&weights, &product, degree);
    let table = RestrictedTable::build(k, degree)?;

    for (j, expected) in table.values().iter().enumerate() {
        if &product[j] != expected {
            return Ok(Err(GenFunMismatch {
                identity: GenFunIdentity::Counts,
                index: j,
                expected: expected.clone(),
                found: product[j].clone(),
            }));
        }
    }
    for (j, count) in table.values().iter().enumerate() {
        let expected = count * j;
        if weighted[j] != expected {
            return Ok(Err(GenFunMismatch {
                identity: GenFunIdentity::Weighted,
                index: j,
                expected,
                found: weighted[j].clone(),
            }));
        }
    }
    Ok(Ok(()))
}

/// Coefficients of `prod_{i=1}^{k} 1/(1-q^i)` up to `q^degree`, each factor
/// expanded as a truncated geometric series.
pub fn restricted_product_series(k: usize, degree: usize) -> Vec<Nat> {
    let mut acc = vec![BigUint::zero(); degree + 1];
    acc[0] = BigUint::one();
    for i in 1..=k.min(degree) {
        let mut geometric = vec![BigUint::zero(); degree + 1];
        for m in (0..=degree).step_by(i) {
            geometric[m] = BigUint::one();
        }
        acc = mul_truncated(&acc, &geometric, degree);
    }
    acc
}

/// Coefficients of `sum_{i=1}^{k} i q^i / (1-q^i)` up to `q^degree`.
pub fn weighted_log_derivative_series(k: usize, degree: usize) -> Vec<Nat> {
    let mut acc = vec![BigUint::zero(); degree + 1];
    for i in 1..=k.min(degree) {
        for m in (i..=degree).step_by(i) {
            acc[m] += i;
        }
    }
    acc
}

fn mul_truncated(a: &[Nat], b: &[Nat], degree: usize) -> Vec<Nat> {
    let mut out = vec![BigUint::zero(); degree + 1];
    for (i, x) in a.iter().enumerate().take(degree + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(degree + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}
