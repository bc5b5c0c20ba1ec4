//! The generic sum `F(n, l) = sum_{j=0}^{n} C(n-j, l) f(j)` and the
//! unimodality of its rows.
//!
//! With `f = p` and `l = n - k` this is `p(n,k)`. Growth conditions on `f`
//! that make every row unimodal are checked by
//! [`check_proposition_conditions`].

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::partitions::PartitionTable;
use crate::sums::PnkTriangle;
use crate::{Error, Nat, Result};

/// A sequence `f(0..=N)` of naturals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSequence {
    values: Vec<Nat>,
}

impl WeightedSequence {
    pub fn new(values: Vec<Nat>) -> Self {
        assert!(!values.is_empty(), "a weighted sequence needs f(0)");
        WeightedSequence { values }
    }

    pub fn from_fn(max_n: usize, f: impl FnMut(usize) -> Nat) -> Self {
        Self::new((0..=max_n).map(f).collect())
    }

    pub fn constant_one(max_n: usize) -> Self {
        Self::from_fn(max_n, |_| BigUint::from(1u32))
    }

    pub fn partitions(table: &PartitionTable) -> Self {
        Self::new(table.values().to_vec())
    }

    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&Nat> {
        self.values.get(n)
    }
}

/// `F(n, l) = sum_{j=0}^{n} C(n-j, l) f(j)`; terms with `n - j < l` vanish.
pub fn generic_f(f: &WeightedSequence, n: usize, ell: usize) -> Result<Nat> {
    if f.max_n() < n {
        return Err(Error::TableTooShort {
            index: n,
            max: f.max_n(),
        });
    }
    if ell > n {
        return Ok(BigUint::zero());
    }
    // j runs from n - ell down to 0, so C(n-j, ell) grows from C(ell, ell) = 1.
    let mut binom = BigUint::from(1u32);
    let mut sum = f.values[n - ell].clone();
    for m in ell + 1..=n {
        // C(m, ell) = C(m-1, ell) * m / (m - ell)
        binom = binom * m / (m - ell);
        sum += &binom * &f.values[n - m];
    }
    Ok(sum)
}

/// Outcome of one growth condition on `0..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionOutcome {
    pub holds: bool,
    pub counterexample: Option<usize>,
}

impl ConditionOutcome {
    fn from_first_failure(failure: Option<usize>) -> Self {
        ConditionOutcome {
            holds: failure.is_none(),
            counterexample: failure,
        }
    }
}

/// The three growth conditions, each checked on `0..=N`:
///
/// - (a) `f(n) > 0` for all n, and `f(3) <= 2 f(0) + f(1)`;
/// - (b) `f(n+1) >= f(n)`;
/// - (c) `f(n) < f(0) + ... + f(n-1)` for `n >= 3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub max_n: usize,
    pub positive_start: ConditionOutcome,
    pub nondecreasing: ConditionOutcome,
    pub below_prefix_sum: ConditionOutcome,
}

impl PropositionReport {
    pub fn all_hold(&self) -> bool {
        self.positive_start.holds && self.nondecreasing.holds && self.below_prefix_sum.holds
    }
}

pub fn check_proposition_conditions(f: &WeightedSequence, max_n: usize) -> Result<PropositionReport> {
    if f.max_n() < max_n {
        return Err(Error::TableTooShort {
            index: max_n,
            max: f.max_n(),
        });
    }
    let v = &f.values[..=max_n];

    let mut a = v.iter().position(Zero::is_zero);
    if a.is_none() && max_n >= 3 && v[3] > &v[0] * 2u32 + &v[1] {
        a = Some(3);
    }

    let b = (0..max_n).find(|&n| v[n + 1] < v[n]).map(|n| n + 1);

    let mut c = None;
    let mut prefix: Nat = v.iter().take(3).sum();
    for (n, value) in v.iter().enumerate().skip(3) {
        if value >= &prefix {
            c = Some(n);
            break;
        }
        prefix += value;
    }

    Ok(PropositionReport {
        max_n,
        positive_start: ConditionOutcome::from_first_failure(a),
        nondecreasing: ConditionOutcome::from_first_failure(b),
        below_prefix_sum: ConditionOutcome::from_first_failure(c),
    })
}

/// The maximizer `floor((n+3)/2)` of row `n`, claimed for `n >= 4`.
///
/// Smaller rows are rejected: row 3 has a genuine tie `F(3,0) = F(3,1)`.
pub fn peak_k(n: usize) -> Result<usize> {
    if n < 4 {
        return Err(Error::PeakUndefined(n));
    }
    Ok((n + 3) / 2)
}

/// Shape of row `n` over `1 <= k <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnimodalProfile {
    pub n: usize,
    /// `p(n, 1..=n)`; `values[i]` is `p(n, i+1)`.
    #[serde(skip)]
    pub values: Vec<Nat>,
    /// Index of the first maximum, in `1..=n`.
    pub peak_k: usize,
    pub unique_max: bool,
    /// Strictly increasing on `1..=peak_k`.
    pub strict_up: bool,
    /// Strictly decreasing on `peak_k..=n`.
    pub strict_down: bool,
}

impl UnimodalProfile {
    /// Scans `row = p(n, 0..=n)` restricted to `k >= 1`.
    pub fn scan(row: &[Nat]) -> Self {
        let n = row.len() - 1;
        assert!(n >= 1, "profile needs at least p(n,1)");
        let values = row[1..].to_vec();
        let mut peak = 0;
        for (i, v) in values.iter().enumerate() {
            if v > &values[peak] {
                peak = i;
            }
        }
        let unique_max = values
            .iter()
            .enumerate()
            .all(|(i, v)| i == peak || v < &values[peak]);
        let strict_up = values[..=peak].windows(2).all(|w| w[0] < w[1]);
        let strict_down = values[peak..].windows(2).all(|w| w[0] > w[1]);
        UnimodalProfile {
            n,
            values,
            peak_k: peak + 1,
            unique_max,
            strict_up,
            strict_down,
        }
    }

    pub fn peak_value(&self) -> &Nat {
        &self.values[self.peak_k - 1]
    }
}

/// Checks that row `n` rises strictly up to `floor((n+3)/2)` and falls
/// strictly after it.
pub fn verify_unimodal_profile(n: usize, triangle: &PnkTriangle) -> Result<UnimodalProfile> {
    verify_unimodal_row(n, triangle.try_row(n)?)
}

/// Same as [`verify_unimodal_profile`] on an explicit row `p(n, 0..=n)`.
pub fn verify_unimodal_row(n: usize, row: &[Nat]) -> Result<UnimodalProfile> {
    let peak = peak_k(n)?;
    if row.len() != n + 1 {
        return Err(Error::domain(format!("row {n} must have {} entries", n + 1)));
    }
    for k in 1..n {
        let ok = if k < peak {
            row[k] < row[k + 1]
        } else {
            row[k] > row[k + 1]
        };
        if !ok {
            return Err(Error::Counterexample {
                claim: "unimodality",
                n,
                k: k + 1,
            });
        }
    }
    let profile = UnimodalProfile::scan(row);
    debug_assert_eq!(profile.peak_k, peak);
    Ok(profile)
}
