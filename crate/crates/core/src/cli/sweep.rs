//! Range sweeps behind `verify`, one per claim id.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::certified::{
    apostol_bound_check, lemma13_check, product_bound_row, prop1_value, prop2_value, stirling_binom_check,
    theorem3_row, Claim, MarginScale, Outcome, Point, PrecisionPolicy, VerificationReport,
};
use crate::partitions::{check_generating_functions, PartitionTable};
use crate::sums::{
    even_head_and_closed_form, lemma_gr_row, lemma_links_sum, odd_head_and_closed_form, peak_k, verify_unimodal_row,
    NearDiagonal, PnkRows,
};
use crate::{Error, Nat, Result};

/// Series degree for the generating-function checks.
pub const GENFUN_DEGREE: usize = 60;

/// Rows handed to the thread pool at a time by row-based sweeps.
const ROW_CHUNK: usize = 32;

/// Runs `claim` over `n_min..=n_max`.
pub fn sweep(claim: Claim, n_min: usize, n_max: usize, policy: &PrecisionPolicy) -> Result<VerificationReport> {
    if n_min < claim.min_n() {
        return Err(Error::domain(format!(
            "{claim} is stated for n >= {}, got n_min = {n_min}",
            claim.min_n()
        )));
    }
    if n_min > n_max {
        return Err(Error::domain(format!("empty range {n_min}..{n_max}")));
    }
    let parts = match claim {
        Claim::Thm2 => by_row(n_min, n_max, |n, row| exact(claim, n, 1, verify_unimodal_row(n, row).map(drop)))?,
        Claim::Thm3 => by_row(n_min, n_max, |n, row| Ok(theorem3_row(n, row)))?,
        Claim::LemmaGr => by_row(n_min, n_max, |n, row| {
            exact(claim, n, (n - (n + 5) / 2 + 1) as u64, lemma_gr_row(n, row))
        })?,
        Claim::Eq9 => by_row(n_min, n_max, |n, row| product_bound_row(n, row, policy))?,
        Claim::Prop1 | Claim::Prop2 => {
            let table = PartitionTable::build(n_max);
            let near = NearDiagonal::build(&table, n_max)?;
            by_n(n_min, n_max, |n| {
                if claim == Claim::Prop1 {
                    prop1_value(n, near.diagonal(n - 1).expect("built to n_max"), policy)
                } else {
                    prop2_value(n, near.subdiagonal(n).expect("built to n_max"), policy)
                }
            })?
        }
        Claim::LemmaLinks | Claim::LemmaRechts => {
            let table = PartitionTable::build(n_max);
            by_n(n_min, n_max, |n| sign_sum_at(claim, n, &table))?
        }
        Claim::Apostol => {
            let table = PartitionTable::build(n_max);
            by_n(n_min, n_max, |n| apostol_bound_check(n, &table, policy))?
        }
        Claim::Lemma13 => by_n(n_min, n_max, |n| lemma13_check(n, policy))?,
        Claim::Stirling => by_n(n_min, n_max, |n| stirling_binom_check(n, policy))?,
        Claim::Genfun => by_n(n_min, n_max, genfun_at)?,
    };
    let mut report = VerificationReport::merge(claim, parts);
    report.n_min = n_min;
    report.n_max = n_max;
    Ok(report)
}

fn by_n(
    n_min: usize,
    n_max: usize,
    check: impl Fn(usize) -> Result<VerificationReport> + Sync,
) -> Result<Vec<VerificationReport>> {
    (n_min..=n_max).into_par_iter().map(|n| check(n)).collect()
}

/// Streams the triangle, keeping at most [`ROW_CHUNK`] rows alive.
fn by_row(
    n_min: usize,
    n_max: usize,
    check: impl Fn(usize, &[Nat]) -> Result<VerificationReport> + Sync,
) -> Result<Vec<VerificationReport>> {
    let table = PartitionTable::build(n_max);
    let mut out = Vec::with_capacity(n_max - n_min + 1);
    let mut chunk = Vec::with_capacity(ROW_CHUNK);
    for (n, row) in PnkRows::new(&table, n_max).skip(n_min) {
        chunk.push((n, row));
        if chunk.len() == ROW_CHUNK || n == n_max {
            let done: Vec<_> = chunk.par_iter().map(|(n, row)| check(*n, row)).collect::<Result<_>>()?;
            out.extend(done);
            chunk.clear();
        }
    }
    Ok(out)
}

/// Wraps an exact check whose failure is an [`Error::Counterexample`].
fn exact(claim: Claim, n: usize, checked: u64, result: Result<()>) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(claim, n, MarginScale::Exact);
    report.checked = checked;
    match result {
        Ok(()) => Ok(report),
        Err(Error::Counterexample { n, k, .. }) => {
            report.fail(Outcome::Violated { at: Point::at(n, k) });
            Ok(report)
        }
        Err(e) => Err(e),
    }
}

/// The signed sum is positive at the peak column (`lemma-links`, which also
/// checks the matching closed-form head) and negative one column later
/// (`lemma-rechts`).
fn sign_sum_at(claim: Claim, n: usize, table: &PartitionTable) -> Result<VerificationReport> {
    let peak = peak_k(n)?;
    let mut report = VerificationReport::new(claim, n, MarginScale::Exact);
    let (k, ok) = if claim == Claim::LemmaLinks {
        (peak, lemma_links_sum(n, peak, table)? > BigInt::zero())
    } else {
        (peak + 1, lemma_links_sum(n, peak + 1, table)? < BigInt::zero())
    };
    report.checked = 1;
    if !ok {
        report.fail(Outcome::Violated { at: Point::at(n, k) });
        return Ok(report);
    }
    if claim == Claim::LemmaLinks {
        let identity = if n % 2 == 0 {
            Some(even_head_and_closed_form(n, table)?)
        } else if n >= 11 {
            Some(odd_head_and_closed_form(n, table)?)
        } else {
            None
        };
        if let Some((head, closed)) = identity {
            report.checked += 1;
            if head != closed {
                report.fail(Outcome::Violated { at: Point::at(n, peak) });
            }
        }
    }
    Ok(report)
}

/// Coefficient checks for restriction `k`; a mismatch is reported at
/// `(k, degree)`.
fn genfun_at(k: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(Claim::Genfun, k, MarginScale::Exact);
    report.checked = 2 * (GENFUN_DEGREE as u64 + 1);
    if let Err(mismatch) = check_generating_functions(k, GENFUN_DEGREE)? {
        report.fail(Outcome::Violated { at: Point::at(k, mismatch.index) });
    }
    Ok(report)
}
