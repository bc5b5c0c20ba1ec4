use num_bigint::BigInt;
use num_rational::BigRational;

use super::report::{certify_less, MarginScale, Outcome, Point, PrecisionPolicy, VerificationReport};
use super::tail::{EulerProductScan, PartialProduct};
use super::Claim;
use crate::binomial::binomial;
use crate::interval::{pi, BoundReal, Decision, Dyadic};
use crate::partitions::PartitionTable;
use crate::sums::PnkTriangle;
use crate::{Error, Nat, Result};

/// Depth cap for the partial products used against `p(n,k)`.
pub const PRODUCT_DEPTH_CAP: usize = 256;

/// `alpha = pi * sqrt(2/3)`.
pub fn alpha(prec: u32) -> BoundReal {
    let two_thirds = BoundReal::from_ratio(&BigInt::from(2), &BigInt::from(3), prec);
    &pi(prec) * &two_thirds.sqrt()
}

fn sqrt_int(n: usize, prec: u32) -> BoundReal {
    BoundReal::from_int(n as i64, prec).sqrt()
}

/// `(rhs - lhs) / rhs` for positive exact integers, as a float.
fn relative_gap(lhs: &BigInt, rhs: &BigInt) -> f64 {
    Dyadic::from_ratio(&(rhs - lhs), rhs, 64, crate::interval::Round::Down).to_f64()
}

fn row_of(triangle: &PnkTriangle, n: usize) -> Result<&[Nat]> {
    triangle.row(n).ok_or(Error::TableTooShort {
        index: n,
        max: triangle.max_n(),
    })
}

/// `1600 n p(n,k)^2 < 12769 * 4^n` for every `1 <= k <= n`; integers only.
pub fn theorem3_check(n: usize, triangle: &PnkTriangle) -> Result<VerificationReport> {
    Ok(theorem3_row(n, row_of(triangle, n)?))
}

pub fn theorem3_row(n: usize, row: &[Nat]) -> VerificationReport {
    let mut report = VerificationReport::new(Claim::Thm3, n, MarginScale::Relative);
    let rhs = BigInt::from(12769u32) << (2 * n);
    let lhs_of = |p: &Nat| BigInt::from(1600u64 * n as u64) * BigInt::from(p * p);
    for (k, p) in row.iter().enumerate().skip(1) {
        report.checked += 1;
        if lhs_of(p) >= rhs {
            report.fail(Outcome::Violated { at: Point::at(n, k) });
            return report;
        }
    }
    // The tightest column is the row maximum.
    if let Some((k, p)) = row.iter().enumerate().skip(1).max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))) {
        report.record_margin(relative_gap(&lhs_of(p), &rhs), Point::at(n, k));
    }
    report
}

/// `C(n, floor((n+3)/2))^2 * pi * n / 2 < 4^n`.
pub fn stirling_binom_check(n: usize, policy: &PrecisionPolicy) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::domain("stirling check needs n >= 1"));
    }
    let k = (n + 3) / 2;
    let c = binomial(n, k);
    let lhs_int = &c * &c * Nat::from(n);
    let rhs_int = BigInt::from(1) << (2 * n + 1);
    let result = certify_less(policy, |prec| {
        let lhs = &BoundReal::from_biguint(&lhs_int, prec) * &pi(prec);
        (lhs, BoundReal::from_bigint(&rhs_int, prec))
    });
    let mut report = VerificationReport::new(Claim::Stirling, n, MarginScale::Relative);
    let margin = (&result.rhs - &result.lhs) / result.rhs.clone();
    report.record(&result, margin.to_f64(), Point::at(n, k));
    Ok(report)
}

/// `ln p(n) < ln(pi / sqrt(6n)) + alpha sqrt(n)`.
pub fn apostol_bound_check(n: usize, table: &PartitionTable, policy: &PrecisionPolicy) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::domain("apostol bound needs n >= 1"));
    }
    let p = table.try_get(n)?;
    let result = certify_less(policy, |prec| {
        let lhs = BoundReal::from_biguint(p, prec).ln();
        let six_n = BoundReal::from_int(6 * n as i64, prec);
        let rhs = &(&pi(prec).ln() - &six_n.ln().mul_pow2(-1)) + &(&alpha(prec) * &sqrt_int(n, prec));
        (lhs, rhs)
    });
    let mut report = VerificationReport::new(Claim::Apostol, n, MarginScale::Log);
    report.record(&result, result.gap(), Point::row(n));
    Ok(report)
}

/// `sqrt(n)/(sqrt(n+1) - 1) < 1 + pi/sqrt(6n) < exp(alpha sqrt(n) (sqrt(1+1/n) - 1))`.
pub fn lemma13_check(n: usize, policy: &PrecisionPolicy) -> Result<VerificationReport> {
    if n < 3 {
        return Err(Error::domain(format!("lemma 13 is stated for n >= 3, got {n}")));
    }
    let middle = |prec| {
        let six_n = BoundReal::from_int(6 * n as i64, prec);
        &BoundReal::from_int(1, prec) + &(&pi(prec) / &six_n.sqrt())
    };
    let left = certify_less(policy, |prec| {
        let root_next = sqrt_int(n + 1, prec);
        let lhs = &sqrt_int(n, prec) / &(&root_next - &BoundReal::from_int(1, prec));
        (lhs, middle(prec))
    });
    let right = certify_less(policy, |prec| {
        // alpha sqrt(n) (sqrt(1+1/n) - 1) = alpha / (sqrt(n+1) + sqrt(n)), free of cancellation.
        let exponent = &alpha(prec) / &(&sqrt_int(n + 1, prec) + &sqrt_int(n, prec));
        (middle(prec), exponent.exp())
    });
    let mut report = VerificationReport::new(Claim::Lemma13, n, MarginScale::Absolute);
    report.record(&left, left.gap(), Point::row(n));
    report.record(&right, right.gap(), Point::row(n));
    Ok(report)
}

/// `ln p(n-1,n-1) < alpha sqrt(n)`, given the value `p(n-1,n-1)`.
pub fn prop1_value(n: usize, diagonal: &Nat, policy: &PrecisionPolicy) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::domain("proposition 1 needs n >= 1"));
    }
    let result = certify_less(policy, |prec| {
        let lhs = BoundReal::from_biguint(diagonal, prec).ln();
        (lhs, &alpha(prec) * &sqrt_int(n, prec))
    });
    let mut report = VerificationReport::new(Claim::Prop1, n, MarginScale::Log);
    report.record(&result, result.gap(), Point::at(n, n - 1));
    Ok(report)
}

pub fn prop1_check(n: usize, triangle: &PnkTriangle, policy: &PrecisionPolicy) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::domain("proposition 1 needs n >= 1"));
    }
    let value = triangle.get(n - 1, n - 1).ok_or(Error::TableTooShort {
        index: n - 1,
        max: triangle.max_n(),
    })?;
    prop1_value(n, value, policy)
}

/// `ln p(n,n-1) < ln(n)/2 + alpha sqrt(n)`, given the value `p(n,n-1)`.
pub fn prop2_value(n: usize, subdiagonal: &Nat, policy: &PrecisionPolicy) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::domain("proposition 2 needs n >= 1"));
    }
    let result = certify_less(policy, |prec| {
        let lhs = BoundReal::from_biguint(subdiagonal, prec).ln();
        let half_log = BoundReal::from_int(n as i64, prec).ln().mul_pow2(-1);
        (lhs, &half_log + &(&alpha(prec) * &sqrt_int(n, prec)))
    });
    let mut report = VerificationReport::new(Claim::Prop2, n, MarginScale::Log);
    report.record(&result, result.gap(), Point::at(n, n - 1));
    Ok(report)
}

pub fn prop2_check(n: usize, triangle: &PnkTriangle, policy: &PrecisionPolicy) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::domain("proposition 2 needs n >= 1"));
    }
    let value = triangle.get(n, n - 1).ok_or(Error::TableTooShort {
        index: n,
        max: triangle.max_n(),
    })?;
    prop2_value(n, value, policy)
}

/// `p(n,k) < C(n,k) * prod_{j=1}^{d} 1/(1-(k/n)^j)` for some depth `d` up to
/// [`PRODUCT_DEPTH_CAP`]; the partial product lower-bounds the infinite one.
pub fn product_bound_value(n: usize, k: usize, pnk: &Nat, policy: &PrecisionPolicy) -> Result<VerificationReport> {
    if k == 0 || k >= n {
        return Err(Error::domain(format!("product bound needs 1 <= k <= n-1, got n={n}, k={k}")));
    }
    let c = binomial(n, k);
    let mut report = VerificationReport::new(Claim::Eq9, n, MarginScale::Relative);
    report.checked = 1;
    for prec in policy.schedule() {
        report.precision_bits = prec;
        let lhs = BoundReal::from_biguint(pnk, prec);
        let c = BoundReal::from_biguint(&c, prec);
        let q = BoundReal::from_ratio(&BigInt::from(k), &BigInt::from(n), prec);
        let mut decision = Decision::Unknown;
        let checkpoints = std::iter::successors(Some(8usize), |d| Some(d * 2)).take_while(|&d| d <= PRODUCT_DEPTH_CAP);
        let mut products = PartialProduct::new(&q).enumerate();
        for depth in checkpoints {
            let (_, product) = products.find(|(d, _)| *d == depth).expect("infinite");
            let rhs = &c * &product;
            decision = lhs.compare(&rhs);
            if decision == Decision::Less {
                let margin = (&rhs - &lhs) / rhs;
                report.record_margin(margin.to_f64(), Point::at(n, k));
                return Ok(report);
            }
        }
        // The partial product only bounds the right side from below, so a
        // clear "greater" at the cap is not a refutation; more precision
        // cannot change it either.
        if decision == Decision::Greater {
            break;
        }
    }
    report.fail(Outcome::Inconclusive { at: Point::at(n, k) });
    Ok(report)
}

pub fn product_bound_check(n: usize, k: usize, triangle: &PnkTriangle, policy: &PrecisionPolicy) -> Result<VerificationReport> {
    let pnk = triangle.get(n, k).ok_or(Error::TableTooShort {
        index: n,
        max: triangle.max_n(),
    })?;
    product_bound_value(n, k, pnk, policy)
}

/// All columns `1 <= k <= n-1` of one row.
pub fn product_bound_row(n: usize, row: &[Nat], policy: &PrecisionPolicy) -> Result<VerificationReport> {
    let parts = (1..n)
        .map(|k| product_bound_value(n, k, &row[k], policy))
        .collect::<Result<Vec<_>>>()?;
    let mut merged = VerificationReport::merge(Claim::Eq9, parts);
    merged.n_min = n;
    merged.n_max = n;
    Ok(merged)
}

/// Enclosure of `p(n,k) / (C(n,k) F(k/n))`. Reported for inspection only.
pub fn asymptotic_ratio(n: usize, k: usize, triangle: &PnkTriangle) -> Result<BoundReal> {
    let pnk = triangle.get(n, k).ok_or(Error::TableTooShort {
        index: n,
        max: triangle.max_n(),
    })?;
    asymptotic_ratio_value(n, k, pnk, crate::interval::DEFAULT_PRECISION)
}

pub fn asymptotic_ratio_value(n: usize, k: usize, pnk: &Nat, prec: u32) -> Result<BoundReal> {
    if k == 0 || k >= n {
        return Err(Error::domain(format!("ratio needs 1 <= k <= n-1, got n={n}, k={k}")));
    }
    let q = BigRational::new(BigInt::from(k), BigInt::from(n));
    let f = product_enclosure_to(&q, prec, 1e-15)?;
    let denom = &BoundReal::from_biguint(&binomial(n, k), prec) * &f;
    Ok(&BoundReal::from_biguint(pnk, prec) / &denom)
}

/// Smallest-`l` enclosure of `F(q)` with relative width below `rel_tol`;
/// the scan is cut off after a few hundred thousand factors.
fn product_enclosure_to(q: &BigRational, prec: u32, rel_tol: f64) -> Result<BoundReal> {
    const MAX_ELL: usize = 1 << 19;
    let mut last = None;
    for (ell, enclosure) in EulerProductScan::new(q, prec) {
        let rel = enclosure.width().to_f64() / enclosure.lo().to_f64();
        if rel <= rel_tol || ell >= MAX_ELL {
            return Ok(enclosure);
        }
        last = Some(enclosure);
    }
    last.ok_or_else(|| Error::domain("empty product scan"))
}
