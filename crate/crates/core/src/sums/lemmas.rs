//! Exact sign and ratio facts about `p(n,k)` near the peak of row `n`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::binomial::binomial_row;
use crate::partitions::PartitionTable;
use crate::sums::PnkTriangle;
use crate::{Error, Nat, Result};

/// `a(n,k,j) = C(n-j, k-j) / C(n, k) = k(k-1)...(k-j+1) / (n(n-1)...(n-j+1))`.
pub fn a_ratio(n: usize, k: usize, j: usize) -> Result<BigRational> {
    if !(j <= k && k <= n) {
        return Err(Error::domain(format!(
            "a(n,k,j) needs j <= k <= n, got ({n},{k},{j})"
        )));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= k - i;
        den *= n - i;
    }
    Ok(BigRational::new(num, den))
}

/// `sum_{j=0}^{k} (n+1-2k+j) C(n-j, k-j) p(j)`, which equals
/// `(n+1-k) (2 p(n,k) - p(n+1,k))`.
///
/// Since `p(n+1,k) = p(n,k) + p(n,k-1)`, the sum is positive exactly when
/// `p(n,k-1) < p(n,k)`.
pub fn lemma_links_sum(n: usize, k: usize, table: &PartitionTable) -> Result<BigInt> {
    if !(1..=n).contains(&k) {
        return Err(Error::domain(format!("sign sum needs 1 <= k <= n, got n = {n}, k = {k}")));
    }
    table.try_get(k)?;
    let base = n as i64 + 1 - 2 * k as i64;
    let mut binom = BigUint::one();
    let mut sum = BigInt::zero();
    for j in (0..=k).rev() {
        if j < k {
            binom = binom * (n - j) / (k - j);
        }
        let weight = base + j as i64;
        if weight != 0 {
            sum += BigInt::from(weight) * BigInt::from(&binom * &table[j]);
        }
    }
    Ok(sum)
}

/// `sum_{j=0}^{terms-1} (j - offset) a(n,k,j) p(j)`, the head of the sign sum
/// divided by `C(n,k)`.
pub fn sign_sum_head(
    n: usize,
    k: usize,
    terms: usize,
    offset: i64,
    table: &PartitionTable,
) -> Result<BigRational> {
    if terms == 0 || terms - 1 > k {
        return Err(Error::domain("head length must be within 1..=k+1"));
    }
    table.try_get(terms - 1)?;
    let mut sum = BigRational::zero();
    for j in 0..terms {
        let weight = BigRational::from_integer(BigInt::from(j as i64 - offset));
        let p = BigRational::from_integer(BigInt::from(table[j].clone()));
        sum += weight * a_ratio(n, k, j)? * p;
    }
    Ok(sum)
}

/// For even `n` and `k = (n+2)/2`: the four-term head
/// `sum_{j=0}^{3} (j-1) a(n,k,j) p(j)` together with its closed form
/// `(n+14) / (4(n-1))`.
pub fn even_head_and_closed_form(n: usize, table: &PartitionTable) -> Result<(BigRational, BigRational)> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::domain(format!("even head needs even n >= 4, got {n}")));
    }
    let k = (n + 2) / 2;
    let head = sign_sum_head(n, k, 4, 1, table)?;
    let n = BigInt::from(n);
    let closed = BigRational::new(&n + 14, (&n - 1) * 4);
    Ok((head, closed))
}

/// For odd `n >= 11` and `k = (n+3)/2`: the eight-term head
/// `sum_{j=0}^{7} (j-2) a(n,k,j) p(j)` with its closed form
/// `5(11n^4 + 120n^3 - 2966n^2 + 9864n + 10251) / (128 n (n-2)(n-4)(n-6))`.
pub fn odd_head_and_closed_form(n: usize, table: &PartitionTable) -> Result<(BigRational, BigRational)> {
    if n < 11 || n % 2 != 1 {
        return Err(Error::domain(format!("odd head needs odd n >= 11, got {n}")));
    }
    let k = (n + 3) / 2;
    let head = sign_sum_head(n, k, 8, 2, table)?;
    let m = BigInt::from(n);
    let m2 = &m * &m;
    let m3 = &m2 * &m;
    let m4 = &m3 * &m;
    let num = (m4 * 11 + m3 * 120 - m2 * 2966 + &m * 9864 + 10251) * 5;
    let den = &m * (&m - 2) * (&m - 4) * (&m - 6) * 128;
    Ok((head, BigRational::new(num, den)))
}

/// Checks `sign_sum(n, floor((n+3)/2)) > 0` and `sign_sum(n, floor((n+3)/2) + 1) < 0`,
/// the two facts that pin the peak of row `n`.
pub fn peak_sign_check(n: usize, table: &PartitionTable) -> Result<(BigInt, BigInt)> {
    let k = crate::sums::peak_k(n)?;
    let at_peak = lemma_links_sum(n, k, table)?;
    let past_peak = lemma_links_sum(n, k + 1, table)?;
    if at_peak > BigInt::zero() {
        if past_peak < BigInt::zero() {
            return Ok((at_peak, past_peak));
        }
        return Err(Error::Counterexample {
            claim: "sign sum negative past the peak",
            n,
            k: k + 1,
        });
    }
    Err(Error::Counterexample {
        claim: "sign sum positive at the peak",
        n,
        k,
    })
}

/// `512 p(n,k) > 1745 C(n,k)` for `floor((n+5)/2) <= k <= n`.
pub fn lemma_gr_check(n: usize, triangle: &PnkTriangle) -> Result<()> {
    lemma_gr_row(n, triangle.try_row(n)?)
}

pub fn lemma_gr_row(n: usize, row: &[Nat]) -> Result<()> {
    if n < 4 {
        return Err(Error::domain(format!("lower bound lemma needs n >= 4, got {n}")));
    }
    let binoms = binomial_row(n);
    let start = (n + 5) / 2;
    for k in start..=n {
        if &row[k] * 512u32 <= &binoms[k] * 1745u32 {
            return Err(Error::Counterexample {
                claim: "512 p(n,k) > 1745 C(n,k)",
                n,
                k,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::binomial;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn a_ratio_examples() {
        assert_eq!(a_ratio(10, 6, 0).unwrap(), ratio(1, 1));
        assert_eq!(a_ratio(17, 5, 1).unwrap(), ratio(5, 17));
        assert_eq!(a_ratio(10, 6, 3).unwrap(), ratio(1, 6));
        assert!(a_ratio(5, 6, 1).is_err());
        assert!(a_ratio(5, 3, 4).is_err());
    }

    #[test]
    fn a_ratio_is_binomial_quotient() {
        for n in 0..30 {
            for k in 0..=n {
                for j in 0..=k {
                    let expected = BigRational::new(
                        BigInt::from(binomial(n - j, k - j)),
                        BigInt::from(binomial(n, k)),
                    );
                    assert_eq!(a_ratio(n, k, j).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn sign_sum_matches_triangle() {
        let tri = PnkTriangle::build(81);
        for n in 1..=80 {
            for k in 1..=n {
                let expected = (BigInt::from(tri.get(n, k).unwrap() * 2u32)
                    - BigInt::from(tri.get(n + 1, k).unwrap().clone()))
                    * (n + 1 - k);
                assert_eq!(lemma_links_sum(n, k, tri.partitions()).unwrap(), expected);
            }
        }
        assert!(lemma_links_sum(5, 0, tri.partitions()).is_err());
        assert!(lemma_links_sum(5, 6, tri.partitions()).is_err());
    }

    #[test]
    fn closed_forms() {
        let t = PartitionTable::build(10);
        let (head, closed) = even_head_and_closed_form(100, &t).unwrap();
        assert_eq!(head, closed);
        assert_eq!(closed, ratio(114, 396));
        let (head, closed) = odd_head_and_closed_form(101, &t).unwrap();
        assert_eq!(head, closed);
        assert!(even_head_and_closed_form(101, &t).is_err());
        assert!(odd_head_and_closed_form(9, &t).is_err());
    }

    #[test]
    fn peak_signs_small_n() {
        let t = PartitionTable::build(120);
        for n in 4..=119 {
            peak_sign_check(n, &t).unwrap();
        }
        assert!(peak_sign_check(3, &t).is_err());
    }

    #[test]
    fn lower_bound_lemma() {
        let tri = PnkTriangle::build(200);
        // p(4,4) = 12 against 1745/512 * C(4,4).
        assert_eq!(tri.get(4, 4).unwrap(), &BigUint::from(12u32));
        for n in 4..=200 {
            lemma_gr_check(n, &tri).unwrap();
        }
        let n50: Nat = "374834739612319".parse().unwrap();
        assert_eq!(tri.get(50, 28), Some(&n50));
        assert!(n50 * 512u32 > binomial(50, 28) * 1745u32);
        assert!(lemma_gr_check(3, &tri).is_err());
    }

    #[test]
    fn lower_bound_failure_is_reported() {
        let mut row: Vec<Nat> = PnkTriangle::build(10).row(10).unwrap().to_vec();
        row[9] = BigUint::one();
        assert_eq!(
            lemma_gr_row(10, &row),
            Err(Error::Counterexample {
                claim: "512 p(n,k) > 1745 C(n,k)",
                n: 10,
                k: 9
            })
        );
    }
}
