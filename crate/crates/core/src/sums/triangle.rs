use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::partitions::PartitionTable;
use crate::{Error, Nat, Result};

/// `p(n,k) = sum_{j=0}^{k} C(n-j, k-j) p(j)`, summed term by term.
pub fn pnk_direct(n: usize, k: usize, table: &PartitionTable) -> Result<Nat> {
    if k > n {
        return Err(Error::domain(format!("p(n,k) needs k <= n, got n = {n}, k = {k}")));
    }
    table.try_get(k)?;
    // Walk j downward from k so C(n-j, k-j) can be updated in place:
    // C(m+1, r+1) = C(m, r) * (m+1) / (r+1).
    let mut binom = BigUint::one();
    let mut sum = table[k].clone();
    for j in (0..k).rev() {
        binom = binom * (n - j) / (k - j);
        sum += &binom * &table[j];
    }
    Ok(sum)
}

/// Row `n + 1` from row `n` via `p(n+1,k) = p(n,k) + p(n,k-1)`.
///
/// The two ends are `p(n+1,0) = 1` and `p(n+1,n+1) = p(n,n) + p(n+1)`.
pub fn next_row(prev: &[Nat], p_next: &Nat) -> Vec<Nat> {
    let n = prev.len() - 1;
    let mut row = Vec::with_capacity(n + 2);
    row.push(BigUint::one());
    for k in 1..=n {
        row.push(&prev[k] + &prev[k - 1]);
    }
    row.push(&prev[n] + p_next);
    row
}

/// The rows of the `p(n,k)` triangle for `0 <= k <= n <= max_n`.
///
/// Rows are built by the addition recursion starting from row 0, and each
/// row is spot-checked against [`pnk_direct`] at `k = 0, 1, n`.
#[derive(Debug, Clone)]
pub struct PnkTriangle {
    partitions: PartitionTable,
    rows: Vec<Vec<Nat>>,
}

impl PnkTriangle {
    pub fn build(max_n: usize) -> Self {
        let table = PartitionTable::build(max_n);
        Self::from_table(table, max_n).expect("table sized to max_n")
    }

    pub fn from_table(partitions: PartitionTable, max_n: usize) -> Result<Self> {
        if partitions.max_n() < max_n {
            return Err(Error::TableTooShort {
                index: max_n,
                max: partitions.max_n(),
            });
        }
        let mut rows: Vec<Vec<Nat>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=max_n {
            let row = next_row(&rows[n - 1], &partitions[n]);
            spot_check(n, &row, &partitions);
            rows.push(row);
        }
        Ok(PnkTriangle { partitions, rows })
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn partitions(&self) -> &PartitionTable {
        &self.partitions
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&Nat> {
        self.rows.get(n)?.get(k)
    }

    /// `p(n, 0..=n)`.
    pub fn row(&self, n: usize) -> Option<&[Nat]> {
        self.rows.get(n).map(Vec::as_slice)
    }

    pub(crate) fn try_row(&self, n: usize) -> Result<&[Nat]> {
        self.row(n).ok_or(Error::TableTooShort {
            index: n,
            max: self.max_n(),
        })
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Nat]> {
        self.rows.iter().map(Vec::as_slice)
    }
}

/// Streams rows `0..=max_n` of the triangle, keeping only the latest row.
///
/// Useful for sweeps whose full triangle would not fit in memory. Rows are
/// shared behind `Arc` so they can be handed to worker threads.
pub struct PnkRows<'a> {
    partitions: &'a PartitionTable,
    max_n: usize,
    current: Option<Arc<Vec<Nat>>>,
}

impl<'a> PnkRows<'a> {
    pub fn new(partitions: &'a PartitionTable, max_n: usize) -> Self {
        assert!(partitions.max_n() >= max_n, "partition table shorter than max_n");
        PnkRows {
            partitions,
            max_n,
            current: None,
        }
    }

    /// Only the last row, in O(max_n) memory.
    pub fn final_row(partitions: &'a PartitionTable, n: usize) -> Vec<Nat> {
        let mut rows = PnkRows::new(partitions, n);
        let mut last = rows.next().expect("row 0 always exists").1;
        for (_, row) in rows.by_ref() {
            last = row;
        }
        drop(rows);
        Arc::try_unwrap(last).unwrap_or_else(|shared| (*shared).clone())
    }
}

impl Iterator for PnkRows<'_> {
    type Item = (usize, Arc<Vec<Nat>>);

    fn next(&mut self) -> Option<Self::Item> {
        let row = match &self.current {
            None => vec![BigUint::one()],
            Some(prev) => {
                let n = prev.len() - 1;
                if n >= self.max_n {
                    return None;
                }
                next_row(prev, &self.partitions[n + 1])
            }
        };
        let n = row.len() - 1;
        spot_check(n, &row, self.partitions);
        let row = Arc::new(row);
        self.current = Some(Arc::clone(&row));
        Some((n, row))
    }
}

fn spot_check(n: usize, row: &[Nat], partitions: &PartitionTable) {
    for k in [0, 1, n] {
        if k > n {
            continue;
        }
        let direct = pnk_direct(n, k, partitions).expect("k <= n within table");
        assert_eq!(row[k], direct, "triangle recursion disagrees with direct sum at ({n},{k})");
    }
}

/// `p(n,n)` and `p(n,n-1)` for all `n <= max_n` without the rest of the triangle.
///
/// `p(n+1,n+1) = p(n,n) + p(n+1)` and `p(n+1,n) = p(n,n) + p(n,n-1)`.
#[derive(Debug, Clone)]
pub struct NearDiagonal {
    diagonal: Vec<Nat>,
    subdiagonal: Vec<Nat>,
}

impl NearDiagonal {
    pub fn build(partitions: &PartitionTable, max_n: usize) -> Result<Self> {
        partitions.try_get(max_n)?;
        let mut diagonal = Vec::with_capacity(max_n + 1);
        let mut subdiagonal = Vec::with_capacity(max_n + 1);
        diagonal.push(BigUint::one());
        // Placeholder: p(0,-1) is not defined.
        subdiagonal.push(BigUint::default());
        for n in 1..=max_n {
            let sub = if n == 1 {
                BigUint::one()
            } else {
                &diagonal[n - 1] + &subdiagonal[n - 1]
            };
            let diag = &diagonal[n - 1] + &partitions[n];
            diagonal.push(diag);
            subdiagonal.push(sub);
        }
        Ok(NearDiagonal {
            diagonal,
            subdiagonal,
        })
    }

    pub fn max_n(&self) -> usize {
        self.diagonal.len() - 1
    }

    /// `p(n,n)`.
    pub fn diagonal(&self, n: usize) -> Option<&Nat> {
        self.diagonal.get(n)
    }

    /// `p(n,n-1)`, defined for `n >= 1`.
    pub fn subdiagonal(&self, n: usize) -> Option<&Nat> {
        if n == 0 {
            return None;
        }
        self.subdiagonal.get(n)
    }
}
