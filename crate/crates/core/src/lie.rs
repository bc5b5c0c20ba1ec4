//! Upper bounds for the minimal faithful module dimension of a nilpotent Lie
//! algebra of dimension `n` and class `k`.

use num_traits::{One, Pow};
use serde::Serialize;

use crate::interval::{BoundReal, DEFAULT_PRECISION};
use crate::sums::PnkTriangle;
use crate::{Error, Nat, Result};

/// Digits used when a real enclosure is rendered for a report.
const REPORT_DIGITS: u32 = 20;

/// `1 + n + n^2 + ... + n^(k+1)`.
pub fn birkhoff_bound(n: usize, k: usize) -> Result<Nat> {
    check_positive(n, k)?;
    let n = Nat::from(n);
    let mut sum = Nat::one();
    let mut power = Nat::one();
    for _ in 0..=k {
        power *= &n;
        sum += &power;
    }
    Ok(sum)
}

/// `1 + n^k`.
pub fn reed_bound(n: usize, k: usize) -> Result<Nat> {
    check_positive(n, k)?;
    Ok(Nat::one() + Pow::pow(Nat::from(n), k))
}

fn check_positive(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::domain(format!("bounds need n >= 1 and k >= 1, got n={n}, k={k}")));
    }
    Ok(())
}

/// Dimension and nilpotency class of a nonabelian nilpotent Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NilpotentProfile {
    dim_n: usize,
    class_k: usize,
}

impl NilpotentProfile {
    pub fn new(dim_n: usize, class_k: usize) -> Result<Self> {
        if class_k == 0 || class_k >= dim_n {
            return Err(Error::domain(format!(
                "nilpotency class must satisfy 1 <= k <= n-1, got n={dim_n}, k={class_k}"
            )));
        }
        Ok(NilpotentProfile { dim_n, class_k })
    }

    pub fn dim_n(&self) -> usize {
        self.dim_n
    }

    pub fn class_k(&self) -> usize {
        self.class_k
    }

    /// Maximal class for the dimension.
    pub fn is_filiform(&self) -> bool {
        self.class_k + 1 == self.dim_n
    }
}

/// `p(n,k)`.
pub fn pnk_bound(profile: &NilpotentProfile, triangle: &PnkTriangle) -> Result<Nat> {
    triangle
        .get(profile.dim_n, profile.class_k)
        .cloned()
        .ok_or(Error::TableTooShort {
            index: profile.dim_n,
            max: triangle.max_n(),
        })
}

/// `1 + p(n-2,n-2)`, valid for filiform algebras.
pub fn filiform_bound(n: usize, triangle: &PnkTriangle) -> Result<Nat> {
    if n < 2 {
        return Err(Error::domain(format!("filiform bound needs n >= 2, got {n}")));
    }
    let diag = triangle.get(n - 2, n - 2).ok_or(Error::TableTooShort {
        index: n - 2,
        max: triangle.max_n(),
    })?;
    Ok(diag + 1u32)
}

/// Enclosure of `3 * 2^n / sqrt(n)`.
pub fn corollary_bound(n: usize) -> Result<BoundReal> {
    if n == 0 {
        return Err(Error::domain("corollary bound needs n >= 1"));
    }
    let prec = DEFAULT_PRECISION;
    let numerator = BoundReal::from_biguint(&(Nat::from(3u32) << n), prec);
    Ok(&numerator / &BoundReal::from_int(n as i64, prec).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Pnk,
    Filiform,
    Reed,
    Birkhoff,
}

/// Decimal rendering of an enclosure, rounded outward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enclosure {
    pub lower: String,
    pub upper: String,
}

impl Enclosure {
    pub fn of(x: &BoundReal, digits: u32) -> Self {
        let (lower, upper) = x.to_decimal_pair(digits);
        Enclosure { lower, upper }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MuBoundReport {
    pub n: usize,
    pub k: usize,
    #[serde(with = "crate::decimal")]
    pub birkhoff: Nat,
    #[serde(with = "crate::decimal")]
    pub reed: Nat,
    #[serde(with = "crate::decimal")]
    pub pnk: Nat,
    #[serde(with = "crate::decimal::option", skip_serializing_if = "Option::is_none")]
    pub filiform_bound: Option<Nat>,
    pub corollary_numeric: Enclosure,
    /// Whether `p(n,k)` is below the corollary enclosure's lower end.
    pub pnk_below_corollary: bool,
    pub pnk_beats_reed: bool,
    pub best: BoundKind,
    #[serde(with = "crate::decimal")]
    pub best_value: Nat,
}

/// Every applicable bound for the profile; `with_filiform` adds the
/// filiform bound and requires `k = n-1`.
pub fn best_bound(profile: &NilpotentProfile, triangle: &PnkTriangle, with_filiform: bool) -> Result<MuBoundReport> {
    let pnk = pnk_bound(profile, triangle)?;
    let filiform = with_filiform
        .then(|| filiform_bound(profile.dim_n, triangle))
        .transpose()?;
    MuBoundReport::from_values(profile, pnk, filiform)
}

impl MuBoundReport {
    /// Assembles the report from `p(n,k)` and, for filiform profiles, the
    /// filiform bound `1 + p(n-2,n-2)`.
    pub fn from_values(profile: &NilpotentProfile, pnk: Nat, filiform: Option<Nat>) -> Result<Self> {
        let (n, k) = (profile.dim_n, profile.class_k);
        if filiform.is_some() && !profile.is_filiform() {
            return Err(Error::domain(format!("filiform bound applies only to k = n-1, got n={n}, k={k}")));
        }
        let birkhoff = birkhoff_bound(n, k)?;
        let reed = reed_bound(n, k)?;
        let corollary = corollary_bound(n)?;

        // Candidates in tie-break order: on equal values the earlier kind wins.
        let mut candidates = vec![(BoundKind::Pnk, &pnk)];
        if let Some(f) = &filiform {
            candidates.push((BoundKind::Filiform, f));
        }
        candidates.push((BoundKind::Reed, &reed));
        candidates.push((BoundKind::Birkhoff, &birkhoff));
        let (best, best_value) = candidates
            .into_iter()
            .min_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)))
            .map(|(kind, v)| (kind, v.clone()))
            .expect("nonempty");

        Ok(MuBoundReport {
            n,
            k,
            pnk_below_corollary: BoundReal::from_biguint(&pnk, corollary.precision_bits()).certainly_lt(&corollary),
            pnk_beats_reed: pnk < reed,
            corollary_numeric: Enclosure::of(&corollary, REPORT_DIGITS),
            birkhoff,
            reed,
            pnk,
            filiform_bound: filiform,
            best,
            best_value,
        })
    }
}
