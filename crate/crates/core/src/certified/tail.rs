//! Enclosures of the Euler product `F(q) = prod_{j>=1} 1/(1-q^j)` and of
//! `S(q) = sum_{j>=1} j q^j/(1-q^j)` for rational `0 < q < 1`.
//!
//! Lower bounds are the finite partial products and sums (every omitted
//! factor exceeds 1, every omitted term is positive). Upper bounds come
//! from the tail estimates
//!
//! ```text
//! F(q) < exp(q^l / (1-q)^2) * prod_{j<l} 1/(1-q^j)
//! S(q) < q/(1-q)^3 + sum_{j<l} j q^j (q^j - q) / ((1-q^j)(1-q))
//! ```
//!
//! valid for every `l >= 2`. Both right-hand sides decrease in `l`; the
//! scans below keep the running minimum, so the enclosures they return
//! tighten monotonically as `l` grows even under rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::interval::{BoundReal, DEFAULT_PRECISION};
use crate::{Error, Result};

/// `q` in `(0,1)` and the split point `l >= 2` of the tail estimates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailParams {
    q: BigRational,
    ell: usize,
}

impl TailParams {
    pub fn new(q: BigRational, ell: usize) -> Result<Self> {
        if !(q > BigRational::zero() && q < BigRational::one()) {
            return Err(Error::domain(format!("q must lie in (0,1), got {q}")));
        }
        if ell < 2 {
            return Err(Error::domain(format!("tail split needs l >= 2, got {ell}")));
        }
        Ok(TailParams { q, ell })
    }

    pub fn from_ratio(num: i64, den: i64, ell: usize) -> Result<Self> {
        if den == 0 {
            return Err(Error::domain("q has a zero denominator"));
        }
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)), ell)
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn ell(&self) -> usize {
        self.ell
    }
}

/// Successive enclosures of `F(q)` for `l = 2, 3, ...`.
pub struct EulerProductScan {
    q: BoundReal,
    one: BoundReal,
    /// `1 / (1-q)^2`
    tail_scale: BoundReal,
    ell: usize,
    /// `prod_{j<ell} 1/(1-q^j)`
    partial: BoundReal,
    /// `q^ell`
    q_pow: BoundReal,
    best_upper: Option<BoundReal>,
}

impl EulerProductScan {
    pub fn new(q: &BigRational, prec: u32) -> Self {
        let q = BoundReal::from_rational(q, prec);
        let one = BoundReal::from_int(1, prec);
        let one_minus_q = &one - &q;
        let tail_scale = one_minus_q.square().recip();
        let partial = one_minus_q.recip();
        let q_pow = q.square();
        EulerProductScan {
            q,
            one,
            tail_scale,
            ell: 2,
            partial,
            q_pow,
            best_upper: None,
        }
    }
}

impl Iterator for EulerProductScan {
    /// `(l, enclosure)` with enclosure `[partial product, min upper bound so far]`.
    type Item = (usize, BoundReal);

    fn next(&mut self) -> Option<Self::Item> {
        let upper = &(&self.q_pow * &self.tail_scale).exp() * &self.partial;
        let best = match self.best_upper.take() {
            Some(b) if b.hi() <= upper.hi() => b,
            _ => upper,
        };
        let item = (
            self.ell,
            BoundReal::new(self.partial.lo().clone(), best.hi().clone(), self.q.precision_bits()),
        );
        self.best_upper = Some(best);

        self.partial = &self.partial / &(&self.one - &self.q_pow);
        self.q_pow = &self.q_pow * &self.q;
        self.ell += 1;
        Some(item)
    }
}

/// Successive enclosures of `S(q)` for `l = 2, 3, ...`.
pub struct WeightedSumScan {
    q: BoundReal,
    one: BoundReal,
    one_minus_q: BoundReal,
    /// `q / (1-q)^3`
    head: BoundReal,
    ell: usize,
    /// `sum_{j<ell} j q^j/(1-q^j)`
    partial: BoundReal,
    /// `sum_{j<ell} j q^j (q^j - q)/((1-q^j)(1-q))`
    correction: BoundReal,
    /// `q^(ell-1)`
    q_pow: BoundReal,
    best_upper: Option<BoundReal>,
}

impl WeightedSumScan {
    pub fn new(q: &BigRational, prec: u32) -> Self {
        let q = BoundReal::from_rational(q, prec);
        let one = BoundReal::from_int(1, prec);
        let one_minus_q = &one - &q;
        let head = &q / &one_minus_q.powu(3);
        // l = 2 includes the single j = 1 term, whose correction is zero.
        let partial = &q / &one_minus_q;
        WeightedSumScan {
            q_pow: q.clone(),
            correction: BoundReal::from_int(0, prec),
            q,
            one,
            one_minus_q,
            head,
            ell: 2,
            partial,
            best_upper: None,
        }
    }

    /// Term `j` of the finite sum and of the upper-bound correction.
    fn step_terms(&self, j: usize) -> (BoundReal, BoundReal) {
        let prec = self.q.precision_bits();
        let j_real = BoundReal::from_int(j as i64, prec);
        let denom = &self.one - &self.q_pow;
        let term = &(&j_real * &self.q_pow) / &denom;
        let corr = &(&term * &(&self.q_pow - &self.q)) / &self.one_minus_q;
        (term, corr)
    }
}

impl Iterator for WeightedSumScan {
    type Item = (usize, BoundReal);

    fn next(&mut self) -> Option<Self::Item> {
        let upper = &self.head + &self.correction;
        let best = match self.best_upper.take() {
            Some(b) if b.hi() <= upper.hi() => b,
            _ => upper,
        };
        let item = (
            self.ell,
            BoundReal::new(self.partial.lo().clone(), best.hi().clone(), self.q.precision_bits()),
        );
        self.best_upper = Some(best);

        // Move term j = ell into the finite part.
        self.q_pow = &self.q_pow * &self.q;
        let (term, corr) = self.step_terms(self.ell);
        self.partial = &self.partial + &term;
        self.correction = &self.correction + &corr;
        self.ell += 1;
        Some(item)
    }
}

/// Enclosure `[prod_{j<l} 1/(1-q^j), upper bound]` of `F(q)` at the default precision.
pub fn euler_product_upper(params: &TailParams) -> BoundReal {
    euler_product_enclosure(params, DEFAULT_PRECISION)
}

pub fn euler_product_enclosure(params: &TailParams, prec: u32) -> BoundReal {
    let (_, enclosure) = EulerProductScan::new(params.q(), prec)
        .nth(params.ell() - 2)
        .expect("scan is infinite");
    enclosure
}

/// Enclosure `[sum_{j<l} j q^j/(1-q^j), upper bound]` of `S(q)` at the default precision.
pub fn weighted_sum_upper(params: &TailParams) -> BoundReal {
    weighted_sum_enclosure(params, DEFAULT_PRECISION)
}

pub fn weighted_sum_enclosure(params: &TailParams, prec: u32) -> BoundReal {
    let (_, enclosure) = WeightedSumScan::new(params.q(), prec)
        .nth(params.ell() - 2)
        .expect("scan is infinite");
    enclosure
}

/// The first enclosure of `F(q)` whose width is at most `tol`, scanning
/// `l = 2..=max_ell`. Returns `Err` with the last enclosure if none is.
pub fn euler_product_to_width(
    q: &BigRational,
    tol: &BigRational,
    prec: u32,
    max_ell: usize,
) -> std::result::Result<(usize, BoundReal), (usize, BoundReal)> {
    let mut last = None;
    for (ell, enclosure) in EulerProductScan::new(q, prec).take(max_ell.saturating_sub(1)) {
        if enclosure.width().cmp_rational(tol) != std::cmp::Ordering::Greater {
            return Ok((ell, enclosure));
        }
        last = Some((ell, enclosure));
    }
    Err(last.unwrap_or_else(|| (2, EulerProductScan::new(q, prec).next().expect("infinite").1)))
}

/// Enclosure of the finite product `prod_{j=1}^{depth} 1/(1-q^j)`; a lower
/// bound for `F(q)`.
pub fn euler_partial_product(q: &BoundReal, depth: usize) -> BoundReal {
    PartialProduct::new(q).nth(depth).expect("infinite")
}

/// Finite products `prod_{j=1}^{d} 1/(1-q^j)` for `d = 0, 1, 2, ...`.
pub struct PartialProduct {
    q: BoundReal,
    one: BoundReal,
    q_pow: BoundReal,
    product: BoundReal,
}

impl PartialProduct {
    pub fn new(q: &BoundReal) -> Self {
        let one = BoundReal::from_int(1, q.precision_bits());
        PartialProduct {
            q: q.clone(),
            q_pow: q.clone(),
            product: one.clone(),
            one,
        }
    }
}

impl Iterator for PartialProduct {
    type Item = BoundReal;

    fn next(&mut self) -> Option<BoundReal> {
        let current = self.product.clone();
        self.product = &self.product / &(&self.one - &self.q_pow);
        self.q_pow = &self.q_pow * &self.q;
        Some(current)
    }
}
