//! Outward-rounded interval arithmetic.
//!
//! A [`BoundReal`] is a closed interval `[lo, hi]` with dyadic endpoints.
//! Every operation rounds the lower endpoint down and the upper endpoint
//! up at the interval's working precision, so the true value of any
//! expression stays inside the computed interval. Comparisons between
//! intervals are only decided when the intervals are disjoint.

mod dyadic;
mod functions;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

pub use dyadic::{Dyadic, Round};
pub use functions::{ln2, pi};

/// Working precision the certified checks start from.
pub const DEFAULT_PRECISION: u32 = 128;

/// Default ceiling for precision escalation.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

/// A real number known to lie in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReal {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

/// Result of comparing two enclosures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Less,
    Greater,
    /// The intervals overlap; more precision may separate them.
    Unknown,
}

impl BoundReal {
    /// The interval `[lo, hi]` rounded outward to `prec` bits.
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        BoundReal {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        BoundReal::new(x.clone(), x, prec)
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        BoundReal::point(Dyadic::from_int(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        BoundReal::point(Dyadic::from_bigint(v.clone()), prec)
    }

    pub fn from_biguint(v: &BigUint, prec: u32) -> Self {
        BoundReal::from_bigint(&BigInt::from(v.clone()), prec)
    }

    /// Enclosure of `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        BoundReal {
            lo: Dyadic::from_ratio(num, den, prec, Round::Down),
            hi: Dyadic::from_ratio(num, den, prec, Round::Up),
            prec,
        }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        BoundReal::from_ratio(r.numer(), r.denom(), prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision_bits(&self) -> u32 {
        self.prec
    }

    /// `(lo + hi) / 2`, exact.
    pub fn midpoint(&self) -> Dyadic {
        self.lo.add_exact(&self.hi).mul_pow2(-1)
    }

    /// `(hi - lo) / 2`, exact.
    pub fn radius(&self) -> Dyadic {
        self.hi.sub_exact(&self.lo).mul_pow2(-1)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub_exact(&self.lo)
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        self.lo.cmp_rational(r) != Ordering::Greater && self.hi.cmp_rational(r) != Ordering::Less
    }

    /// Same interval tagged with a different working precision for later operations.
    pub fn with_precision(&self, prec: u32) -> Self {
        BoundReal::new(self.lo.clone(), self.hi.clone(), prec)
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Self) -> Self {
        BoundReal {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    /// Intersection, when both enclose the same value; `None` if disjoint.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| BoundReal {
            lo,
            hi,
            prec: self.prec.max(other.prec),
        })
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// `self < other` holds for every pair of values in the two intervals.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &Self) -> bool {
        other.certainly_lt(self)
    }

    pub fn compare(&self, other: &Self) -> Decision {
        if self.certainly_lt(other) {
            Decision::Less
        } else if self.certainly_gt(other) {
            Decision::Greater
        } else {
            Decision::Unknown
        }
    }

    /// `other.lo - self.hi`: positive exactly when `self < other` is certain.
    pub fn gap_below(&self, other: &Self) -> Dyadic {
        other.lo.sub_exact(&self.hi)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        BoundReal {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn square(&self) -> Self {
        let prec = self.prec;
        if !self.lo.is_negative() {
            BoundReal {
                lo: self.lo.mul_round(&self.lo, prec, Round::Down),
                hi: self.hi.mul_round(&self.hi, prec, Round::Up),
                prec,
            }
        } else if !self.hi.is_positive() {
            BoundReal {
                lo: self.hi.mul_round(&self.hi, prec, Round::Down),
                hi: self.lo.mul_round(&self.lo, prec, Round::Up),
                prec,
            }
        } else {
            let m = self.lo.abs().max(self.hi.abs());
            BoundReal {
                lo: Dyadic::zero(),
                hi: m.mul_round(&m, prec, Round::Up),
                prec,
            }
        }
    }

    /// `self^e` by repeated multiplication.
    pub fn powu(&self, e: u32) -> Self {
        let mut acc = BoundReal::from_int(1, self.prec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn recip(&self) -> Self {
        &BoundReal::from_int(1, self.prec) / self
    }

    /// Square root; the interval must not reach below zero.
    pub fn sqrt(&self) -> Self {
        assert!(!self.lo.is_negative(), "square root of an interval reaching below zero");
        BoundReal {
            lo: self.lo.sqrt_round(self.prec, Round::Down),
            hi: self.hi.sqrt_round(self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn exp(&self) -> Self {
        functions::exp(self)
    }

    /// Natural logarithm; the interval must be strictly positive.
    pub fn ln(&self) -> Self {
        functions::ln(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// `[lo, hi]` with outward decimal rounding.
    pub fn to_decimal_pair(&self, digits: u32) -> (String, String) {
        (
            self.lo.to_decimal(digits, Round::Down),
            self.hi.to_decimal(digits, Round::Up),
        )
    }
}

impl fmt::Display for BoundReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal_pair(20);
        write!(f, "[{lo}, {hi}]")
    }
}

impl Add for &BoundReal {
    type Output = BoundReal;

    fn add(self, rhs: &BoundReal) -> BoundReal {
        let prec = self.prec.max(rhs.prec);
        BoundReal {
            lo: self.lo.add_round(&rhs.lo, prec, Round::Down),
            hi: self.hi.add_round(&rhs.hi, prec, Round::Up),
            prec,
        }
    }
}

impl Sub for &BoundReal {
    type Output = BoundReal;

    fn sub(self, rhs: &BoundReal) -> BoundReal {
        let prec = self.prec.max(rhs.prec);
        BoundReal {
            lo: self.lo.sub_round(&rhs.hi, prec, Round::Down),
            hi: self.hi.sub_round(&rhs.lo, prec, Round::Up),
            prec,
        }
    }
}

impl Neg for &BoundReal {
    type Output = BoundReal;

    fn neg(self) -> BoundReal {
        BoundReal {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }
}

impl Mul for &BoundReal {
    type Output = BoundReal;

    fn mul(self, rhs: &BoundReal) -> BoundReal {
        let prec = self.prec.max(rhs.prec);
        if !self.lo.is_negative() && !rhs.lo.is_negative() {
            return BoundReal {
                lo: self.lo.mul_round(&rhs.lo, prec, Round::Down),
                hi: self.hi.mul_round(&rhs.hi, prec, Round::Up),
                prec,
            };
        }
        let products = [
            self.lo.mul_exact(&rhs.lo),
            self.lo.mul_exact(&rhs.hi),
            self.hi.mul_exact(&rhs.lo),
            self.hi.mul_exact(&rhs.hi),
        ];
        let lo = products.iter().min().expect("four products");
        let hi = products.iter().max().expect("four products");
        BoundReal {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }
}

impl Div for &BoundReal {
    type Output = BoundReal;

    /// Panics when the divisor interval contains zero.
    fn div(self, rhs: &BoundReal) -> BoundReal {
        assert!(
            rhs.lo.is_positive() || rhs.hi.is_negative(),
            "interval division by an interval containing zero"
        );
        let prec = self.prec.max(rhs.prec);
        let pairs = [
            (&self.lo, &rhs.lo),
            (&self.lo, &rhs.hi),
            (&self.hi, &rhs.lo),
            (&self.hi, &rhs.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(a, b)| a.div_round(b, prec, Round::Down))
            .min()
            .expect("four quotients");
        let hi = pairs
            .iter()
            .map(|(a, b)| a.div_round(b, prec, Round::Up))
            .max()
            .expect("four quotients");
        BoundReal { lo, hi, prec }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for BoundReal {
            type Output = BoundReal;
            fn $method(self, rhs: BoundReal) -> BoundReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&BoundReal> for BoundReal {
            type Output = BoundReal;
            fn $method(self, rhs: &BoundReal) -> BoundReal {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);
