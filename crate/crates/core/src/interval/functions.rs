//! Certified `exp`, `ln` and the constants `pi`, `ln 2`.
//!
//! Each function evaluates a truncated series in interval arithmetic and
//! adds an explicit bound on the discarded tail, at a few guard bits above
//! the requested precision.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use super::{BoundReal, Dyadic, Round};

const GUARD_BITS: u32 = 24;

fn magnitude(x: &BoundReal) -> Dyadic {
    x.lo().abs().max(x.hi().abs())
}

/// `x + [-r, r]`.
fn widen(x: &BoundReal, r: &Dyadic) -> BoundReal {
    let prec = x.precision_bits();
    BoundReal::new(
        x.lo().sub_round(r, prec, Round::Down),
        x.hi().add_round(r, prec, Round::Up),
        prec,
    )
}

fn cached(
    cache: &'static OnceLock<Mutex<HashMap<u32, BoundReal>>>,
    prec: u32,
    compute: impl FnOnce(u32) -> BoundReal,
) -> BoundReal {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("constant cache poisoned").get(&prec) {
        return v.clone();
    }
    let v = compute(prec);
    map.lock()
        .expect("constant cache poisoned")
        .insert(prec, v.clone());
    v
}

/// `atan(1/x)` for an integer `x >= 2`, alternating series with the first
/// omitted term as tail bound.
fn atan_inv(x: u32, wp: u32) -> BoundReal {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let stop = Dyadic::pow2(-(i64::from(wp) + 4));
    let mut sum = BoundReal::from_int(0, wp);
    let mut power = x.clone();
    let mut i: u32 = 0;
    loop {
        let term = BoundReal::from_ratio(&BigInt::from(1), &(&power * (2 * i + 1)), wp);
        sum = if i % 2 == 0 { &sum + &term } else { &sum - &term };
        if term.hi() < &stop {
            return widen(&sum, term.hi());
        }
        power *= &x2;
        i += 1;
    }
}

/// `atanh(t) = t + t^3/3 + t^5/5 + ...` for `|t| <= 1/2`.
fn atanh(t: &BoundReal, wp: u32) -> BoundReal {
    assert!(
        magnitude(t) <= Dyadic::pow2(-1),
        "atanh series used outside |t| <= 1/2"
    );
    let t = t.with_precision(wp);
    let t2 = t.square();
    let stop = Dyadic::pow2(-(i64::from(wp) + 4));
    let mut power = t.clone();
    let mut sum = t.clone();
    let mut i: i64 = 1;
    while magnitude(&power) >= stop {
        power = &power * &t2;
        let term = &power / &BoundReal::from_int(2 * i + 1, wp);
        sum = &sum + &term;
        i += 1;
    }
    // Tail: |sum_{m>=i} t^(2m+1)/(2m+1)| <= |t|^(2i+1) / ((2i+1)(1-t^2)) <= 2|t|^(2i+1).
    let tail = magnitude(&(&power * &t2)).mul_pow2(1);
    widen(&sum, &tail)
}

/// Enclosure of pi at `prec` bits (Machin's formula).
pub fn pi(prec: u32) -> BoundReal {
    static CACHE: OnceLock<Mutex<HashMap<u32, BoundReal>>> = OnceLock::new();
    cached(&CACHE, prec, |prec| {
        let wp = prec + GUARD_BITS;
        let a = atan_inv(5, wp).mul_pow2(4);
        let b = atan_inv(239, wp).mul_pow2(2);
        (&a - &b).with_precision(prec)
    })
}

/// Enclosure of ln 2 at `prec` bits, `2 atanh(1/3)`.
pub fn ln2(prec: u32) -> BoundReal {
    static CACHE: OnceLock<Mutex<HashMap<u32, BoundReal>>> = OnceLock::new();
    cached(&CACHE, prec, |prec| {
        let wp = prec + GUARD_BITS;
        let third = BoundReal::from_ratio(&BigInt::from(1), &BigInt::from(3), wp);
        atanh(&third, wp).mul_pow2(1).with_precision(prec)
    })
}

/// `e^d` for an exact dyadic `d`.
fn exp_point(d: &Dyadic, prec: u32) -> BoundReal {
    // Scale down to |r| <= 2^-8, sum the Taylor series, then square back up.
    let halvings = (d.top() + 8).max(0);
    let wp = prec + GUARD_BITS + halvings as u32;
    let r = BoundReal::point(d.mul_pow2(-halvings), wp);
    let stop = Dyadic::pow2(-(i64::from(wp) + 4));
    let mut sum = BoundReal::from_int(1, wp);
    let mut term = BoundReal::from_int(1, wp);
    let mut i: i64 = 1;
    loop {
        term = &(&term * &r) / &BoundReal::from_int(i, wp);
        sum = &sum + &term;
        if magnitude(&term) < stop {
            break;
        }
        i += 1;
    }
    // With |r| <= 2^-8 the remaining terms total less than the last one.
    let mut acc = widen(&sum, &magnitude(&term));
    for _ in 0..halvings {
        acc = acc.square();
    }
    acc.with_precision(prec)
}

/// `ln d` for an exact dyadic `d > 0`.
fn ln_point(d: &Dyadic, prec: u32) -> BoundReal {
    assert!(d.is_positive(), "logarithm of a nonpositive value");
    // d = y * 2^e with y in (2/3, 4/3].
    let mut e = d.exponent() + d.mantissa().bits() as i64 - 1;
    let mut y = d.mul_pow2(-e);
    if y.mul_exact(&Dyadic::from_int(3)) > Dyadic::from_int(4) {
        y = y.mul_pow2(-1);
        e += 1;
    }
    let wp = prec + GUARD_BITS + (64 - e.unsigned_abs().leading_zeros());
    let y = BoundReal::point(y, wp);
    let one = BoundReal::from_int(1, wp);
    let t = &(&y - &one) / &(&y + &one);
    let log_y = atanh(&t, wp).mul_pow2(1);
    let log_two = &ln2(wp) * &BoundReal::from_int(e, wp);
    (&log_y + &log_two).with_precision(prec)
}

pub(super) fn exp(x: &BoundReal) -> BoundReal {
    let prec = x.precision_bits();
    let lo = exp_point(x.lo(), prec);
    let hi = if x.lo() == x.hi() {
        lo.clone()
    } else {
        exp_point(x.hi(), prec)
    };
    BoundReal::new(lo.lo().clone(), hi.hi().clone(), prec)
}

pub(super) fn ln(x: &BoundReal) -> BoundReal {
    assert!(x.lo().is_positive(), "logarithm of an interval reaching zero or below");
    let prec = x.precision_bits();
    let lo = ln_point(x.lo(), prec);
    let hi = if x.lo() == x.hi() {
        lo.clone()
    } else {
        ln_point(x.hi(), prec)
    };
    BoundReal::new(lo.lo().clone(), hi.hi().clone(), prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn decimal(s: &str) -> BigRational {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let digits: BigInt = format!("{int}{frac}").parse().unwrap();
        BigRational::new(digits, num_traits::pow(BigInt::from(10), frac.len()))
    }

    // Reference digits (truncated) from standard tables.
    const PI_40: &str = "3.1415926535897932384626433832795028841971";
    const LN2_40: &str = "0.6931471805599453094172321214581765680755";
    const E_40: &str = "2.7182818284590452353602874713526624977572";

    fn assert_tight(x: &BoundReal, truncated: &str, digits: usize) {
        let lo = decimal(truncated);
        let hi = &lo + BigRational::new(1.into(), num_traits::pow(BigInt::from(10), digits));
        // The true value lies in [lo, hi]; the enclosure must meet that range.
        assert!(x.hi().cmp_rational(&lo) != std::cmp::Ordering::Less, "{x} below {truncated}");
        assert!(x.lo().cmp_rational(&hi) != std::cmp::Ordering::Greater, "{x} above {truncated}");
    }

    #[test]
    fn constants() {
        for prec in [64, 128, 256, 1024] {
            let p = pi(prec);
            assert_tight(&p, PI_40, 40);
            assert!(p.width() <= Dyadic::pow2(3 - i64::from(prec)));
            assert_tight(&ln2(prec), LN2_40, 40);
        }
    }

    #[test]
    fn exp_and_ln_agree() {
        let one = BoundReal::from_int(1, 160);
        let e = one.exp();
        assert_tight(&e, E_40, 40);
        assert!(e.ln().contains(&Dyadic::one()));

        let zero = BoundReal::from_int(0, 64).exp();
        assert!(zero.contains(&Dyadic::one()));

        for v in [-700i64, -3, 5, 80, 1000] {
            let x = BoundReal::from_int(v, 200);
            let round_trip = x.exp().ln();
            assert!(round_trip.contains(&Dyadic::from_int(v)), "exp/ln round trip at {v}");
            assert!(round_trip.width() < Dyadic::pow2(-150));
        }
    }

    #[test]
    fn ln_of_powers_of_two() {
        let l = BoundReal::from_int(1 << 20, 128).ln();
        let expected = &ln2(128) * &BoundReal::from_int(20, 128);
        assert!(l.intersect(&expected).is_some());
        let small = BoundReal::point(Dyadic::pow2(-30), 128).ln();
        assert!(small.hi().is_negative());
    }

    #[test]
    fn monotone_on_intervals() {
        let x = BoundReal::new(Dyadic::from_int(2), Dyadic::from_int(3), 96);
        let y = x.exp();
        assert!(y.contains_rational(&decimal("7.3891")));
        assert!(y.contains_rational(&decimal("20.0855")));
        assert!(!y.contains_rational(&decimal("7.3890")));
        assert!(!y.contains_rational(&decimal("20.0856")));
        let z = x.ln();
        assert!(z.contains_rational(&decimal("0.6931472")));
        assert!(z.contains_rational(&decimal("1.0986122")));
        assert!(!z.contains_rational(&decimal("1.0986123")));
    }
}
