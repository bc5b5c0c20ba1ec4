use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for every inexact operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

impl Round {
    pub fn reverse(self) -> Self {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// The exact number `mantissa * 2^exponent`.
///
/// Kept normalized: the mantissa is odd, or zero with exponent 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn shift_round(m: &BigInt, shift: u64, dir: Round) -> BigInt {
    // BigInt >> rounds toward negative infinity.
    match dir {
        Round::Down => m >> shift,
        Round::Up => -((-m) >> shift),
    }
}

fn div_round(num: &BigInt, den: &BigInt, dir: Round) -> BigInt {
    match dir {
        Round::Down => num.div_floor(den),
        Round::Up => -((-num).div_floor(den)),
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: e,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn signum(&self) -> Sign {
        self.mant.sign()
    }

    /// `|x| < 2^top` and, for nonzero `x`, `|x| >= 2^(top-1)`.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 4
        } else {
            self.exp + self.mant.bits() as i64
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    /// `x * 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Nearest representable value with at most `prec` mantissa bits, in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= u64::from(prec) {
            return self.clone();
        }
        let shift = bits - u64::from(prec);
        Dyadic::new(shift_round(&self.mant, shift, dir), self.exp + shift as i64)
    }

    pub fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub_exact(&self, other: &Self) -> Self {
        self.add_exact(&other.neg())
    }

    pub fn mul_exact(&self, other: &Self) -> Self {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// `round(self + other)`. Operands far below the last kept bit of the
    /// larger one are replaced by a bound on the correct side, so adding a
    /// tiny value never builds a huge exact sum.
    pub fn add_round(&self, other: &Self, prec: u32, dir: Round) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.add_exact(other).round(prec, dir);
        }
        let (big, small) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        let cutoff = big.top() - i64::from(prec) - 4;
        if small.top() < cutoff {
            let replacement = match (dir, small.is_negative()) {
                (Round::Down, false) | (Round::Up, true) => Dyadic::zero(),
                (Round::Down, true) => Dyadic::pow2(cutoff).neg(),
                (Round::Up, false) => Dyadic::pow2(cutoff),
            };
            return big.add_exact(&replacement).round(prec, dir);
        }
        self.add_exact(other).round(prec, dir)
    }

    pub fn sub_round(&self, other: &Self, prec: u32, dir: Round) -> Self {
        self.add_round(&other.neg(), prec, dir)
    }

    pub fn mul_round(&self, other: &Self, prec: u32, dir: Round) -> Self {
        self.mul_exact(other).round(prec, dir)
    }

    /// `round(self / other)`; panics on division by zero.
    pub fn div_round(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = i64::from(prec) + 2 + other.mant.bits() as i64 - self.mant.bits() as i64;
        let shift = want.max(0) as u64;
        let num = &self.mant << shift;
        let q = div_round(&num, &other.mant, dir);
        Dyadic::new(q, self.exp - other.exp - shift as i64).round(prec, dir)
    }

    /// `round(sqrt(self))`; panics on negative input.
    pub fn sqrt_round(&self, prec: u32, dir: Round) -> Self {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let bits = self.mant.bits() as i64;
        let mut shift = (2 * i64::from(prec) + 4 - bits).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let scaled: BigUint = (&self.mant << shift as u64)
            .to_biguint()
            .expect("nonnegative");
        let mut root = scaled.sqrt();
        if dir == Round::Up && &root * &root != scaled {
            root += 1u32;
        }
        Dyadic::new(BigInt::from(root), (self.exp - shift) / 2).round(prec, dir)
    }

    /// `round(num / den)` for integers.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, dir: Round) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Dyadic::from_bigint(num.clone()).div_round(&Dyadic::from_bigint(den.clone()), prec, dir)
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        // Compare mant * 2^exp * den with numer (den > 0 in BigRational).
        let (mut lhs, mut rhs) = (&self.mant * r.denom(), r.numer().clone());
        if self.exp >= 0 {
            lhs <<= self.exp as u64;
        } else {
            rhs <<= (-self.exp) as u64;
        }
        lhs.cmp(&rhs)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Nearest-ish `f64`; used only for reporting.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (m, e) = if bits > 64 {
            let shift = bits - 64;
            (&self.mant >> shift, self.exp + shift as i64)
        } else {
            (self.mant.clone(), self.exp)
        };
        let m = m.to_f64().expect("fits in f64");
        let e = e.clamp(-4000, 4000) as i32;
        // Split the scaling so an intermediate power of two does not over/underflow.
        let half = e / 2;
        m * 2f64.powi(half) * 2f64.powi(e - half)
    }

    /// Decimal rendering with `digits` significant digits, rounded in direction `dir`.
    pub fn to_decimal(&self, digits: u32, dir: Round) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        if self.is_negative() {
            return format!("-{}", self.neg().to_decimal(digits, dir.reverse()));
        }
        let digits = digits.max(1) as i64;
        // log10(x) ~ (top - 1) * log10(2); a one-off estimate only changes the digit count.
        let d10 = ((self.top() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let scale = digits - 1 - d10;
        let ten = BigInt::from(10u32);
        let mut num = self.mant.clone();
        let mut den = BigInt::one();
        if scale >= 0 {
            num *= num_traits::pow(ten.clone(), scale as usize);
        } else {
            den *= num_traits::pow(ten.clone(), (-scale) as usize);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        let n = div_round(&num, &den, dir);
        render_scaled(&n.to_string(), scale)
    }
}

/// Renders the integer string `d` times `10^-scale`.
fn render_scaled(d: &str, scale: i64) -> String {
    let len = d.len() as i64;
    let e10 = len - 1 - scale;
    if (-6..=21).contains(&e10) {
        let s = if scale <= 0 {
            format!("{d}{}", "0".repeat((-scale) as usize))
        } else if len > scale {
            let (int, frac) = d.split_at((len - scale) as usize);
            format!("{int}.{frac}")
        } else {
            format!("0.{}{d}", "0".repeat((scale - len) as usize))
        };
        trim_fraction(s)
    } else {
        let (head, tail) = d.split_at(1);
        let mantissa = trim_fraction(format!("{head}.{tail}"));
        format!("{mantissa}e{e10}")
    }
}

fn trim_fraction(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.mant.sign(), other.mant.sign());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let magnitude = if self.top() != other.top() {
            self.top().cmp(&other.top())
        } else {
            let e = self.exp.min(other.exp);
            let a = self.mant.abs() << (self.exp - e) as u64;
            let b = other.mant.abs() << (other.exp - e) as u64;
            a.cmp(&b)
        };
        if sa == Sign::Minus {
            magnitude.reverse()
        } else {
            magnitude
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20, Round::Down))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn shift_semantics() {
        // The directed rounding relies on >> flooring negative values.
        assert_eq!(BigInt::from(-5) >> 1u32, BigInt::from(-3));
        assert_eq!(shift_round(&BigInt::from(-5), 1, Round::Up), BigInt::from(-2));
        assert_eq!(shift_round(&BigInt::from(5), 1, Round::Up), BigInt::from(3));
    }

    #[test]
    fn normalization_and_order() {
        assert_eq!(d(4, 0), d(1, 2));
        assert_eq!(d(0, 7), Dyadic::zero());
        assert!(d(3, -1) > d(1, 0));
        assert!(d(-3, -1) < d(-1, 0));
        assert!(d(-1, 100) < d(1, -100));
        assert_eq!(d(5, 3).top(), 6);
    }

    #[test]
    fn rounding_directions() {
        let x = d(0b10111, 0);
        assert_eq!(x.round(3, Round::Down), d(0b101, 2));
        assert_eq!(x.round(3, Round::Up), d(0b110, 2));
        assert_eq!(x.neg().round(3, Round::Down), d(-0b110, 2));
        let third_down = Dyadic::from_ratio(&1.into(), &3.into(), 10, Round::Down);
        let third_up = Dyadic::from_ratio(&1.into(), &3.into(), 10, Round::Up);
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(third_down.cmp_rational(&third), Ordering::Less);
        assert_eq!(third_up.cmp_rational(&third), Ordering::Greater);
        assert_eq!(third_up.sub_exact(&third_down), d(1, -11));
    }

    #[test]
    fn tiny_addend() {
        let one = Dyadic::one();
        let tiny = Dyadic::pow2(-10_000);
        assert_eq!(one.add_round(&tiny, 64, Round::Down), one);
        assert!(one.add_round(&tiny, 64, Round::Up) > one);
        assert!(one.add_round(&tiny.neg(), 64, Round::Down) < one);
        assert_eq!(one.add_round(&tiny.neg(), 64, Round::Up), one);
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt_round(80, Round::Down);
        let hi = two.sqrt_round(80, Round::Up);
        assert!(lo.mul_exact(&lo) < two);
        assert!(hi.mul_exact(&hi) > two);
        assert_eq!(Dyadic::from_int(9).sqrt_round(10, Round::Down), Dyadic::from_int(3));
        assert_eq!(Dyadic::from_int(9).sqrt_round(10, Round::Up), Dyadic::from_int(3));
        assert_eq!(d(1, -6).sqrt_round(10, Round::Up), d(1, -3));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Dyadic::from_int(6).to_decimal(10, Round::Down), "6");
        assert_eq!(d(1, -1).to_decimal(5, Round::Down), "0.5");
        assert_eq!(d(-3, -2).to_decimal(5, Round::Down), "-0.75");
        let third = Dyadic::from_ratio(&1.into(), &3.into(), 100, Round::Down);
        assert_eq!(third.to_decimal(6, Round::Down), "0.333333");
        assert_eq!(third.to_decimal(6, Round::Up), "0.333334");
        assert_eq!(Dyadic::pow2(100).to_decimal(4, Round::Down), "1.267e30");
        assert_eq!(Dyadic::pow2(-40).to_decimal(3, Round::Up), "9.1e-13");
    }

    #[test]
    fn to_f64_scaling() {
        assert_eq!(d(3, -1).to_f64(), 1.5);
        assert_eq!(Dyadic::pow2(1000).to_f64(), 2f64.powi(1000));
        let big = Dyadic::new(BigInt::from(u128::MAX), 0);
        assert!((big.to_f64() / u128::MAX as f64 - 1.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn directed_ops_bracket_exact(a in -1_000_000i64..1_000_000, ea in -40i64..40,
                                      b in -1_000_000i64..1_000_000, eb in -40i64..40,
                                      prec in 4u32..24) {
            let x = d(a, ea);
            let y = d(b, eb);
            let sum = x.add_exact(&y);
            prop_assert!(x.add_round(&y, prec, Round::Down) <= sum);
            prop_assert!(x.add_round(&y, prec, Round::Up) >= sum);
            let prod = x.mul_exact(&y);
            prop_assert!(x.mul_round(&y, prec, Round::Down) <= prod);
            prop_assert!(x.mul_round(&y, prec, Round::Up) >= prod);
            if !y.is_zero() {
                let q = x.to_rational() / y.to_rational();
                prop_assert_ne!(x.div_round(&y, prec, Round::Down).cmp_rational(&q), Ordering::Greater);
                prop_assert_ne!(x.div_round(&y, prec, Round::Up).cmp_rational(&q), Ordering::Less);
            }
            prop_assert!(x.round(prec, Round::Down).mantissa().bits() <= u64::from(prec));
        }
    }
}
