//! Closed intervals with dyadic endpoints and outward directed rounding.

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::decimal::{format_directed, Decimal};
use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};

/// Working precision used when nothing else is configured.
pub const DEFAULT_PRECISION: u32 = 128;

/// Smallest precision the interval layer accepts.
pub const MIN_PRECISION: u32 = 16;

/// A closed interval `[lo, hi]` guaranteed to contain the exact real value it
/// stands for. Endpoints carry at most `precision` mantissa bits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundedReal {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

/// Outcome of deciding an inequality on an enclosure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}

impl BoundedReal {
    /// Interval from explicit endpoints, rounded outward to `prec` bits.
    pub fn from_endpoints(lo: Dyadic, hi: Dyadic, prec: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(String::from(
                "interval lower endpoint exceeds upper endpoint",
            )));
        }
        Ok(Self::new_unchecked(lo.round(prec, Round::Down), hi.round(prec, Round::Up), prec))
    }

    fn new_unchecked(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        BoundedReal { lo, hi, prec }
    }

    pub fn exact(value: Dyadic, prec: u32) -> Self {
        let lo = value.round(prec, Round::Down);
        let hi = value.round(prec, Round::Up);
        Self::new_unchecked(lo, hi, prec)
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::exact(Dyadic::from_i64(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self::exact(Dyadic::from_bigint(v), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_int(0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    /// Enclosure of the rational `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(domain("ratio", "zero denominator"));
        }
        let n = Dyadic::from_bigint(num);
        let d = Dyadic::from_bigint(den);
        Ok(Self::new_unchecked(
            n.div(&d, prec, Round::Down),
            n.div(&d, prec, Round::Up),
            prec,
        ))
    }

    pub fn from_ratio_i64(num: i64, den: i64, prec: u32) -> Result<Self> {
        Self::from_ratio(&BigInt::from(num), &BigInt::from(den), prec)
    }

    pub fn from_decimal(d: &Decimal, prec: u32) -> Self {
        Self::from_ratio(d.numer(), d.denom(), prec).expect("decimal denominators are positive")
    }

    /// Enclosure of a decimal literal such as `"0.87045114"` or `"1e-9"`.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<Self> {
        let d = Decimal::parse(s).map_err(|e| Error::InvalidArgument(format!("{e}")))?;
        Ok(Self::from_decimal(&d, prec))
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Same enclosure re-rounded outward to `prec` bits.
    pub fn with_precision(&self, prec: u32) -> Self {
        Self::new_unchecked(
            self.lo.round(prec, Round::Down),
            self.hi.round(prec, Round::Up),
            prec,
        )
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo, self.prec, Round::Up)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_int(&self, v: i64) -> bool {
        self.contains(&Dyadic::from_i64(v))
    }

    pub fn contains_bigint(&self, v: &BigInt) -> bool {
        self.contains(&Dyadic::from_bigint(v))
    }

    /// Does the interval contain the exact rational `num / den` (`den > 0`)?
    pub fn contains_ratio(&self, num: &BigInt, den: &BigInt) -> bool {
        self.lo.cmp_ratio(num, den) != Ordering::Greater
            && self.hi.cmp_ratio(num, den) != Ordering::Less
    }

    pub fn contains_decimal(&self, d: &Decimal) -> bool {
        self.contains_ratio(d.numer(), d.denom())
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Self) -> Self {
        Self::new_unchecked(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
            self.prec.max(other.prec),
        )
    }

    /// Enclosure of `min(x, y)` over all selections.
    pub fn min(&self, other: &Self) -> Self {
        Self::new_unchecked(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().min(other.hi.clone()),
            self.prec.max(other.prec),
        )
    }

    /// Enclosure of `max(x, y)` over all selections.
    pub fn max(&self, other: &Self) -> Self {
        Self::new_unchecked(
            self.lo.clone().max(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
            self.prec.max(other.prec),
        )
    }

    /// `lo ≥ bound` passes, `hi < bound` fails, anything else is undecided.
    pub fn check_at_least(&self, bound: &Decimal) -> Verdict {
        if bound.cmp_dyadic(&self.lo) != Ordering::Greater {
            Verdict::Pass
        } else if bound.cmp_dyadic(&self.hi) == Ordering::Greater {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }

    /// `hi ≤ bound` passes, `lo > bound` fails, anything else is undecided.
    pub fn check_at_most(&self, bound: &Decimal) -> Verdict {
        if bound.cmp_dyadic(&self.hi) != Ordering::Less {
            Verdict::Pass
        } else if bound.cmp_dyadic(&self.lo) == Ordering::Less {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }

    /// Strictly positive over the whole interval?
    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn abs(&self) -> Self {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            -self
        } else {
            let m = self.lo.abs().max(self.hi.clone());
            Self::new_unchecked(Dyadic::zero(), m, self.prec)
        }
    }

    /// Exact scaling by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        Self::new_unchecked(self.lo.mul_pow2(k), self.hi.mul_pow2(k), self.prec)
    }

    pub fn square(&self) -> Self {
        self.powi(2)
    }

    /// Enclosure of `x^n`.
    pub fn powi(&self, n: u32) -> Self {
        let p = self.prec;
        if n == 0 {
            return Self::one(p);
        }
        if n == 1 {
            return self.clone();
        }
        let even = n.is_multiple_of(2);
        if self.lo.signum() >= 0 {
            Self::new_unchecked(
                pow_dir(&self.lo, n, p, Round::Down),
                pow_dir(&self.hi, n, p, Round::Up),
                p,
            )
        } else if self.hi.signum() <= 0 {
            let a = self.lo.abs();
            let b = self.hi.abs();
            if even {
                Self::new_unchecked(pow_dir(&b, n, p, Round::Down), pow_dir(&a, n, p, Round::Up), p)
            } else {
                Self::new_unchecked(
                    pow_dir(&a, n, p, Round::Up).neg(),
                    pow_dir(&b, n, p, Round::Down).neg(),
                    p,
                )
            }
        } else if even {
            let m = self.lo.abs().max(self.hi.clone());
            Self::new_unchecked(Dyadic::zero(), pow_dir(&m, n, p, Round::Up), p)
        } else {
            Self::new_unchecked(
                pow_dir(&self.lo.abs(), n, p, Round::Up).neg(),
                pow_dir(&self.hi, n, p, Round::Up),
                p,
            )
        }
    }

    /// Enclosure of `x^n` for signed `n`; negative powers require `0 ∉ x`.
    pub fn powi_signed(&self, n: i32) -> Result<Self> {
        if n >= 0 {
            Ok(self.powi(n as u32))
        } else {
            self.powi(n.unsigned_abs()).recip()
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.prec).div(self)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.contains_zero() {
            return Err(domain("division", "divisor interval contains zero"));
        }
        let p = self.prec.max(other.prec);
        let corners = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = corners
            .iter()
            .map(|(a, b)| a.div(b, p, Round::Down))
            .min()
            .expect("four corners");
        let hi = corners
            .iter()
            .map(|(a, b)| a.div(b, p, Round::Up))
            .max()
            .expect("four corners");
        Ok(Self::new_unchecked(lo, hi, p))
    }

    pub fn div_int(&self, d: i64) -> Result<Self> {
        self.div(&Self::from_int(d, self.prec))
    }

    pub fn mul_int(&self, m: i64) -> Self {
        self * &Self::from_int(m, self.prec)
    }

    /// Square root; the interval must satisfy `lo ≥ 0`.
    pub fn sqrt(&self) -> Result<Self> {
        self.nth_root(2)
    }

    /// Principal `n`-th root (`n ≥ 1`); the interval must satisfy `lo ≥ 0`.
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(domain("nth_root", "root degree zero"));
        }
        if self.lo.signum() < 0 {
            return Err(domain("root", format!("negative lower endpoint for degree {n}")));
        }
        Ok(Self::new_unchecked(
            self.lo.nth_root(n, self.prec, Round::Down),
            self.hi.nth_root(n, self.prec, Round::Up),
            self.prec,
        ))
    }

    /// Real cube root, defined for all reals.
    pub fn cbrt(&self) -> Self {
        let p = self.prec;
        let signed_root = |d: &Dyadic, dir: Round| {
            if d.is_negative() {
                d.abs().nth_root(3, p, dir.flip()).neg()
            } else {
                d.nth_root(3, p, dir)
            }
        };
        Self::new_unchecked(signed_root(&self.lo, Round::Down), signed_root(&self.hi, Round::Up), p)
    }

    /// Natural logarithm; the interval must be strictly positive.
    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(domain("ln", "interval touches nonpositive reals"));
        }
        let lo = super::elementary::ln_point(&self.lo, self.prec);
        let hi = super::elementary::ln_point(&self.hi, self.prec);
        Ok(Self::new_unchecked(lo.lo, hi.hi, self.prec))
    }

    /// Lower endpoint as a decimal with `digits` significant digits, rounded down.
    pub fn lo_decimal(&self, digits: u32) -> String {
        format_directed(&self.lo, digits, Round::Down)
    }

    /// Upper endpoint as a decimal with `digits` significant digits, rounded up.
    pub fn hi_decimal(&self, digits: u32) -> String {
        format_directed(&self.hi, digits, Round::Up)
    }

    /// Midpoint approximation for diagnostics only.
    pub fn mid_f64(&self) -> f64 {
        (self.lo.to_f64_approx() + self.hi.to_f64_approx()) / 2.0
    }
}

/// `d^n` for `d ≥ 0` with every intermediate product rounded in `dir`; valid
/// because multiplication of nonnegative values is monotone.
fn pow_dir(d: &Dyadic, n: u32, prec: u32, dir: Round) -> Dyadic {
    let guard = prec + 16;
    let mut result = Dyadic::one();
    let mut base = d.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base, guard, dir);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base, guard, dir);
        }
    }
    result.round(prec, dir)
}

impl fmt::Display for BoundedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20) as u32;
        write!(f, "[{}, {}]", self.lo_decimal(digits.max(1)), self.hi_decimal(digits.max(1)))
    }
}

impl Neg for &BoundedReal {
    type Output = BoundedReal;

    fn neg(self) -> BoundedReal {
        BoundedReal::new_unchecked(self.hi.neg(), self.lo.neg(), self.prec)
    }
}

impl Neg for BoundedReal {
    type Output = BoundedReal;

    fn neg(self) -> BoundedReal {
        -&self
    }
}

impl Add for &BoundedReal {
    type Output = BoundedReal;

    fn add(self, rhs: &BoundedReal) -> BoundedReal {
        let p = self.prec.max(rhs.prec);
        BoundedReal::new_unchecked(
            self.lo.add(&rhs.lo, p, Round::Down),
            self.hi.add(&rhs.hi, p, Round::Up),
            p,
        )
    }
}

impl Sub for &BoundedReal {
    type Output = BoundedReal;

    fn sub(self, rhs: &BoundedReal) -> BoundedReal {
        let p = self.prec.max(rhs.prec);
        BoundedReal::new_unchecked(
            self.lo.sub(&rhs.hi, p, Round::Down),
            self.hi.sub(&rhs.lo, p, Round::Up),
            p,
        )
    }
}

impl Mul for &BoundedReal {
    type Output = BoundedReal;

    fn mul(self, rhs: &BoundedReal) -> BoundedReal {
        let p = self.prec.max(rhs.prec);
        let (a, b) = (self, rhs);
        if a.lo.signum() >= 0 && b.lo.signum() >= 0 {
            return BoundedReal::new_unchecked(
                a.lo.mul(&b.lo, p, Round::Down),
                a.hi.mul(&b.hi, p, Round::Up),
                p,
            );
        }
        if a.is_point() && b.is_point() {
            return BoundedReal::new_unchecked(
                a.lo.mul(&b.lo, p, Round::Down),
                a.lo.mul(&b.lo, p, Round::Up),
                p,
            );
        }
        let corners = [
            a.lo.mul_exact(&b.lo),
            a.lo.mul_exact(&b.hi),
            a.hi.mul_exact(&b.lo),
            a.hi.mul_exact(&b.hi),
        ];
        let lo = corners.iter().min().expect("corners").round(p, Round::Down);
        let hi = corners.iter().max().expect("corners").round(p, Round::Up);
        BoundedReal::new_unchecked(lo, hi, p)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BoundedReal {
            type Output = BoundedReal;
            fn $m(self, rhs: BoundedReal) -> BoundedReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BoundedReal> for BoundedReal {
            type Output = BoundedReal;
            fn $m(self, rhs: &BoundedReal) -> BoundedReal {
                (&self).$m(rhs)
            }
        }
        impl $tr<BoundedReal> for &BoundedReal {
            type Output = BoundedReal;
            fn $m(self, rhs: BoundedReal) -> BoundedReal {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = DEFAULT_PRECISION;

    fn iv(v: i64) -> BoundedReal {
        BoundedReal::from_int(v, P)
    }

    #[test]
    fn one_third_is_tight() {
        let x = iv(1).div(&iv(3)).unwrap();
        assert!(x.contains_ratio(&BigInt::from(1), &BigInt::from(3)));
        assert!(x.width() <= Dyadic::pow2(-120));
    }

    #[test]
    fn sqrt_two_squared_contains_two() {
        let r = iv(2).sqrt().unwrap();
        assert!(r.square().contains_int(2));
    }

    #[test]
    fn rational_power_matches_exact_value() {
        // (999999/10^6)^17 against exact rational powering
        let x = BoundedReal::from_ratio_i64(999_999, 1_000_000, P).unwrap();
        let y = x.powi(17);
        let num = num_traits::pow(BigInt::from(999_999), 17);
        let den = num_traits::pow(BigInt::from(1_000_000), 17);
        assert!(y.contains_ratio(&num, &den));
        assert!(y.check_at_least(&Decimal::parse("0.999983").unwrap()).is_pass());
    }

    #[test]
    fn domain_errors_name_the_operation() {
        let straddle = BoundedReal::from_endpoints(Dyadic::from_i64(-1), Dyadic::from_i64(1), P).unwrap();
        match iv(1).div(&straddle) {
            Err(Error::Domain { op, .. }) => assert_eq!(op, "division"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(iv(-2).sqrt(), Err(Error::Domain { op: "root", .. })));
        assert!(matches!(iv(0).ln(), Err(Error::Domain { op: "ln", .. })));
        assert!(iv(0).sqrt().unwrap().contains_int(0));
    }

    #[test]
    fn multiplication_sign_cases() {
        let a = BoundedReal::from_endpoints(Dyadic::from_i64(-2), Dyadic::from_i64(3), P).unwrap();
        let b = BoundedReal::from_endpoints(Dyadic::from_i64(-5), Dyadic::from_i64(-1), P).unwrap();
        let c = &a * &b;
        assert_eq!(c.lo(), &Dyadic::from_i64(-15));
        assert_eq!(c.hi(), &Dyadic::from_i64(10));
        let sq = a.square();
        assert_eq!(sq.lo(), &Dyadic::zero());
        assert_eq!(sq.hi(), &Dyadic::from_i64(9));
        let cube = b.powi(3);
        assert_eq!(cube.lo(), &Dyadic::from_i64(-125));
        assert_eq!(cube.hi(), &Dyadic::from_i64(-1));
    }

    #[test]
    fn verdicts_are_exact_decimal_comparisons() {
        let x = BoundedReal::parse_decimal("0.9375", P).unwrap();
        assert_eq!(x.check_at_least(&Decimal::parse("0.9375").unwrap()), Verdict::Pass);
        assert_eq!(x.check_at_least(&Decimal::parse("0.93750000001").unwrap()), Verdict::Fail);
        let third = iv(1).div(&iv(3)).unwrap();
        let thirty_digits = Decimal::parse("0.333333333333333333333333333333").unwrap();
        assert_eq!(third.check_at_least(&thirty_digits), Verdict::Pass);
        // 1/3 is not dyadic; a literal closer to it than the width straddles
        let forty_digits = Decimal::parse("0.3333333333333333333333333333333333333333").unwrap();
        assert_eq!(third.check_at_least(&forty_digits), Verdict::Inconclusive);
        let wide = BoundedReal::from_endpoints(Dyadic::from_i64(0), Dyadic::from_i64(1), P).unwrap();
        assert_eq!(wide.check_at_least(&Decimal::parse("0.5").unwrap()), Verdict::Inconclusive);
        assert_eq!(wide.check_at_most(&Decimal::parse("1").unwrap()), Verdict::Pass);
        assert_eq!(wide.check_at_most(&Decimal::parse("-0.5").unwrap()), Verdict::Fail);
    }

    #[test]
    fn cube_root_of_seven() {
        let c = iv(7).cbrt();
        assert!(c.powi(3).contains_int(7));
        let n = iv(-8).cbrt();
        assert!(n.contains_int(-2));
    }

    #[test]
    fn lower_precision_never_narrows() {
        let hi = iv(2).sqrt().unwrap();
        let lo = BoundedReal::from_int(2, 64).sqrt().unwrap();
        assert!(lo.contains_interval(&hi));
        assert!(hi.with_precision(40).contains_interval(&hi));
    }
}
