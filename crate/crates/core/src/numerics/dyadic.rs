//! Binary floating-point numbers with arbitrary-length mantissas and
//! explicitly directed rounding.
//!
//! A [`Dyadic`] is the exact value `±mag · 2^exp`. Arithmetic that is exact
//! (negation, multiplication by powers of two, comparison) never rounds; every
//! other operation takes a target precision in bits and a [`Round`] direction,
//! and returns the nearest representable value on the requested side of the
//! exact result. No global rounding mode exists, so values can be shared across
//! threads freely.

use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

/// Rounding direction for a single operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Round {
    /// Toward −∞.
    Down,
    /// Toward +∞.
    Up,
}

impl Round {
    pub fn flip(self) -> Self {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
        }
    }
}

/// Exact value `(-1)^neg · mag · 2^exp`, kept normalized (odd mantissa or zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    neg: bool,
    mag: BigUint,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            neg: false,
            mag: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic::from_parts(v < 0, BigUint::from(v.unsigned_abs()), 0)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        Dyadic::from_parts(v.sign() == Sign::Minus, v.magnitude().clone(), 0)
    }

    /// `±mag · 2^exp`, normalized.
    pub fn from_parts(neg: bool, mag: BigUint, exp: i64) -> Self {
        let mut d = Dyadic { neg, mag, exp };
        d.normalize();
        d
    }

    /// `2^exp`.
    pub fn pow2(exp: i64) -> Self {
        Dyadic {
            neg: false,
            mag: BigUint::one(),
            exp,
        }
    }

    fn normalize(&mut self) {
        if self.mag.is_zero() {
            self.neg = false;
            self.exp = 0;
            return;
        }
        let tz = self.mag.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mag >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mag
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.mag.bits()
    }

    /// Smallest `t` with `|self| < 2^t`; `i64::MIN` for zero.
    pub fn top(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mag.bits() as i64
        }
    }

    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.neg {
            -1
        } else {
            1
        }
    }

    pub fn neg(&self) -> Self {
        let mut d = self.clone();
        if !d.is_zero() {
            d.neg = !d.neg;
        }
        d
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            neg: false,
            mag: self.mag.clone(),
            exp: self.exp,
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            neg: self.neg,
            mag: self.mag.clone(),
            exp: self.exp + k,
        }
    }

    /// Rounds `self` to at most `prec` mantissa bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Self {
        round_parts(self.neg, self.mag.clone(), self.exp, prec, dir)
    }

    /// Exact sum. Only safe for operands of comparable magnitude; prefer
    /// [`Dyadic::add`] for anything produced by rounding.
    pub fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = signed_shifted(self, self.exp - e);
        let b = signed_shifted(other, other.exp - e);
        let s = a + b;
        Dyadic::from_parts(s.sign() == Sign::Minus, s.magnitude().clone(), e)
    }

    pub fn mul_exact(&self, other: &Self) -> Self {
        Dyadic::from_parts(
            self.neg != other.neg,
            &self.mag * &other.mag,
            self.exp + other.exp,
        )
    }

    /// Sum rounded to `prec` bits. A summand far below the rounding grid of
    /// the other is replaced by a sticky value of the same sign, which leaves
    /// both directed roundings unchanged and avoids huge alignments.
    pub fn add(&self, other: &Self, prec: u32, dir: Round) -> Self {
        if self.is_zero() {
            return other.round(prec, dir);
        }
        if other.is_zero() {
            return self.round(prec, dir);
        }
        let (big, small) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        let m = big.exp.min(big.top() - prec as i64 - 2);
        if small.top() <= m {
            let sticky = Dyadic {
                neg: small.neg,
                mag: BigUint::one(),
                exp: m - 1,
            };
            return big.add_exact(&sticky).round(prec, dir);
        }
        self.add_exact(other).round(prec, dir)
    }

    pub fn sub(&self, other: &Self, prec: u32, dir: Round) -> Self {
        self.add(&other.neg(), prec, dir)
    }

    pub fn mul(&self, other: &Self, prec: u32, dir: Round) -> Self {
        self.mul_exact(other).round(prec, dir)
    }

    /// Quotient rounded to `prec` bits. Panics on a zero divisor; the
    /// interval layer rejects those before reaching here.
    pub fn div(&self, other: &Self, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "division by zero dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = prec as i64 + 2;
        let shift = (want + other.bits() as i64 - self.bits() as i64).max(0) as u64;
        let num = &self.mag << shift;
        let (q, r) = num_integer::Integer::div_rem(&num, &other.mag);
        let exp = self.exp - shift as i64 - other.exp;
        let neg = self.neg != other.neg;
        sticky_round(neg, q, !r.is_zero(), exp, prec, dir)
    }

    /// Square root rounded to `prec` bits. Panics on a negative argument.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Self {
        self.nth_root(2, prec, dir)
    }

    /// Principal `n`-th root of a nonnegative value, rounded to `prec` bits.
    pub fn nth_root(&self, n: u32, prec: u32, dir: Round) -> Self {
        assert!(n >= 1);
        assert!(!self.neg, "root of a negative dyadic");
        if self.is_zero() || n == 1 {
            return self.round(prec, dir);
        }
        let n64 = n as i64;
        let want_bits = n64 * (prec as i64 + 2);
        let mut shift = (want_bits - self.bits() as i64).max(0);
        // make (exp - shift) divisible by n
        shift += (self.exp - shift).rem_euclid(n64);
        let radicand = &self.mag << (shift as u64);
        let root = radicand.nth_root(n);
        let exact = root.pow(n) == radicand;
        let exp = (self.exp - shift) / n64;
        sticky_round(false, root, !exact, exp, prec, dir)
    }

    /// Exact comparison with the rational `num / den` (`den > 0`).
    pub fn cmp_ratio(&self, num: &BigInt, den: &BigInt) -> Ordering {
        debug_assert!(den.sign() == Sign::Plus);
        // self = m · 2^e; compare m · 2^e · den with num
        let m = signed_shifted(self, 0);
        if self.exp >= 0 {
            let lhs = (m << (self.exp as u64)) * den;
            lhs.cmp(num)
        } else {
            let lhs = m * den;
            let rhs = num << ((-self.exp) as u64);
            lhs.cmp(&rhs)
        }
    }

    /// Nearest value `≤ self` (Down) or `≥ self` (Up) as a rational with
    /// denominator `10^scale`: returns the numerator.
    pub fn to_scaled_decimal(&self, scale: i64, dir: Round) -> BigInt {
        // floor/ceil(self · 10^scale)
        let ten = BigInt::from(10u32);
        let (mut num, mut den) = (signed_shifted(self, 0), BigInt::one());
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        if scale >= 0 {
            num *= num_traits::pow(ten, scale as usize);
        } else {
            den *= num_traits::pow(ten, (-scale) as usize);
        }
        match dir {
            Round::Down => num_integer::Integer::div_floor(&num, &den),
            Round::Up => -num_integer::Integer::div_floor(&(-num), &den),
        }
    }

    /// Lossy conversion for diagnostics only.
    pub fn to_f64_approx(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Down);
        let m = num_traits::ToPrimitive::to_f64(&r.mag).unwrap_or(f64::INFINITY);
        let v = m * pow2_f64(r.exp);
        if r.neg {
            -v
        } else {
            v
        }
    }
}

fn pow2_f64(e: i64) -> f64 {
    let mut v = 1.0f64;
    let (mut e, step) = if e >= 0 { (e, 2.0f64) } else { (-e, 0.5f64) };
    let mut base = step;
    while e > 0 {
        if e & 1 == 1 {
            v *= base;
        }
        base *= base;
        e >>= 1;
    }
    v
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.signum(), other.signum()) {
            (a, b) if a != b => return a.cmp(&b),
            (0, _) => return Ordering::Equal,
            _ => {}
        }
        let mag_order = if self.top() != other.top() {
            self.top().cmp(&other.top())
        } else {
            let e = self.exp.min(other.exp);
            let a = &self.mag << ((self.exp - e) as u64);
            let b = &other.mag << ((other.exp - e) as u64);
            a.cmp(&b)
        };
        if self.neg {
            mag_order.reverse()
        } else {
            mag_order
        }
    }
}

fn signed_shifted(d: &Dyadic, shift: i64) -> BigInt {
    let m = &d.mag << (shift as u64);
    BigInt::from_biguint(if d.neg { Sign::Minus } else { Sign::Plus }, m)
}

fn round_parts(neg: bool, mag: BigUint, exp: i64, prec: u32, dir: Round) -> Dyadic {
    let bits = mag.bits();
    if bits <= prec as u64 {
        return Dyadic::from_parts(neg, mag, exp);
    }
    let shift = bits - prec as u64;
    let inexact = mag.trailing_zeros().is_some_and(|tz| tz < shift);
    let mut truncated = mag >> shift;
    // truncation moves toward zero; bump the magnitude when the requested
    // direction points away from zero
    let away = matches!((neg, dir), (false, Round::Up) | (true, Round::Down));
    if inexact && away {
        truncated += 1u32;
    }
    Dyadic::from_parts(neg, truncated, exp + shift as i64)
}

/// Rounds `±(q + f) · 2^exp` where `0 < f < 1` when `inexact`; `q` must carry
/// more than `prec` bits whenever `inexact` holds.
fn sticky_round(neg: bool, q: BigUint, inexact: bool, exp: i64, prec: u32, dir: Round) -> Dyadic {
    if inexact {
        let m = (q << 1u32) | BigUint::one();
        round_parts(neg, m, exp - 1, prec, dir)
    } else {
        round_parts(neg, q, exp, prec, dir)
    }
}
