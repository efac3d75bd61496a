//! Rigorous enclosures of π, ln and of sin/cos at rational multiples of a full
//! turn. Every series is summed in interval arithmetic and closed with an
//! explicit remainder interval.

use super::dyadic::Dyadic;
use super::interval::BoundedReal;

/// Extra bits carried through series evaluation before the final rounding.
const GUARD_BITS: u32 = 32;

/// `[-r, r]` for `r ≥ 0`.
fn symmetric(r: &Dyadic, prec: u32) -> BoundedReal {
    let r = r.abs();
    BoundedReal::from_endpoints(r.neg(), r, prec).expect("ordered")
}

/// True when every point of `x` has magnitude below `2^-bits`.
fn negligible(x: &BoundedReal, bits: u32) -> bool {
    let m = x.lo().abs().max(x.hi().abs());
    m.is_zero() || m.top() < -(bits as i64)
}

/// `Σ_{k≥0} (-1)^k x^{2k+1}/(2k+1)` for `0 ≤ x ≤ 1/2` (alternating, decreasing).
fn atan_small(x: &BoundedReal, w: u32) -> BoundedReal {
    let x2 = x.square();
    let mut power = x.clone();
    let mut sum = BoundedReal::zero(w);
    let mut k: i64 = 0;
    loop {
        let term = power.div_int(2 * k + 1).expect("odd divisor");
        if negligible(&term, w + 4) {
            // alternating series with decreasing terms: |tail| ≤ first omitted term
            return &sum + &symmetric(term.hi(), w);
        }
        sum = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        power = &power * &x2;
        k += 1;
    }
}

/// `Σ_{k≥0} z^{2k+1}/(2k+1)` (= atanh z) for `|z| ≤ 1/3`.
fn atanh_small(z: &BoundedReal, w: u32) -> BoundedReal {
    let z2 = z.square();
    let mut power = z.clone();
    let mut sum = BoundedReal::zero(w);
    let mut k: i64 = 0;
    loop {
        let term = power.div_int(2 * k + 1).expect("odd divisor");
        if negligible(&term, w + 4) {
            // |tail| ≤ |term| / (1 - z²) ≤ 9/8 |term| ≤ 2 |term|
            let r = term.lo().abs().max(term.hi().abs()).mul_pow2(1);
            return &sum + &symmetric(&r, w);
        }
        sum = &sum + &term;
        power = &power * &z2;
        k += 1;
    }
}

/// Enclosure of π via Machin's formula `16 atan(1/5) − 4 atan(1/239)`.
pub fn pi(prec: u32) -> BoundedReal {
    let w = prec + GUARD_BITS;
    let a = atan_small(&BoundedReal::from_ratio_i64(1, 5, w).expect("nonzero"), w);
    let b = atan_small(&BoundedReal::from_ratio_i64(1, 239, w).expect("nonzero"), w);
    (a.mul_pow2(4) - b.mul_pow2(2)).with_precision(prec)
}

/// Enclosure of ln 2 = 2 atanh(1/3).
pub fn ln2(prec: u32) -> BoundedReal {
    let w = prec + GUARD_BITS;
    atanh_small(&BoundedReal::from_ratio_i64(1, 3, w).expect("nonzero"), w)
        .mul_pow2(1)
        .with_precision(prec)
}

/// Enclosure of `ln x` for a positive point `x`.
pub fn ln_point(x: &Dyadic, prec: u32) -> BoundedReal {
    assert!(x.signum() > 0, "ln of nonpositive point");
    let w = prec + GUARD_BITS;
    // x = m · 2^e with m ∈ [1, 2)
    let e = x.top() - 1;
    let m = BoundedReal::exact(x.mul_pow2(-e), w + x.bits() as u32);
    let one = BoundedReal::one(w);
    let z = (&m - &one).div(&(&m + &one)).expect("m + 1 > 0").with_precision(w);
    let ln_m = atanh_small(&z, w).mul_pow2(1);
    let e_ln2 = ln2(w).mul_int(e);
    (&e_ln2 + &ln_m).with_precision(prec)
}

/// `(cos x, sin x)` for an interval `0 ≤ x ≤ 1` by Taylor series with
/// alternating-series remainder bounds.
fn cos_sin_small(x: &BoundedReal, w: u32) -> (BoundedReal, BoundedReal) {
    let x2 = x.square();
    // cos: Σ (-1)^k x^{2k}/(2k)!, sin: Σ (-1)^k x^{2k+1}/(2k+1)!
    let mut cos_term = BoundedReal::one(w);
    let mut sin_term = x.clone();
    let mut cos_sum = BoundedReal::zero(w);
    let mut sin_sum = BoundedReal::zero(w);
    let mut k: i64 = 0;
    loop {
        let done = negligible(&cos_term, w + 4) && negligible(&sin_term, w + 4);
        if done {
            let cos = &cos_sum + &symmetric(cos_term.hi(), w);
            let sin = &sin_sum + &symmetric(sin_term.hi(), w);
            return (cos, sin);
        }
        if k % 2 == 0 {
            cos_sum = &cos_sum + &cos_term;
            sin_sum = &sin_sum + &sin_term;
        } else {
            cos_sum = &cos_sum - &cos_term;
            sin_sum = &sin_sum - &sin_term;
        }
        cos_term = (&cos_term * &x2).div_int((2 * k + 1) * (2 * k + 2)).expect("positive");
        sin_term = (&sin_term * &x2).div_int((2 * k + 2) * (2 * k + 3)).expect("positive");
        k += 1;
    }
}

/// Precomputed π enclosure for repeated trig evaluations at one precision.
#[derive(Clone, Debug)]
pub struct TurnEvaluator {
    prec: u32,
    work: u32,
    two_pi: BoundedReal,
}

impl TurnEvaluator {
    pub fn new(prec: u32) -> Self {
        let work = prec + GUARD_BITS;
        TurnEvaluator {
            prec,
            work,
            two_pi: pi(work).mul_pow2(1),
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// `(cos 2πf, sin 2πf)` for the rational `f = num/den` with
    /// `0 ≤ num/den ≤ 1/8`.
    fn octant(&self, num: u64, den: u64) -> (BoundedReal, BoundedReal) {
        debug_assert!(8 * num <= den);
        if num == 0 {
            return (BoundedReal::one(self.prec), BoundedReal::zero(self.prec));
        }
        let frac = BoundedReal::from_ratio_i64(num as i64, den as i64, self.work).expect("den > 0");
        let angle = &self.two_pi * &frac;
        let (c, s) = cos_sin_small(&angle, self.work);
        (c.with_precision(self.prec), s.with_precision(self.prec))
    }

    /// `(cos 2πa/q, sin 2πa/q)`, reduced exactly to the first octant.
    ///
    /// The reduction is symmetric by construction: `a` and `q − a` share one
    /// evaluation and differ only in the sign of the sine.
    pub fn cos_sin_turn(&self, a: i64, q: u64) -> (BoundedReal, BoundedReal) {
        assert!(q >= 1);
        let qi = q as i128;
        let r = (a as i128).rem_euclid(qi) as u64;
        // f = r/q ∈ [0, 1)
        if 2 * r > q {
            let (c, s) = self.half_turn(q - r, q);
            return (c, -s);
        }
        self.half_turn(r, q)
    }

    /// `f = r/q ∈ [0, 1/2]`.
    fn half_turn(&self, r: u64, q: u64) -> (BoundedReal, BoundedReal) {
        if 4 * r > q {
            // f = 1/2 − g with g = (q − 2r)/(2q) ∈ [0, 1/4)
            let (c, s) = self.quarter_turn(q - 2 * r, 2 * q);
            return (-c, s);
        }
        self.quarter_turn(r, q)
    }

    /// `f = r/q ∈ [0, 1/4]`.
    fn quarter_turn(&self, r: u64, q: u64) -> (BoundedReal, BoundedReal) {
        if 8 * r > q {
            // f = 1/4 − g with g = (q − 4r)/(4q) ∈ [0, 1/8)
            let (c, s) = self.octant(q - 4 * r, 4 * q);
            return (s, c);
        }
        self.octant(r, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::decimal::Decimal;
    use num_bigint::BigInt;

    const P: u32 = 128;

    #[test]
    fn pi_digits() {
        let p = pi(P);
        let lo = Decimal::parse("3.141592653589793238462643383279502").unwrap();
        let hi = Decimal::parse("3.141592653589793238462643383279503").unwrap();
        assert!(p.check_at_least(&lo).is_pass());
        assert!(p.check_at_most(&hi).is_pass());
        assert!(p.width() <= Dyadic::pow2(-120));
    }

    #[test]
    fn ln_values() {
        let l2 = ln2(P);
        assert!(l2.check_at_least(&Decimal::parse("0.693147180559945309417232121458176").unwrap()).is_pass());
        assert!(l2.check_at_most(&Decimal::parse("0.693147180559945309417232121458177").unwrap()).is_pass());
        let one = ln_point(&Dyadic::one(), P);
        assert!(one.contains_int(0));
        let ten = BoundedReal::from_int(10, P).ln().unwrap();
        assert!(ten.check_at_least(&Decimal::parse("2.30258509299404568401799145468436").unwrap()).is_pass());
        assert!(ten.check_at_most(&Decimal::parse("2.30258509299404568401799145468437").unwrap()).is_pass());
        let tenth = BoundedReal::from_ratio_i64(1, 10, P).unwrap().ln().unwrap();
        assert!((&ten + &tenth).contains_int(0));
    }

    #[test]
    fn special_turns_are_exact_or_tight() {
        let ev = TurnEvaluator::new(P);
        let (c, s) = ev.cos_sin_turn(0, 1);
        assert!(c.contains_int(1) && s.contains_int(0));
        let (c, s) = ev.cos_sin_turn(1, 4);
        assert!(c.contains_int(0) && s.contains_int(1));
        let (c, s) = ev.cos_sin_turn(1, 2);
        assert!(c.contains_int(-1) && s.contains_int(0));
        let (c, s) = ev.cos_sin_turn(1, 3);
        assert!(c.contains_ratio(&BigInt::from(-1), &BigInt::from(2)));
        // sin(2π/3)² = 3/4
        assert!(s.square().contains_ratio(&BigInt::from(3), &BigInt::from(4)));
        assert!(s.is_positive());
        let (c, s) = ev.cos_sin_turn(1, 8);
        assert!(c.intersects(&s));
        assert!(c.square().contains_ratio(&BigInt::from(1), &BigInt::from(2)));
    }

    #[test]
    fn widths_stay_small() {
        let ev = TurnEvaluator::new(P);
        for q in [7u64, 13, 199, 5187] {
            for a in [1i64, 2, 3, (q / 3) as i64, (q - 1) as i64] {
                let (c, s) = ev.cos_sin_turn(a, q);
                assert!(c.width() <= Dyadic::pow2(8 - P as i64));
                assert!(s.width() <= Dyadic::pow2(8 - P as i64));
            }
        }
    }
}
