//! Complex enclosures and rigorous points `e(a/q) = exp(2πi a/q)` on the unit
//! circle.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use super::elementary::TurnEvaluator;
use super::interval::BoundedReal;
use crate::error::{invalid, Result};

/// Rectangular complex enclosure `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: BoundedReal,
    pub im: BoundedReal,
}

impl ComplexInterval {
    pub fn new(re: BoundedReal, im: BoundedReal) -> Self {
        ComplexInterval { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexInterval::new(BoundedReal::zero(prec), BoundedReal::zero(prec))
    }

    pub fn real(re: BoundedReal) -> Self {
        let p = re.precision();
        ComplexInterval::new(re, BoundedReal::zero(p))
    }

    pub fn conj(&self) -> Self {
        ComplexInterval::new(self.re.clone(), -&self.im)
    }

    /// Enclosure of `|z|²`.
    pub fn norm_sqr(&self) -> BoundedReal {
        &self.re.square() + &self.im.square()
    }

    /// Enclosure of `|z|`.
    pub fn abs(&self) -> BoundedReal {
        self.norm_sqr().sqrt().expect("sum of squares is nonnegative")
    }

    pub fn square(&self) -> Self {
        let re = &self.re.square() - &self.im.square();
        let im = (&self.re * &self.im).mul_pow2(1);
        ComplexInterval::new(re, im)
    }

    pub fn powi(&self, n: u32) -> Self {
        let p = self.re.precision();
        let mut result = ComplexInterval::real(BoundedReal::one(p));
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    pub fn scale(&self, k: &BoundedReal) -> Self {
        ComplexInterval::new(&self.re * k, &self.im * k)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }
}

impl Add for &ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: &ComplexInterval) -> ComplexInterval {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        ComplexInterval::new(re, im)
    }
}

impl Neg for &ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval::new(-&self.re, -&self.im)
    }
}

/// Rigorous enclosure of `e(a/q)`; the box always meets the unit circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCirclePoint {
    pub re: BoundedReal,
    pub im: BoundedReal,
}

impl UnitCirclePoint {
    pub fn as_complex(&self) -> ComplexInterval {
        ComplexInterval::new(self.re.clone(), self.im.clone())
    }

    pub fn conj(&self) -> Self {
        UnitCirclePoint {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
}

impl From<UnitCirclePoint> for ComplexInterval {
    fn from(p: UnitCirclePoint) -> Self {
        ComplexInterval::new(p.re, p.im)
    }
}

/// Enclosure of `(cos 2πa/q, sin 2πa/q)` at `prec` bits. Depends only on
/// `a mod q`; width is at most `2^(8 − prec)`.
pub fn unit_circle_point(a: i64, q: u64, prec: u32) -> Result<UnitCirclePoint> {
    if q == 0 {
        return Err(invalid("unit_circle_point: modulus q must be positive"));
    }
    let (re, im) = TurnEvaluator::new(prec).cos_sin_turn(a, q);
    Ok(UnitCirclePoint { re, im })
}

/// All `q` points `e(k/q)`, `k = 0..q`, evaluated once.
#[derive(Clone, Debug)]
pub struct RootsOfUnity {
    q: u64,
    points: Vec<ComplexInterval>,
}

impl RootsOfUnity {
    pub fn new(q: u64, prec: u32) -> Result<Self> {
        if q == 0 {
            return Err(invalid("roots of unity: modulus q must be positive"));
        }
        let ev = TurnEvaluator::new(prec);
        let mut points: Vec<ComplexInterval> = Vec::with_capacity(q as usize);
        for k in 0..q {
            if 2 * k > q {
                // conjugate of an already-computed point
                let c = points[(q - k) as usize].conj();
                points.push(c);
            } else {
                let (re, im) = ev.cos_sin_turn(k as i64, q);
                points.push(ComplexInterval::new(re, im));
            }
        }
        Ok(RootsOfUnity { q, points })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// `e(a/q)` for any integer `a`.
    pub fn get(&self, a: i64) -> &ComplexInterval {
        &self.points[a.rem_euclid(self.q as i64) as usize]
    }

    pub fn points(&self) -> &[ComplexInterval] {
        &self.points
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::dyadic::Dyadic;
    use num_bigint::BigInt;

    const P: u32 = 128;

    #[test]
    fn named_points() {
        let p = unit_circle_point(0, 1, P).unwrap();
        assert!(p.re.contains_int(1) && p.im.contains_int(0));
        let p = unit_circle_point(1, 4, P).unwrap();
        assert!(p.re.contains_int(0) && p.im.contains_int(1));
        let p = unit_circle_point(1, 3, P).unwrap();
        assert!(p.re.contains_ratio(&BigInt::from(-1), &BigInt::from(2)));
        assert!(p.im.square().contains_ratio(&BigInt::from(3), &BigInt::from(4)));
        assert!(unit_circle_point(1, 0, P).is_err());
    }

    #[test]
    fn periodic_and_conjugate_symmetric() {
        for q in [3u64, 5, 7, 12, 199] {
            for a in 0..q as i64 {
                let p = unit_circle_point(a, q, P).unwrap();
                assert_eq!(p, unit_circle_point(a + q as i64, q, P).unwrap());
                assert_eq!(p.conj(), unit_circle_point(-a, q, P).unwrap());
                assert!(p.as_complex().norm_sqr().contains_int(1));
                assert!(p.re.width() <= Dyadic::pow2(8 - P as i64));
            }
        }
    }

    #[test]
    fn full_character_sums_vanish() {
        for q in [3u64, 5, 7, 12] {
            let roots = RootsOfUnity::new(q, P).unwrap();
            let mut s = ComplexInterval::zero(P);
            for z in roots.points() {
                s = &s + z;
            }
            assert!(s.contains_zero(), "q = {q}");
        }
    }

    #[test]
    fn table_matches_direct_evaluation() {
        let roots = RootsOfUnity::new(13, P).unwrap();
        for a in -13i64..26 {
            let direct = unit_circle_point(a, 13, P).unwrap().as_complex();
            assert_eq!(roots.get(a), &direct);
        }
    }
}
