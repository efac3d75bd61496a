//! Main-term and minor-arc coefficients, the minimal number of powers of two,
//! and the singular-integral volume check.
//!
//! With `r1 = S · (∛7 − 1)² · (1 − η)^8` and
//! `r3(k) = 8 · √F · G · (1 − η)^-1 · λ^(k−2)`, the admissible `k` are those with
//! `r1 > r3(k)`, decided on whole intervals.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::constants;
use crate::error::{invalid, Error, Result};
use crate::numerics::{BoundedReal, Decimal, Round};

/// Constants feeding the threshold computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdInputs {
    /// Lower bound for the averaged singular series.
    pub singular_sum_const: BoundedReal,
    /// `(∛7 − 1)²`.
    pub cube_volume_const: BoundedReal,
    pub lambda: BoundedReal,
    pub eta: BoundedReal,
    /// Fourth-moment constant of the power-of-two sum (an input, not computed).
    pub f_moment_const: BoundedReal,
    /// Cube-sum moment constant (an input, not computed).
    pub cube_moment_const: BoundedReal,
}

fn lit(s: &str, prec: u32) -> BoundedReal {
    BoundedReal::parse_decimal(s, prec).expect("valid literal")
}

/// `(∛7 − 1)²`.
pub fn cube_volume_const(prec: u32) -> BoundedReal {
    let c = &BoundedReal::from_int(7, prec).cbrt() - &BoundedReal::one(prec);
    c.square()
}

impl ThresholdInputs {
    /// Published constants, with `η = 10^-9`.
    pub fn defaults(prec: u32) -> Self {
        ThresholdInputs {
            singular_sum_const: lit(constants::SINGULAR_SUM_BOUND, prec),
            cube_volume_const: cube_volume_const(prec),
            lambda: lit(constants::DEFAULT_LAMBDA, prec),
            eta: lit(constants::DEFAULT_ETA, prec),
            f_moment_const: lit(constants::DEFAULT_F_MOMENT, prec),
            cube_moment_const: lit(constants::DEFAULT_CUBE_MOMENT, prec),
        }
    }

    pub fn precision(&self) -> u32 {
        self.lambda.precision()
    }

    pub fn validate(&self) -> Result<()> {
        let one = BoundedReal::one(self.precision());
        let unit = |x: &BoundedReal, name: &str, allow_zero: bool| {
            let above = if allow_zero { !x.lo().is_negative() } else { x.is_positive() };
            if above && (&one - x).is_positive() {
                Ok(())
            } else {
                Err(invalid(format!("{name} must lie in (0, 1)")))
            }
        };
        unit(&self.lambda, "lambda", false)?;
        unit(&self.eta, "eta", true)?;
        for (x, name) in [
            (&self.f_moment_const, "f_moment"),
            (&self.cube_moment_const, "cube_moment"),
        ] {
            if !x.is_positive() {
                return Err(invalid(format!("{name} must be positive")));
            }
        }
        if self.singular_sum_const.lo().is_negative() {
            return Err(invalid("singular_sum_const must be nonnegative"));
        }
        Ok(())
    }

    fn one_minus_eta(&self) -> BoundedReal {
        &BoundedReal::one(self.precision()) - &self.eta
    }
}

/// `S · (∛7 − 1)² · (1 − η)^8`.
pub fn r1_coefficient(inputs: &ThresholdInputs) -> BoundedReal {
    &(&inputs.singular_sum_const * &inputs.cube_volume_const) * &inputs.one_minus_eta().powi(8)
}

/// `√F · G`, the coefficient before the factor `8 (1 − η)^-1`.
pub fn r3_intermediate(inputs: &ThresholdInputs) -> BoundedReal {
    let root = inputs.f_moment_const.sqrt().expect("validated positive");
    &root * &inputs.cube_moment_const
}

/// `8 · √F · G · (1 − η)^-1`, the `k`-independent part of `r3`.
pub fn r3_base(inputs: &ThresholdInputs) -> Result<BoundedReal> {
    r3_intermediate(inputs).mul_pow2(3).div(&inputs.one_minus_eta())
}

/// `r3_base · λ^(k−2)` for `k ≥ 3`.
pub fn r3_coefficient(inputs: &ThresholdInputs, k: u32) -> Result<BoundedReal> {
    if k < 3 {
        return Err(invalid(format!("r3_coefficient needs k >= 3, got {k}")));
    }
    Ok(&r3_base(inputs)? * &inputs.lambda.powi(k - 2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KThresholdReport {
    pub r1_coefficient: BoundedReal,
    pub r3_coefficient_base: BoundedReal,
    pub min_k: u32,
    /// `r1 − r3(min_k)`, strictly positive.
    pub margin_at_min_k: BoundedReal,
    /// `r1 − r3(min_k − 1)` when `min_k > 3`; not positive.
    pub margin_below_min_k: Option<BoundedReal>,
    /// `2 + ln(r3_base / r1) / ln(1/λ)`.
    pub crossing: BoundedReal,
}

/// Largest `k` the solver will try before giving up.
pub const MAX_K: u32 = 100_000;

/// Smallest `k ≥ 3` with `r1.lo > r3(k).hi`.
pub fn solve_min_k(inputs: &ThresholdInputs) -> Result<KThresholdReport> {
    inputs.validate()?;
    let prec = inputs.precision();
    let r1 = r1_coefficient(inputs);
    if !r1.is_positive() {
        return Err(invalid("r1 coefficient must be positive"));
    }
    let base = r3_base(inputs)?;
    let one = BoundedReal::one(prec);
    let crossing = {
        let num = base.div(&r1)?.ln()?;
        let den = one.div(&inputs.lambda)?.ln()?;
        &num.div(&den)? + &BoundedReal::from_int(2, prec)
    };
    let mut prev_margin = None;
    for k in 3..=MAX_K {
        let r3 = r3_coefficient(inputs, k)?;
        let margin = &r1 - &r3;
        if margin.is_positive() {
            return Ok(KThresholdReport {
                r1_coefficient: r1,
                r3_coefficient_base: base,
                min_k: k,
                margin_at_min_k: margin,
                margin_below_min_k: prev_margin,
                crossing,
            });
        }
        if !margin.hi().is_negative() && !margin.hi().is_zero() {
            return Err(Error::Inconclusive(format!(
                "r1 and r3({k}) overlap at {prec} bits"
            )));
        }
        prev_margin = Some(margin);
    }
    Err(Error::ResourceLimit(format!("no admissible k up to {MAX_K}")))
}

/// Result of the singular-integral volume comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JVolumeCheck {
    pub computed: BoundedReal,
    pub bound: BoundedReal,
    pub pass: bool,
    /// Some summation range may contain no integers.
    pub vacuous: bool,
}

/// Enclosure of `Σ_{m=a}^{b} m^(−2/3)` for integers `1 ≤ a ≤ b`, bracketed by
/// `3((b+1)^(1/3) − a^(1/3))` below and `a^(−2/3) + 3(b^(1/3) − a^(1/3))` above.
pub fn inverse_two_thirds_sum(a: u64, b: u64, prec: u32) -> Result<BoundedReal> {
    if a == 0 || b < a {
        return Err(invalid(format!("need 1 <= a <= b, got a = {a}, b = {b}")));
    }
    let cb = |m: u64| BoundedReal::from_int(m as i64, prec).cbrt();
    let ca = cb(a);
    let lower = (&cb(b + 1) - &ca).mul_int(3);
    let upper = &ca.square().recip()? + &(&cb(b) - &ca).mul_int(3);
    BoundedReal::from_endpoints(lower.lo().clone(), upper.hi().clone(), prec)
}

/// `⌊x⌋` over an interval: `(⌊lo⌋, ⌊hi⌋)`.
fn floor_range(x: &BoundedReal) -> (i64, i64) {
    let f = |d: &crate::numerics::Dyadic| d.to_scaled_decimal(0, Round::Down).to_i64().unwrap_or(i64::MAX);
    (f(x.lo()), f(x.hi()))
}

/// Enclosure of `Σ_{x < m ≤ c·x} m^(−2/3)` with `x` known only as an interval.
/// The second value is true when the range might be empty.
fn dyadic_range_sum(x: &BoundedReal, c: i64) -> Result<(BoundedReal, bool)> {
    let prec = x.precision();
    let (flo, fhi) = floor_range(x);
    let (blo, bhi) = floor_range(&x.mul_int(c));
    // first term between flo + 1 and fhi + 1, last term between blo and bhi
    let (a_min, a_max) = ((flo + 1).max(1) as u64, (fhi + 1).max(1) as u64);
    let (b_min, b_max) = (blo.max(0) as u64, bhi.max(0) as u64);
    if b_max < a_min {
        return Ok((BoundedReal::zero(prec), true));
    }
    let widest = inverse_two_thirds_sum(a_min, b_max, prec)?;
    if b_min < a_max {
        let z = BoundedReal::zero(prec);
        return Ok((z.hull(&widest), true));
    }
    let narrowest = inverse_two_thirds_sum(a_max, b_min, prec)?;
    Ok((narrowest.hull(&widest), false))
}

/// Checks `Σ m2^(−2/3) Σ m3^(−2/3) (Σ m4^(−2/3))² ≥ 3^4 (∛7 − 1)(1 − η)^4 U V W²`
/// with `U = ½((1−η)N)^(1/3)`, `V = ½(ηN)^(1/3)`, `W = U^(5/18)`, the sums over
/// `(U³, 7U³]`, `(V³, 8V³]` and `(W³, 8W³]`.
pub fn j_volume_check(n: u64, eta: &Decimal, prec: u32) -> Result<JVolumeCheck> {
    if !(10_000..=1_000_000_000).contains(&n) {
        return Err(invalid(format!("N = {n} outside [10^4, 10^9]")));
    }
    let eta_r = BoundedReal::from_decimal(eta, prec);
    let one = BoundedReal::one(prec);
    let one_minus = &one - &eta_r;
    if !eta_r.is_positive() || !one_minus.is_positive() {
        return Err(invalid("eta must lie in (0, 1)"));
    }
    let n_r = BoundedReal::from_int(n as i64, prec);
    let u3 = (&one_minus * &n_r).mul_pow2(-3);
    let v3 = (&eta_r * &n_r).mul_pow2(-3);
    let u = u3.cbrt();
    let v = v3.cbrt();
    let w = u.powi(5).nth_root(18)?;
    let w3 = w.powi(3);

    let (su, eu) = dyadic_range_sum(&u3, 7)?;
    let (sv, ev) = dyadic_range_sum(&v3, 8)?;
    let (sw, ew) = dyadic_range_sum(&w3, 8)?;
    let computed = &(&su * &sv) * &sw.square();

    let c7 = &BoundedReal::from_int(7, prec).cbrt() - &one;
    let bound = &(&(&c7.mul_int(81) * &one_minus.powi(4)) * &(&u * &v)) * &w.square();
    let pass = computed.lo() >= bound.hi();
    Ok(JVolumeCheck {
        computed,
        bound,
        pass,
        vacuous: eu || ev || ew,
    })
}

/// One-line summary used in logs and reports.
pub fn describe(report: &KThresholdReport) -> String {
    format!(
        "min_k = {} (crossing ≈ {:.4})",
        report.min_k,
        report.crossing.mid_f64()
    )
}

/// Exact `⌈x⌉` for a positive interval whose ceiling is unambiguous.
pub fn ceil_exact(x: &BoundedReal) -> Option<BigInt> {
    let lo = x.lo().to_scaled_decimal(0, Round::Up);
    let hi = x.hi().to_scaled_decimal(0, Round::Up);
    (lo == hi).then_some(lo)
}
