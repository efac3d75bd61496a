//! Powers of two modulo an odd `q`: the period `δ(q)`, the sums
//! `θ(t) = Σ_{s=1}^{δ} e(t·2^s / q)`, exact residue counts of sums of `k` powers,
//! and the averaged singular-series bound built on them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::arith::multiplicative_order;
use crate::constants;
use crate::error::{invalid, Error, Result};
use crate::numerics::{BoundedReal, ComplexInterval, Decimal, RootsOfUnity, Verdict};
use crate::series::{self, SeriesConstants};

/// `δ(q)` and the moduli `|θ(t)|`.
#[derive(Clone, Debug)]
pub struct PowerTwoProfile {
    q: u64,
    delta: u64,
    /// `θ(t)` for `t = 0..q`; `θ(0) = δ`.
    theta: Vec<ComplexInterval>,
    theta_abs: Vec<BoundedReal>,
    theta_max: BoundedReal,
    argmax: u64,
}

impl PowerTwoProfile {
    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// `θ(t)` for any integer `t`.
    pub fn theta(&self, t: i64) -> &ComplexInterval {
        &self.theta[t.rem_euclid(self.q as i64) as usize]
    }

    /// `|θ(t)|` for `t = 1..q`, indexed from zero.
    pub fn theta_abs(&self) -> &[BoundedReal] {
        &self.theta_abs
    }

    /// Interval maximum of `|θ(t)|` over `0 < t < q`.
    pub fn theta_max(&self) -> &BoundedReal {
        &self.theta_max
    }

    /// Smallest `t` whose enclosure has the largest upper endpoint.
    pub fn argmax(&self) -> u64 {
        self.argmax
    }
}

fn require_odd_modulus(q: u64) -> Result<()> {
    if q < 3 || q.is_multiple_of(2) {
        return Err(invalid(format!("modulus {q} must be odd and at least 3")));
    }
    Ok(())
}

/// `2^s mod q` for `s = 1..=δ`.
fn power_residues(q: u64, delta: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(delta as usize);
    let mut x = 1u64;
    for _ in 0..delta {
        x = (x * 2) % q;
        out.push(x);
    }
    out
}

/// Full-period sums `θ(t)` for `t = 0..q` and their moduli.
pub fn theta_profile(q: u64, prec: u32) -> Result<PowerTwoProfile> {
    require_odd_modulus(q)?;
    let delta = multiplicative_order(2, q)?;
    let roots = RootsOfUnity::new(q, prec)?;
    let pows = power_residues(q, delta);
    let mut theta = Vec::with_capacity(q as usize);
    theta.push(ComplexInterval::real(BoundedReal::from_int(delta as i64, prec)));
    for t in 1..q {
        let mut s = ComplexInterval::zero(prec);
        for &r in &pows {
            s = &s + roots.get(((t as u128 * r as u128) % q as u128) as i64);
        }
        theta.push(s);
    }
    let theta_abs: Vec<BoundedReal> = theta[1..].iter().map(|z| z.abs()).collect();
    let mut argmax = 0usize;
    let mut theta_max = theta_abs[0].clone();
    for (i, a) in theta_abs.iter().enumerate().skip(1) {
        if a.hi() > theta_abs[argmax].hi() {
            argmax = i;
        }
        theta_max = theta_max.max(a);
    }
    Ok(PowerTwoProfile {
        q,
        delta,
        theta,
        theta_abs,
        theta_max,
        argmax: argmax as u64 + 1,
    })
}

/// Number of tuples `(v_1..v_k) ∈ [1, δ]^k` with `Σ 2^{v_s} ≡ r (mod q)`, for
/// every residue `r`.
pub fn power_sum_counts(q: u64, k: u32) -> Result<Vec<BigUint>> {
    require_odd_modulus(q)?;
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let delta = multiplicative_order(2, q)?;
    let pows = power_residues(q, delta);
    let qs = q as usize;
    let mut counts = vec![BigUint::zero(); qs];
    counts[0] = BigUint::from(1u32);
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); qs];
        for (r, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &p in &pows {
                let j = (r + p as usize) % qs;
                next[j] += c;
            }
        }
        counts = next;
    }
    Ok(counts)
}

/// Exact count for a single residue; see [`power_sum_counts`].
pub fn power_sum_count_dp(q: u64, k: u32, r: i64) -> Result<BigUint> {
    let counts = power_sum_counts(q, k)?;
    Ok(counts[r.rem_euclid(q as i64) as usize].clone())
}

/// `(1/q) Σ_{t=0}^{q-1} e(-t r / q) θ(t)^k`, the character-sum form of the count.
pub fn power_sum_count_formula_with(profile: &PowerTwoProfile, k: u32, r: i64) -> Result<BoundedReal> {
    let q = profile.modulus();
    let prec = profile.theta_max().precision();
    let roots = RootsOfUnity::new(q, prec)?;
    let mut s = ComplexInterval::zero(prec);
    for t in 0..q as i64 {
        let tr = ((t as i128 * r as i128).rem_euclid(q as i128)) as i64;
        s = &s + &(roots.get(-tr) * &profile.theta(t).powi(k));
    }
    if !s.im.contains_zero() {
        return Err(Error::Domain {
            op: "power_sum_count_formula",
            detail: format!("imaginary part excludes zero for q = {q}, k = {k}, r = {r}"),
        });
    }
    s.re.div_int(q as i64)
}

pub fn power_sum_count_formula(q: u64, k: u32, r: i64, prec: u32) -> Result<BoundedReal> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    power_sum_count_formula_with(&theta_profile(q, prec)?, k, r)
}

/// `(1/q)(1 − (q − 1)(θ_max/δ)^k)` from a computed profile.
pub fn s_lower_from_profile(profile: &PowerTwoProfile, k: u32) -> Result<BoundedReal> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    let q = profile.modulus() as i64;
    let prec = profile.theta_max().precision();
    let ratio = profile.theta_max().div_int(profile.delta() as i64)?;
    let inner = &BoundedReal::one(prec) - &ratio.powi(k).mul_int(q - 1);
    inner.div_int(q)
}

pub fn s_lower_constant(q: u64, k: u32, prec: u32) -> Result<BoundedReal> {
    s_lower_from_profile(&theta_profile(q, prec)?, k)
}

/// `Σ_j (1 + A(j, p))² ≥ p` for one of the primes dividing the power modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareSumCheck {
    pub p: u64,
    pub sum_sq: BoundedReal,
    pub verdict: Verdict,
}

/// Pieces of the averaged singular-series lower bound `(2C)² · s · q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularSumBound {
    pub k: u32,
    pub c: BoundedReal,
    pub s: BoundedReal,
    pub value: BoundedReal,
    pub square_sums: Vec<SquareSumCheck>,
}

impl SingularSumBound {
    pub fn verdict(&self) -> Verdict {
        self.value
            .check_at_least(&Decimal::parse(constants::SINGULAR_SUM_BOUND).expect("literal"))
    }
}

pub fn square_sum_checks(prec: u32) -> Result<Vec<SquareSumCheck>> {
    constants::EXCLUDED_SMALL_PRIMES
        .iter()
        .map(|&p| {
            let (_, sum_sq) = series::residue_sum_checks(p, prec)?;
            let verdict = sum_sq.check_at_least(&Decimal::parse(&format!("{p}")).expect("integer"));
            Ok(SquareSumCheck { p, sum_sq, verdict })
        })
        .collect()
}

/// `(2C)² · s · q` from an already computed `C` and profile of `q = 5187`.
pub fn singular_sum_lower_with(
    c: &BoundedReal,
    profile: &PowerTwoProfile,
    k: u32,
) -> Result<SingularSumBound> {
    if k < constants::SINGULAR_SUM_MIN_K {
        return Err(invalid(format!(
            "k = {k} is below {}",
            constants::SINGULAR_SUM_MIN_K
        )));
    }
    let prec = c.precision();
    let s = s_lower_from_profile(profile, k)?;
    let two_c = c.mul_pow2(1);
    let value = (&two_c.square() * &s).mul_int(profile.modulus() as i64);
    Ok(SingularSumBound {
        k,
        c: c.clone(),
        s,
        value,
        square_sums: square_sum_checks(prec)?,
    })
}

/// Full chain: computes `C` and `θ` for `q = 5187`.
pub fn singular_sum_lower(k: u32, prec: u32) -> Result<SingularSumBound> {
    let SeriesConstants { c, .. } = series::constant_c(prec)?;
    let profile = theta_profile(constants::POWER_MODULUS, prec)?;
    singular_sum_lower_with(&c, &profile, k)
}

/// Inputs for enumerating `Ξ(N, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct XiParameters {
    pub n: u64,
    pub k: u32,
    pub l: u32,
    pub v_min: u32,
}

pub const XI_MAX_K: u32 = 12;
pub const XI_MAX_L: u32 = 30;
/// Cap on distinct partial sums tracked during enumeration.
const XI_MAX_STATES: usize = 4_000_000;

impl XiParameters {
    /// `L = ⌊log₂(N / ln N)⌋`, decided with interval arithmetic.
    pub fn new(n: u64, k: u32, prec: u32) -> Result<Self> {
        if n < 3 {
            return Err(invalid("N must be at least 3"));
        }
        let ln_n = BoundedReal::from_int(n as i64, prec).ln()?;
        let big_n = BoundedReal::from_int(n as i64, prec);
        // largest l with 2^l · ln N ≤ N
        let mut l = 0u32;
        loop {
            let lhs = ln_n.mul_pow2(l as i64 + 1);
            let diff = &big_n - &lhs;
            if diff.is_negative() {
                break;
            }
            if !diff.lo().is_negative() {
                l += 1;
                continue;
            }
            return Err(Error::Inconclusive(format!(
                "cannot decide ⌊log₂(N/ln N)⌋ for N = {n} at {prec} bits"
            )));
        }
        Ok(XiParameters { n, k, l, v_min: 4 })
    }

    pub fn with_l(n: u64, k: u32, l: u32) -> Self {
        XiParameters { n, k, l, v_min: 4 }
    }
}

/// All `n = N − Σ 2^{v_j} ≥ 2` with `v_min ≤ v_j ≤ L`, each with the number of
/// ordered exponent tuples that produce it, in increasing order of `n`.
pub fn enumerate_xi(params: &XiParameters) -> Result<Vec<(u64, u64)>> {
    let XiParameters { n, k, l, v_min } = *params;
    if n % 2 == 0 {
        return Err(invalid(format!("N = {n} must be odd")));
    }
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    if k > XI_MAX_K || l > XI_MAX_L {
        return Err(Error::ResourceLimit(format!(
            "enumerate_xi caps k ≤ {XI_MAX_K} and L ≤ {XI_MAX_L} (got k = {k}, L = {l})"
        )));
    }
    if l < v_min || n < 2 {
        return Ok(Vec::new());
    }
    let budget = n - 2;
    // ordered tuple counts keyed by partial sum
    let mut sums: BTreeMap<u64, u64> = BTreeMap::new();
    sums.insert(0, 1);
    for _ in 0..k {
        let mut next: BTreeMap<u64, u64> = BTreeMap::new();
        for (&s, &c) in &sums {
            for v in v_min..=l {
                let t = s + (1u64 << v);
                if t > budget {
                    break;
                }
                *next.entry(t).or_insert(0) += c;
            }
        }
        if next.len() > XI_MAX_STATES {
            return Err(Error::ResourceLimit(format!(
                "enumerate_xi exceeded {XI_MAX_STATES} partial sums"
            )));
        }
        sums = next;
    }
    Ok(sums.into_iter().rev().map(|(s, c)| (n - s, c)).collect())
}

/// `Σ_{t=0}^{q-1} |θ(t)|²`, which equals `q · δ(q)`.
pub fn theta_square_sum(profile: &PowerTwoProfile) -> BoundedReal {
    let prec = profile.theta_max().precision();
    (0..profile.modulus() as i64).fold(BoundedReal::zero(prec), |acc, t| {
        &acc + &profile.theta(t).norm_sqr()
    })
}

/// Exact `q · δ(q)` for comparison with [`theta_square_sum`].
pub fn parseval_target(profile: &PowerTwoProfile) -> BigInt {
    BigInt::from(profile.modulus()) * BigInt::from(profile.delta())
}
