//! Local densities of the singular series and the lower-bound chain for the
//! Euler product `∏_p (1 + A(n, p))`.
//!
//! With `C_j(q, a) = Σ_{m ≤ q, (m, q) = 1} e(a m^j / q)` the local density is
//!
//! ```text
//! A(n, q) = φ(q)^-5 · Σ_{a ≤ q, (a, q) = 1} C_1(q, a) · C_3(q, a)^4 · e(-a n / q)
//! ```
//!
//! and `C_1(q, a) = μ(q)` for `(a, q) = 1`. Everything below is evaluated as
//! complex interval sums; the real part is kept only after checking that the
//! imaginary enclosure contains zero.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{self, gcd, is_prime, sieve_primes};
use crate::constants;
use crate::error::{invalid, Error, Result};
use crate::numerics::{BoundedReal, ComplexInterval, Decimal, RootsOfUnity, Verdict};

/// Which exact formula (if any) describes `1 + A(n, p)` for this prime and residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// `p = 3`: `15/16` when `3 | n`, `33/32` otherwise.
    P3,
    /// `p ≡ 2 (mod 3)`, `p | n`: `1 − 1/(p−1)^4`.
    P2Mod3Divides,
    /// `p ≡ 2 (mod 3)`, `p ∤ n`: `1 + 1/(p−1)^5`.
    P2Mod3Coprime,
    /// `p ≡ 1 (mod 3)`: no closed form, evaluated from the definition.
    Generic,
}

impl ClosedForm {
    pub fn classify(p: u64, residue: u64) -> Self {
        if p == 3 {
            ClosedForm::P3
        } else if p % 3 == 2 {
            if residue.is_multiple_of(p) {
                ClosedForm::P2Mod3Divides
            } else {
                ClosedForm::P2Mod3Coprime
            }
        } else {
            ClosedForm::Generic
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ClosedForm::P3 => "P3",
            ClosedForm::P2Mod3Divides => "P2MOD3_DIVIDES",
            ClosedForm::P2Mod3Coprime => "P2MOD3_COPRIME",
            ClosedForm::Generic => "GENERIC",
        }
    }
}

/// Exact value of `1 + A(n, p)` as `(numerator, denominator)` where a closed
/// form exists.
pub fn closed_form_factor(p: u64, n: i64) -> Option<(BigInt, BigInt)> {
    let r = n.rem_euclid(p as i64) as u64;
    match ClosedForm::classify(p, r) {
        ClosedForm::P3 => Some(if r == 0 {
            (BigInt::from(15), BigInt::from(16))
        } else {
            (BigInt::from(33), BigInt::from(32))
        }),
        ClosedForm::P2Mod3Divides => {
            let d = num_traits::pow(BigInt::from(p - 1), 4);
            Some((&d - 1, d))
        }
        ClosedForm::P2Mod3Coprime => {
            let d = num_traits::pow(BigInt::from(p - 1), 5);
            Some((&d + 1, d))
        }
        ClosedForm::Generic => None,
    }
}

/// Minimum over residues of `1 + A(n, p)` for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactorRecord {
    pub p: u64,
    /// Residue with the smallest lower endpoint (ties to the smaller residue).
    pub residue: u64,
    /// Pointwise interval minimum over all residues.
    pub factor: BoundedReal,
    pub closed_form: ClosedForm,
    /// Exact minimum as `(numerator, denominator)` when it comes from a closed form.
    pub exact: Option<(BigInt, BigInt)>,
}

impl LocalFactorRecord {
    /// `factor ≥ bound`, decided exactly when the minimum is a known rational.
    pub fn check_at_least(&self, bound: &Decimal) -> Verdict {
        match &self.exact {
            Some((num, den)) => {
                // num/den ≥ b/d  ⇔  num·d ≥ b·den  (denominators positive)
                if num * bound.denom() >= bound.numer() * den {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                }
            }
            None => self.factor.check_at_least(bound),
        }
    }
}

/// The three blocks whose product bounds `∏_{p ∉ {2,3,7,13,19}} (1 + A(n, p))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesConstants {
    pub small_prime_product: BoundedReal,
    pub midrange_product: BoundedReal,
    pub tail_product: BoundedReal,
    pub c: BoundedReal,
}

impl SeriesConstants {
    /// Verdicts of each block against its reference bound, in block order.
    pub fn verdicts(&self) -> [(&'static str, Verdict); 4] {
        let check = |x: &BoundedReal, b: &str| x.check_at_least(&Decimal::parse(b).expect("literal"));
        [
            (
                "small_prime_product",
                check(&self.small_prime_product, constants::SMALL_PRIME_PRODUCT_BOUND),
            ),
            (
                "midrange_product",
                check(&self.midrange_product, constants::MIDRANGE_PRODUCT_BOUND),
            ),
            ("tail_product", check(&self.tail_product, constants::TAIL_PRODUCT_BOUND)),
            ("C", check(&self.c, constants::SERIES_CONSTANT_BOUND)),
        ]
    }
}

/// `C_1(q, a) = μ(q)` for `(a, q) = 1`.
pub fn c1_sum(q: u64, a: i64) -> Result<i8> {
    require_coprime(q, a)?;
    arith::mobius(q)
}

/// `C_1(q, a)` summed term by term; cross-check for [`c1_sum`].
pub fn c1_sum_direct(q: u64, a: i64, prec: u32) -> Result<ComplexInterval> {
    require_coprime(q, a)?;
    let roots = RootsOfUnity::new(q, prec)?;
    let mut s = ComplexInterval::zero(prec);
    for m in 1..=q {
        if gcd(m, q) == 1 {
            s = &s + roots.get(mul_residue(a, m, q));
        }
    }
    Ok(s)
}

/// Enclosure of `C_3(q, a) = Σ_{(m, q) = 1} e(a m³ / q)`.
pub fn c3_sum(q: u64, a: i64, prec: u32) -> Result<ComplexInterval> {
    require_coprime(q, a)?;
    let roots = RootsOfUnity::new(q, prec)?;
    let cubes = coprime_cubes(q);
    Ok(cubic_sum(&roots, &cubes, a))
}

fn require_coprime(q: u64, a: i64) -> Result<()> {
    if q == 0 {
        return Err(invalid("modulus q must be positive"));
    }
    if gcd(a.rem_euclid(q as i64) as u64, q) != 1 {
        return Err(invalid(format!("a = {a} is not coprime to q = {q}")));
    }
    Ok(())
}

/// `a · m mod q` as a nonnegative index.
fn mul_residue(a: i64, m: u64, q: u64) -> i64 {
    let a = a.rem_euclid(q as i64) as u128;
    ((a * m as u128) % q as u128) as i64
}

/// `m³ mod q` for `1 ≤ m ≤ q` coprime to `q`.
fn coprime_cubes(q: u64) -> Vec<u64> {
    (1..=q)
        .filter(|&m| gcd(m, q) == 1)
        .map(|m| {
            let m = m as u128 % q as u128;
            (m * m % q as u128 * m % q as u128) as u64
        })
        .collect()
}

fn cubic_sum(roots: &RootsOfUnity, cubes: &[u64], a: i64) -> ComplexInterval {
    let q = roots.modulus();
    let mut s = ComplexInterval::zero(roots.points()[0].re.precision());
    for &c in cubes {
        s = &s + roots.get(mul_residue(a, c, q));
    }
    s
}

/// `A(n, q)` for every `n` modulo one fixed `q`, sharing the cubic sums.
#[derive(Clone, Debug)]
pub struct LocalDensities {
    q: u64,
    prec: u32,
    roots: RootsOfUnity,
    /// `(a, C_3(q, a)^4)` for `a` coprime to `q`.
    weights: Vec<(u64, ComplexInterval)>,
    /// `μ(q) / φ(q)^5`.
    scale: BoundedReal,
}

impl LocalDensities {
    pub fn new(q: u64, prec: u32) -> Result<Self> {
        if q == 0 {
            return Err(invalid("modulus q must be positive"));
        }
        let roots = RootsOfUnity::new(q, prec)?;
        let mu = arith::mobius(q)?;
        let phi = arith::euler_phi(q)?;
        let mut weights = Vec::new();
        if mu != 0 {
            let cubes = coprime_cubes(q);
            for a in (1..=q).filter(|&a| gcd(a, q) == 1) {
                let c3 = cubic_sum(&roots, &cubes, a as i64);
                weights.push((a, c3.square().square()));
            }
        }
        let phi5 = BoundedReal::from_bigint(&num_traits::pow(BigInt::from(phi), 5), prec);
        let scale = BoundedReal::from_int(mu as i64, prec).div(&phi5)?;
        Ok(LocalDensities {
            q,
            prec,
            roots,
            weights,
            scale,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Complex enclosure of `A(n, q)` straight from the definition.
    pub fn complex(&self, n: i64) -> ComplexInterval {
        let r = n.rem_euclid(self.q as i64) as u64;
        let mut s = ComplexInterval::zero(self.prec);
        for (a, w) in &self.weights {
            // e(-a n / q)
            let idx = -mul_residue(*a as i64, r, self.q);
            s = &s + &(w * self.roots.get(idx));
        }
        s.scale(&self.scale)
    }

    /// Real enclosure of `A(n, q)`; errors if the imaginary part excludes zero.
    pub fn real(&self, n: i64) -> Result<BoundedReal> {
        let z = self.complex(n);
        if !z.im.contains_zero() {
            return Err(Error::Domain {
                op: "local_density",
                detail: format!("imaginary part of A({n}, {}) excludes zero", self.q),
            });
        }
        Ok(z.re)
    }
}

/// Enclosure of `A(n, q)`. For `q = 1` the definition gives exactly 1.
pub fn local_density(n: i64, q: u64, prec: u32) -> Result<BoundedReal> {
    LocalDensities::new(q, prec)?.real(n)
}

/// Does `A(n, q1 q2)` intersect `A(n, q1) · A(n, q2)` for coprime squarefree moduli?
pub fn multiplicativity_check(n: i64, q1: u64, q2: u64, prec: u32) -> Result<bool> {
    if q1 == 0 || q2 == 0 {
        return Err(invalid("moduli must be positive"));
    }
    if gcd(q1, q2) != 1 {
        return Err(invalid(format!("moduli {q1} and {q2} are not coprime")));
    }
    if !arith::is_squarefree(q1) || !arith::is_squarefree(q2) {
        return Err(invalid(format!("moduli {q1} and {q2} must be squarefree")));
    }
    let joint = local_density(n, q1 * q2, prec)?;
    let split = &local_density(n, q1, prec)? * &local_density(n, q2, prec)?;
    Ok(joint.intersects(&split))
}

/// Enclosures of `1 + A(r, p)` for `r = 0..p`, straight from the definition.
pub fn euler_factors(p: u64, prec: u32) -> Result<Vec<BoundedReal>> {
    let dens = LocalDensities::new(p, prec)?;
    let one = BoundedReal::one(prec);
    (0..p as i64)
        .map(|r| dens.real(r).map(|a| &one + &a))
        .collect()
}

/// Like [`euler_factors`], but where a closed form exists the generic
/// enclosure must contain it and is then replaced by the exact point.
pub fn euler_factors_sharp(p: u64, prec: u32) -> Result<Vec<BoundedReal>> {
    let mut factors = euler_factors(p, prec)?;
    for (r, f) in factors.iter_mut().enumerate() {
        if let Some((num, den)) = closed_form_factor(p, r as i64) {
            if !f.contains_ratio(&num, &den) {
                return Err(Error::Domain {
                    op: "euler_factor",
                    detail: format!("1 + A({r}, {p}) misses its closed form {num}/{den}"),
                });
            }
            *f = BoundedReal::from_ratio(&num, &den, prec)?;
        }
    }
    Ok(factors)
}

/// Minimum of `1 + A(r, p)` over all residues `r`, for a prime `p ≥ 3`.
/// Closed-form residues enter as exact points (see [`euler_factors_sharp`]).
pub fn euler_factor_min(p: u64, prec: u32) -> Result<LocalFactorRecord> {
    if p < 3 || !is_prime(p) {
        return Err(invalid(format!("euler_factor_min: {p} is not an odd prime")));
    }
    let factors = euler_factors_sharp(p, prec)?;
    let mut best = 0usize;
    for (r, f) in factors.iter().enumerate().skip(1) {
        if f.lo() < factors[best].lo() {
            best = r;
        }
    }
    let factor = factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.min(f));
    // the minimum is exact when every residue has a closed form
    let exact = if ClosedForm::classify(p, 0) == ClosedForm::Generic {
        None
    } else {
        closed_form_factor(p, best as i64)
    };
    Ok(LocalFactorRecord {
        p,
        residue: best as u64,
        factor,
        closed_form: ClosedForm::classify(p, best as u64),
        exact,
    })
}

/// Euler-factor minima for every odd prime `p ≤ max_p`.
pub fn euler_factor_table(max_p: u64, prec: u32) -> Result<Vec<LocalFactorRecord>> {
    if max_p < 3 {
        return Ok(Vec::new());
    }
    sieve_primes(max_p)?
        .primes()
        .iter()
        .filter(|&&p| p >= 3)
        .map(|&p| euler_factor_min(p, prec))
        .collect()
}

/// Primes entering the small-prime block: `{5, 11, 17} ∪ {23 ≤ p < 200}`.
pub fn small_product_primes() -> Vec<u64> {
    sieve_primes(constants::MIDRANGE_START)
        .expect("limit >= 2")
        .primes()
        .iter()
        .copied()
        .filter(|p| *p >= 5 && !constants::EXCLUDED_SMALL_PRIMES.contains(p))
        .collect()
}

/// Product of Euler-factor minima over the given primes.
pub fn small_prime_product_over(primes: &[u64], prec: u32) -> Result<BoundedReal> {
    let mut acc = BoundedReal::one(prec);
    for &p in primes {
        acc = &acc * &euler_factor_min(p, prec)?.factor;
    }
    Ok(acc)
}

/// Product of Euler-factor minima over `p ∈ {5, 11, 17} ∪ {23..199}`.
pub fn small_prime_product(prec: u32) -> Result<BoundedReal> {
    small_prime_product_over(&small_product_primes(), prec)
}

/// Per-prime lower bound used beyond 200: `1 − (2√p + 1)^4/(p − 1)^4` for
/// `p ≡ 1 (mod 3)` and `1 − 1/(p − 1)^4` otherwise.
pub fn midrange_factor(p: u64, prec: u32) -> BoundedReal {
    let one = BoundedReal::one(prec);
    let pm1_4 = BoundedReal::from_int(p as i64 - 1, prec).powi(4);
    let numer = if p % 3 == 1 {
        let root = BoundedReal::from_int(p as i64, prec)
            .sqrt()
            .expect("p > 0");
        (&root.mul_pow2(1) + &one).powi(4)
    } else {
        one.clone()
    };
    &one - &numer.div(&pm1_4).expect("p > 1")
}

/// Left-to-right product of [`midrange_factor`] over the given primes.
pub fn midrange_product_over(primes: &[u64], prec: u32) -> BoundedReal {
    primes
        .iter()
        .fold(BoundedReal::one(prec), |acc, &p| &acc * &midrange_factor(p, prec))
}

/// Product of [`midrange_factor`] over primes in `[lo, hi)`.
pub fn midrange_product(lo: u64, hi: u64, prec: u32) -> Result<BoundedReal> {
    if lo <= 2 {
        return Err(invalid("midrange_product: lower end must exceed 2"));
    }
    if hi <= lo {
        return Err(invalid("midrange_product: need lo < hi"));
    }
    let table = sieve_primes(hi)?;
    Ok(midrange_product_over(table.range(lo, hi), prec))
}

/// `((M − 1)/M)^17`, the closed form of `∏_{m ≥ M+1} (1 − 1/(m − 1)²)^17`.
pub fn tail_product(m: u64, prec: u32) -> Result<BoundedReal> {
    if m < 3 {
        return Err(invalid("tail_product: M must be at least 3"));
    }
    let e = constants::TAIL_EXPONENT as usize;
    let num = num_traits::pow(BigInt::from(m - 1), e);
    let den = num_traits::pow(BigInt::from(m), e);
    BoundedReal::from_ratio(&num, &den, prec)
}

/// Assembles the three blocks and their product `C`.
///
/// Returns [`Error::Inconclusive`] when any block straddles its reference
/// bound; a block that is entirely below its bound is reported through
/// [`SeriesConstants::verdicts`] instead.
pub fn constant_c(prec: u32) -> Result<SeriesConstants> {
    let small = small_prime_product(prec)?;
    let mid = midrange_product(constants::MIDRANGE_START, constants::MIDRANGE_END, prec)?;
    let tail = tail_product(constants::MIDRANGE_END, prec)?;
    assemble_constants(small, mid, tail)
}

/// `C` from precomputed blocks, with the same inconclusive handling as
/// [`constant_c`].
pub fn assemble_constants(
    small: BoundedReal,
    mid: BoundedReal,
    tail: BoundedReal,
) -> Result<SeriesConstants> {
    let c = &(&small * &mid) * &tail;
    let out = SeriesConstants {
        small_prime_product: small,
        midrange_product: mid,
        tail_product: tail,
        c,
    };
    if let Some((name, _)) = out
        .verdicts()
        .iter()
        .find(|(_, v)| *v == Verdict::Inconclusive)
    {
        return Err(Error::Inconclusive(format!(
            "{name} straddles its bound at {} bits",
            out.c.precision()
        )));
    }
    Ok(out)
}

/// `(Σ_{j=1}^{p} A(j, p), Σ_{j=1}^{p} (1 + A(j, p))²)`.
pub fn residue_sum_checks(p: u64, prec: u32) -> Result<(BoundedReal, BoundedReal)> {
    if p < 3 {
        return Err(invalid("residue_sum_checks: p must be at least 3"));
    }
    let factors = euler_factors(p, prec)?;
    let one = BoundedReal::one(prec);
    let mut sum_a = BoundedReal::zero(prec);
    let mut sum_sq = BoundedReal::zero(prec);
    for f in &factors {
        sum_a = &sum_a + &(f - &one);
        sum_sq = &sum_sq + &f.square();
    }
    Ok((sum_a, sum_sq))
}

/// Exact `1 + A(n, p)` closed form as an interval, when one exists.
pub fn closed_form_enclosure(p: u64, n: i64, prec: u32) -> Option<BoundedReal> {
    closed_form_factor(p, n).map(|(num, den)| {
        BoundedReal::from_ratio(&num, &den, prec).expect("positive denominator")
    })
}

/// `1 − 1/(p−1)^4` and `1 + 1/(p−1)^5` as exact rationals, for reporting.
pub fn closed_form_pair(p: u64) -> ((BigInt, BigInt), (BigInt, BigInt)) {
    let d4 = num_traits::pow(BigInt::from(p - 1), 4);
    let d5 = num_traits::pow(BigInt::from(p - 1), 5);
    ((&d4 - BigInt::one(), d4), (&d5 + BigInt::one(), d5))
}
