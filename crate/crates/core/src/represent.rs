//! Explicit representations `N = p1 + p2³ + p3³ + p4³ + p5³ + Σ 2^{v_j}` at
//! small scale, including pairs sharing the same powers of two.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{is_prime, sieve_primes};
use crate::error::{invalid, Error, Result};
use crate::numerics::Decimal;

pub const MAX_N: u64 = 100_000_000;
pub const MAX_K: u32 = 8;
pub const MIN_EXPONENT: u32 = 4;
pub const MAX_SCAN_WIDTH: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepresentationWitness {
    pub n: u64,
    pub p1: u64,
    pub cubes: [u64; 4],
    /// Exponents in nondecreasing order.
    pub powers: Vec<u32>,
    pub constrained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub w1: RepresentationWitness,
    pub w2: RepresentationWitness,
}

/// Dyadic ranges `p2 ∈ (U, 2U]`, `p3 ∈ (V, 2V]`, `p4, p5 ∈ (W, 2W]` with
/// `U = ½((1−η)N)^(1/3)`, `V = ½(ηN)^(1/3)`, `W = U^(5/18)`, as prime lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicRanges {
    pub u_primes: Vec<u64>,
    pub v_primes: Vec<u64>,
    pub w_primes: Vec<u64>,
}

/// `x ∈ (A, 2A]` where `A^e = num/den`, decided exactly via `x^e` vs `num/den`.
fn in_dyadic(x: u64, e: u32, num: &BigInt, den: &BigInt) -> bool {
    let xe = num_traits::pow(BigInt::from(x), e as usize);
    let lhs = &xe * den;
    let two_e = BigInt::one() << e as usize;
    lhs > *num && lhs <= &two_e * num
}

impl DyadicRanges {
    pub fn new(n: u64, eta: &Decimal) -> Result<Self> {
        let (en, ed) = (eta.numer().clone(), eta.denom().clone());
        if en <= BigInt::zero() || en >= ed {
            return Err(invalid("eta must lie in (0, 1)"));
        }
        let nb = BigInt::from(n);
        // U³ = (1−η)N/8, V³ = ηN/8, W^54 = (U³)^5
        let u3: (BigInt, BigInt) = (&(&ed - &en) * &nb, &ed * 8u32);
        let v3: (BigInt, BigInt) = (&en * &nb, &ed * 8u32);
        let w54 = (num_traits::pow(u3.0.clone(), 5), num_traits::pow(u3.1.clone(), 5));
        let limit = crate::arith::isqrt(n).max(2);
        let table = sieve_primes(limit)?;
        let pick = |e: u32, r: &(BigInt, BigInt)| -> Vec<u64> {
            table
                .primes()
                .iter()
                .copied()
                .filter(|&p| in_dyadic(p, e, &r.0, &r.1))
                .collect()
        };
        Ok(DyadicRanges {
            u_primes: pick(3, &u3),
            v_primes: pick(3, &v3),
            w_primes: pick(54, &w54),
        })
    }

    pub fn contains(&self, cubes: &[u64; 4]) -> bool {
        self.u_primes.binary_search(&cubes[0]).is_ok()
            && self.v_primes.binary_search(&cubes[1]).is_ok()
            && self.w_primes.binary_search(&cubes[2]).is_ok()
            && self.w_primes.binary_search(&cubes[3]).is_ok()
    }
}

fn check_caps(n: u64, k: u32) -> Result<()> {
    if k == 0 {
        return Err(invalid("k must be positive"));
    }
    if n < 5 {
        return Err(invalid(format!("N = {n} is below 5")));
    }
    if n > MAX_N || k > MAX_K {
        return Err(Error::ResourceLimit(format!(
            "search caps are N <= {MAX_N} and k <= {MAX_K} (got N = {n}, k = {k})"
        )));
    }
    Ok(())
}

/// Nondecreasing exponent lists of length `k` in lexicographic order, with
/// `Σ 2^v ≤ budget`.
struct PowerLists {
    k: usize,
    budget: u64,
    current: Option<Vec<u32>>,
}

impl PowerLists {
    fn new(k: u32, budget: u64) -> Self {
        let start = vec![MIN_EXPONENT; k as usize];
        let fits = (k as u64) << MIN_EXPONENT <= budget;
        PowerLists {
            k: k as usize,
            budget,
            current: fits.then_some(start),
        }
    }

    fn total(v: &[u32]) -> u64 {
        v.iter().map(|&e| 1u64 << e).sum()
    }
}

impl Iterator for PowerLists {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        // advance: bump the rightmost position that can grow, reset the tail to it
        let mut v = out.clone();
        let mut i = self.k;
        while i > 0 {
            i -= 1;
            let e = v[i] + 1;
            if e >= 63 {
                continue;
            }
            for slot in &mut v[i..] {
                *slot = e;
            }
            if Self::total(&v) <= self.budget {
                self.current = Some(v);
                break;
            }
        }
        Some(out)
    }
}

/// Ascending primes whose cubes fit under `limit`.
fn cube_primes(limit: u64) -> Result<Vec<u64>> {
    let mut r = 1u64;
    while (r + 1).pow(3) <= limit {
        r += 1;
    }
    if r < 2 {
        return Ok(Vec::new());
    }
    Ok(sieve_primes(r)?.primes().to_vec())
}

/// First `(p1, cubes)` with `rest = p1 + Σ cubes`, cubes nondecreasing and in
/// lexicographic order.
fn free_cubes(rest: u64, primes: &[u64]) -> Option<(u64, [u64; 4])> {
    let c: Vec<u64> = primes.iter().map(|p| p * p * p).collect();
    let m = c.len();
    for a in 0..m {
        if 4 * c[a] + 2 > rest {
            break;
        }
        for b in a..m {
            if c[a] + 3 * c[b] + 2 > rest {
                break;
            }
            for cc in b..m {
                if c[a] + c[b] + 2 * c[cc] + 2 > rest {
                    break;
                }
                let partial = c[a] + c[b] + c[cc];
                for d in cc..m {
                    let s = partial + c[d];
                    if s + 2 > rest {
                        break;
                    }
                    if is_prime(rest - s) {
                        return Some((rest - s, [primes[a], primes[b], primes[cc], primes[d]]));
                    }
                }
            }
        }
    }
    None
}

/// Constrained variant: `p2 ∈ U`, `p3 ∈ V`, `p4 ≤ p5` both in `W`.
fn ranged_cubes(rest: u64, r: &DyadicRanges) -> Option<(u64, [u64; 4])> {
    let cube = |p: u64| p * p * p;
    for &a in &r.u_primes {
        for &b in &r.v_primes {
            for (i, &c) in r.w_primes.iter().enumerate() {
                for &d in &r.w_primes[i..] {
                    let s = cube(a) + cube(b) + cube(c) + cube(d);
                    if s + 2 > rest {
                        break;
                    }
                    if is_prime(rest - s) {
                        return Some((rest - s, [a, b, c, d]));
                    }
                }
            }
        }
    }
    None
}

enum Mode<'a> {
    Free(&'a [u64]),
    Ranged(&'a DyadicRanges),
}

impl Mode<'_> {
    fn solve(&self, rest: u64) -> Option<(u64, [u64; 4])> {
        match self {
            Mode::Free(p) => free_cubes(rest, p),
            Mode::Ranged(r) => ranged_cubes(rest, r),
        }
    }

    fn constrained(&self) -> bool {
        matches!(self, Mode::Ranged(_))
    }
}

fn with_mode<T>(n: u64, eta: Option<&Decimal>, f: impl FnOnce(Mode<'_>) -> T) -> Result<T> {
    match eta {
        None => {
            let primes = cube_primes(n)?;
            Ok(f(Mode::Free(&primes)))
        }
        Some(e) => {
            let r = DyadicRanges::new(n, e)?;
            Ok(f(Mode::Ranged(&r)))
        }
    }
}

/// First representation of `N` with `k` powers of two, searching exponent
/// lists in lexicographic order, then cube quadruples, then testing `p1`.
/// With `eta` the cubes are restricted to the dyadic ranges.
pub fn find_witness(n: u64, k: u32, eta: Option<&Decimal>) -> Result<Option<RepresentationWitness>> {
    check_caps(n, k)?;
    with_mode(n, eta, |mode| {
        for powers in PowerLists::new(k, n.saturating_sub(34)) {
            let rest = n - PowerLists::total(&powers);
            if let Some((p1, cubes)) = mode.solve(rest) {
                return Some(RepresentationWitness {
                    n,
                    p1,
                    cubes,
                    powers,
                    constrained: mode.constrained(),
                });
            }
        }
        None
    })
}

/// Representations of `N1` and `N2` using the same exponent list.
pub fn find_pair_witness(n1: u64, n2: u64, k: u32) -> Result<Option<PairWitness>> {
    check_caps(n1, k)?;
    check_caps(n2, k)?;
    let p1 = cube_primes(n1)?;
    let p2 = cube_primes(n2)?;
    let budget = n1.min(n2).saturating_sub(34);
    for powers in PowerLists::new(k, budget) {
        let t = PowerLists::total(&powers);
        let Some((a1, c1)) = free_cubes(n1 - t, &p1) else {
            continue;
        };
        let Some((a2, c2)) = free_cubes(n2 - t, &p2) else {
            continue;
        };
        let mk = |n, p1, cubes| RepresentationWitness {
            n,
            p1,
            cubes,
            powers: powers.clone(),
            constrained: false,
        };
        return Ok(Some(PairWitness {
            w1: mk(n1, a1, c1),
            w2: mk(n2, a2, c2),
        }));
    }
    Ok(None)
}

/// Primality by trial division; kept apart from the search's Miller–Rabin.
fn prime_by_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rechecks the identity in big integers, every prime by trial division and
/// every exponent against the minimum.
pub fn verify_witness(w: &RepresentationWitness) -> bool {
    if w.powers.is_empty() || w.powers.iter().any(|&v| v < MIN_EXPONENT) {
        return false;
    }
    if !prime_by_division(w.p1) || !w.cubes.iter().all(|&p| prime_by_division(p)) {
        return false;
    }
    let mut total = BigInt::from(w.p1);
    for &p in &w.cubes {
        total += num_traits::pow(BigInt::from(p), 3);
    }
    for &v in &w.powers {
        total += BigInt::one() << v as usize;
    }
    total == BigInt::from(w.n)
}

/// [`verify_witness`] plus the dyadic-range membership for `eta`.
pub fn verify_constrained(w: &RepresentationWitness, eta: &Decimal) -> Result<bool> {
    Ok(verify_witness(w) && DyadicRanges::new(w.n, eta)?.contains(&w.cubes))
}

/// Both witnesses valid and sharing the exponent list.
pub fn verify_pair(p: &PairWitness) -> bool {
    verify_witness(&p.w1) && verify_witness(&p.w2) && p.w1.powers == p.w2.powers
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub n: u64,
    pub witness: Option<RepresentationWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageSummary {
    pub k: u32,
    pub entries: Vec<ScanEntry>,
    pub found: u64,
    pub not_found: u64,
    pub verify_failures: u64,
    pub smallest_unrepresented: Option<u64>,
}

/// Searches every odd `N` in `[lo, hi]`.
pub fn coverage_scan(lo: u64, hi: u64, k: u32) -> Result<CoverageSummary> {
    if hi < lo {
        return Err(invalid("scan range is empty"));
    }
    if hi - lo > MAX_SCAN_WIDTH {
        return Err(Error::ResourceLimit(format!(
            "scan width is capped at {MAX_SCAN_WIDTH}"
        )));
    }
    check_caps(lo.max(5), k)?;
    check_caps(hi, k)?;
    let primes = cube_primes(hi)?;
    let mut summary = CoverageSummary {
        k,
        entries: Vec::new(),
        found: 0,
        not_found: 0,
        verify_failures: 0,
        smallest_unrepresented: None,
    };
    let start = if lo.is_multiple_of(2) { lo + 1 } else { lo };
    for n in (start..=hi).step_by(2) {
        let mut witness = None;
        if n >= 5 {
            for powers in PowerLists::new(k, n.saturating_sub(34)) {
                let rest = n - PowerLists::total(&powers);
                if let Some((p1, cubes)) = free_cubes(rest, &primes) {
                    witness = Some(RepresentationWitness {
                        n,
                        p1,
                        cubes,
                        powers,
                        constrained: false,
                    });
                    break;
                }
            }
        }
        match &witness {
            Some(w) => {
                summary.found += 1;
                if !verify_witness(w) {
                    summary.verify_failures += 1;
                }
            }
            None => {
                summary.not_found += 1;
                summary.smallest_unrepresented.get_or_insert(n);
            }
        }
        summary.entries.push(ScanEntry { n, witness });
    }
    Ok(summary)
}
