//! Exact integer number theory: sieving, φ, μ, modular powers, multiplicative
//! orders and deterministic primality.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};

/// All primes up to `limit`, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes in the half-open range `[lo, hi)`.
    pub fn range(&self, lo: u64, hi: u64) -> &[u64] {
        let a = self.primes.partition_point(|&p| p < lo);
        let b = self.primes.partition_point(|&p| p < hi);
        &self.primes[a..b.max(a)]
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }
}

/// Odd numbers per segment (one bit each).
const SEGMENT_ODDS: u64 = 1 << 18;

/// Segmented odd-only bit sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(invalid("sieve_primes: limit must be at least 2"));
    }
    let mut primes = vec![2u64];
    if limit >= 3 {
        let root = isqrt(limit);
        let base = simple_odd_sieve(root);
        // odd n is represented by index (n - 1) / 2; segment covers odd indices
        let last_index = (limit - 1) / 2;
        let mut seg_start = 1u64; // index of 3
        let mut bits = vec![0u64; SEGMENT_ODDS.div_ceil(64) as usize];
        while seg_start <= last_index {
            let seg_end = (seg_start + SEGMENT_ODDS - 1).min(last_index);
            let len = seg_end - seg_start + 1;
            bits.iter_mut().for_each(|w| *w = 0);
            let lo_value = 2 * seg_start + 1;
            let hi_value = 2 * seg_end + 1;
            for &p in &base {
                let sq = p * p;
                if sq > hi_value {
                    break;
                }
                // first odd multiple of p that is >= max(p², lo_value)
                let mut m = if sq >= lo_value {
                    sq
                } else {
                    let r = lo_value.div_ceil(p) * p;
                    if r % 2 == 0 {
                        r + p
                    } else {
                        r
                    }
                };
                while m <= hi_value {
                    let idx = (m - 1) / 2 - seg_start;
                    bits[(idx / 64) as usize] |= 1 << (idx % 64);
                    m += 2 * p;
                }
            }
            for idx in 0..len {
                if bits[(idx / 64) as usize] & (1 << (idx % 64)) == 0 {
                    primes.push(2 * (seg_start + idx) + 1);
                }
            }
            seg_start = seg_end + 1;
        }
    }
    Ok(PrimeTable { limit, primes })
}

/// Odd primes up to `n` by a plain sieve; used for the segmented sieve's base.
fn simple_odd_sieve(n: u64) -> Vec<u64> {
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; (n + 1) as usize];
    let mut out = Vec::new();
    let mut i = 3u64;
    while i <= n {
        if !composite[i as usize] {
            out.push(i);
            let mut j = i * i;
            while j <= n {
                composite[j as usize] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    out
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // Newton iteration from above
    let mut x = n;
    let mut y = x / 2 + (x & 1);
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing order. Intended for inputs up to about `10^12`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        p += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(invalid("euler_phi: n must be positive"));
    }
    Ok(factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(invalid("mobius: n must be positive"));
    }
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        Ok(0)
    } else if f.len().is_multiple_of(2) {
        Ok(1)
    } else {
        Ok(-1)
    }
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

/// Smallest `d ≥ 1` with `base^d ≡ 1 (mod modulus)`, found by stripping prime
/// factors from `φ(modulus)`.
pub fn multiplicative_order(base: i64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(invalid("multiplicative_order: modulus must be at least 2"));
    }
    let b = base.rem_euclid(modulus as i64) as u64;
    if gcd(b, modulus) != 1 {
        return Err(Error::NotInvertible { base, modulus });
    }
    let phi = euler_phi(modulus)?;
    let mut order = phi;
    for (p, _) in factorize(phi) {
        while order % p == 0 && pow_mod(b, order / p, modulus) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Deterministic Miller–Rabin for all `u64` (first twelve prime bases).
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn small_sieves() {
        assert_eq!(sieve_primes(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap().primes(), &[2]);
        assert_eq!(sieve_primes(3).unwrap().primes(), &[2, 3]);
        assert!(sieve_primes(1).is_err());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let t = sieve_primes(10_000).unwrap();
        let expected: Vec<u64> = (0..=10_000).filter(|&n| trial_division(n)).collect();
        assert_eq!(t.primes(), expected.as_slice());
    }

    #[test]
    fn prime_count_to_a_million() {
        let t = sieve_primes(1_000_000).unwrap();
        assert_eq!(t.len(), 78_498);
        assert_eq!(t.primes()[0], 2);
        assert!(t.primes().windows(2).all(|w| w[0] < w[1]));
        // segment boundaries land on odd indices; spot-check around them
        for &p in t.primes().iter().step_by(997) {
            assert!(trial_division(p));
        }
    }

    #[test]
    fn sieve_range_lookup() {
        let t = sieve_primes(300).unwrap();
        assert_eq!(t.range(200, 300).len(), 16);
        assert!(t.range(200, 201).is_empty());
        assert_eq!(t.range(2, 12), &[2, 3, 5, 7, 11]);
    }

    #[test]
    fn phi_and_mu_values() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(7).unwrap(), 6);
        assert_eq!(euler_phi(5187).unwrap(), 2592);
        assert!(euler_phi(0).is_err());
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn mobius_sums_over_divisors() {
        for n in 1..=10_000u64 {
            let mut s = 0i64;
            let mut d = 1;
            while d * d <= n {
                if n % d == 0 {
                    s += mobius(d).unwrap() as i64;
                    if d * d != n {
                        s += mobius(n / d).unwrap() as i64;
                    }
                }
                d += 1;
            }
            assert_eq!(s, (n == 1) as i64, "n = {n}");
        }
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(2, 9).unwrap(), 6);
        assert_eq!(multiplicative_order(2, 5187).unwrap(), 36);
        assert_eq!(
            multiplicative_order(2, 10),
            Err(Error::NotInvertible { base: 2, modulus: 10 })
        );
        assert!(multiplicative_order(3, 1).is_err());
    }

    #[test]
    fn order_agrees_with_direct_powering() {
        for m in 2..400u64 {
            for b in 1..m.min(40) {
                if gcd(b, m) != 1 {
                    continue;
                }
                let mut x = b % m;
                let mut d = 1;
                while x != 1 % m {
                    x = x * b % m;
                    d += 1;
                }
                assert_eq!(multiplicative_order(b as i64, m).unwrap(), d);
            }
        }
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), trial_division(n), "n = {n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime(18_446_744_073_709_551_557));
    }
}
