use primecube_core::numerics::Decimal;
use primecube_core::represent::{self, RepresentationWitness};
use proptest::prelude::*;

fn trial_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Any representation with one power of two, by exhaustive loops.
fn brute_force_k1(n: u64) -> bool {
    let primes: Vec<u64> = (2..20).filter(|&p| trial_prime(p)).collect();
    for v in 4..10 {
        for &a in &primes {
            for &b in &primes {
                for &c in &primes {
                    for &d in &primes {
                        let s = (1u64 << v) + a.pow(3) + b.pow(3) + c.pow(3) + d.pow(3);
                        if s < n && trial_prime(n - s) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

#[test]
fn scan_has_no_verifier_failures() {
    let s = represent::coverage_scan(51, 1001, 1).unwrap();
    assert_eq!(s.verify_failures, 0);
    assert_eq!(s.found + s.not_found, 476);
    for e in &s.entries {
        if let Some(w) = &e.witness {
            assert!(represent::verify_witness(w));
        }
    }
    let small = represent::coverage_scan(5, 49, 1).unwrap();
    assert_eq!(small.found, 0);
    assert_eq!(small.smallest_unrepresented, Some(5));
    let wide = represent::coverage_scan(10001, 10101, 2).unwrap();
    assert_eq!(wide.verify_failures, 0);
}

#[test]
fn searcher_agrees_with_brute_force_on_both_parities() {
    for n in 50..=500u64 {
        let got = represent::find_witness(n, 1, None).unwrap();
        assert_eq!(got.is_some(), brute_force_k1(n), "N = {n}");
        if let Some(w) = got {
            assert!(represent::verify_witness(&w));
            // an even target needs an odd number of 2s among the five primes
            let twos = std::iter::once(w.p1).chain(w.cubes).filter(|&p| p == 2).count();
            assert_eq!(twos % 2 == 1, n % 2 == 0, "N = {n}");
        }
    }
}

#[test]
fn search_is_deterministic() {
    for n in [1001u64, 99_999, 1_234_567] {
        let a = represent::find_witness(n, 3, None).unwrap();
        let b = represent::find_witness(n, 3, None).unwrap();
        assert_eq!(a, b);
        assert!(represent::verify_witness(&a.unwrap()));
    }
}

#[test]
fn constrained_search_respects_ranges() {
    let eta = Decimal::parse("0.3").unwrap();
    let w = represent::find_witness(10_000_001, 2, Some(&eta)).unwrap().unwrap();
    assert!(w.constrained);
    assert!(represent::verify_constrained(&w, &eta).unwrap());
}

#[test]
fn large_target_within_caps() {
    let w = represent::find_witness(99_999_999, 8, None).unwrap().unwrap();
    assert!(represent::verify_witness(&w));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn adding_a_power_keeps_a_representation(half in 25u64..20_000, k in 1u32..4, v in 4u32..12) {
        let n = 2 * half + 1;
        if let Some(w) = represent::find_witness(n, k, None).unwrap() {
            let m = n + (1u64 << v);
            let mut powers = w.powers.clone();
            powers.push(v);
            powers.sort();
            let lifted = RepresentationWitness { n: m, powers, ..w };
            prop_assert!(represent::verify_witness(&lifted));
            prop_assert!(represent::find_witness(m, k + 1, None).unwrap().is_some());
        }
    }
}
