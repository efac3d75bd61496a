//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! lines are always printed; exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use primecube::config::Config;
use primecube::report::Outcome;
use primecube::verify;
use primecube_core::constants as k;
use primecube_core::numerics::{BoundedReal, Decimal, Verdict, DEFAULT_PRECISION as P};
use primecube_core::powers;
use primecube_core::represent;
use primecube_core::series::{self, LocalDensities};
use primecube_core::threshold::{self, ThresholdInputs};

fn dec(s: &str) -> Decimal {
    Decimal::parse(s).unwrap()
}

/// `|x − lit| ≤ tol` on the whole interval.
fn within(x: &BoundedReal, lit: &str, tol: &str) -> bool {
    let d = (x - &BoundedReal::parse_decimal(lit, x.precision()).unwrap()).abs();
    d.check_at_most(&dec(tol)).is_pass()
}

struct Outcome1 {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome1 {
    Outcome1 { ok, detail: detail.into() }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome1) -> (Outcome1, Duration) {
    let start = Instant::now();
    let mut o = f();
    let t = start.elapsed();
    if let Some(l) = limit {
        if t > l {
            o.ok = false;
            o.detail = format!("{}; took {:.2?}, limit {:.0?}", o.detail, t, l);
        }
    }
    (o, t)
}

fn c1() -> Outcome1 {
    let profile = powers::theta_profile(k::POWER_MODULUS, P).unwrap();
    let tm = profile.theta_max();
    let delta_ok = profile.delta() == 36;
    let narrow = tm.width() <= primecube_core::numerics::Dyadic::pow2(-20);
    let contains = tm.contains_decimal(&dec(k::THETA_MAX_VALUE));
    outcome(
        delta_ok && narrow && contains,
        format!(
            "delta = {}, theta_max in [{}, {}] at t = {}, contains {}: {}",
            profile.delta(),
            tm.lo_decimal(12),
            tm.hi_decimal(12),
            profile.argmax(),
            k::THETA_MAX_VALUE,
            contains
        ),
    )
}

fn c2() -> Outcome1 {
    let table = series::euler_factor_table(k::EULER_TABLE_MAX_P, P).unwrap();
    let mut bad = Vec::new();
    for (p, bound) in k::EULER_FACTOR_BOUNDS {
        let rec = table.iter().find(|r| r.p == p).unwrap();
        let mut ok = rec.check_at_least(&dec(bound)) == Verdict::Pass;
        if p % 3 == 2 {
            let (n, d) = series::closed_form_factor(p, 0).unwrap();
            ok &= rec.factor.contains_ratio(&n, &d);
        }
        if !ok {
            bad.push(p);
        }
    }
    outcome(bad.is_empty(), format!("15 tabulated primes, failing: {bad:?}"))
}

fn c3() -> Outcome1 {
    let small = series::small_prime_product(P).unwrap();
    let (mid, t_mid) = {
        let s = Instant::now();
        let m = series::midrange_product(k::MIDRANGE_START, k::MIDRANGE_END, P).unwrap();
        (m, s.elapsed())
    };
    let tail = series::tail_product(k::MIDRANGE_END, P).unwrap();
    let c = &(&small * &mid) * &tail;
    let num = num_traits::pow(BigInt::from(999_999), 17);
    let den = num_traits::pow(BigInt::from(1_000_000), 17);
    let ok = small.check_at_least(&dec(k::SMALL_PRIME_PRODUCT_BOUND)).is_pass()
        && mid.check_at_least(&dec(k::MIDRANGE_PRODUCT_BOUND)).is_pass()
        && tail.check_at_least(&dec(k::TAIL_PRODUCT_BOUND)).is_pass()
        && tail.contains_ratio(&num, &den)
        && c.check_at_least(&dec(k::SERIES_CONSTANT_BOUND)).is_pass()
        && t_mid < Duration::from_secs(120);
    outcome(
        ok,
        format!(
            "small {}, midrange {} ({:.2?}), tail {}, C {}",
            small.lo_decimal(10),
            mid.lo_decimal(10),
            t_mid,
            tail.lo_decimal(10),
            c.lo_decimal(10)
        ),
    )
}

fn c4() -> Outcome1 {
    let profile = powers::theta_profile(k::POWER_MODULUS, P).unwrap();
    let s = powers::s_lower_from_profile(&profile, 45).unwrap();
    let b = powers::singular_sum_lower(45, P).unwrap();
    let ok = s.check_at_least(&dec(k::S_CONSTANT_BOUND)).is_pass() && b.verdict().is_pass();
    outcome(ok, format!("s >= {}, singular sum >= {}", s.lo_decimal(12), b.value.lo_decimal(12)))
}

fn c5() -> Outcome1 {
    let inp = ThresholdInputs::defaults(P);
    let rep = threshold::solve_min_k(&inp).unwrap();
    let mid = threshold::r3_intermediate(&inp);
    let r1 = threshold::r1_coefficient(&inp);
    let ok = rep.min_k == 48
        && within(&mid, k::R3_INTERMEDIATE, k::RECONSTRUCTION_TOLERANCE)
        && within(&r1, k::R1_COEFFICIENT, k::RECONSTRUCTION_TOLERANCE);
    outcome(
        ok,
        format!(
            "min_k = {}, sqrt(F) G = {}, r1 = {}",
            rep.min_k,
            mid.lo_decimal(14),
            r1.lo_decimal(12)
        ),
    )
}

fn c6() -> Outcome1 {
    let (mut cases, mut failures) = (0, 0);
    for q in [3u64, 7, 9, 21] {
        let profile = powers::theta_profile(q, P).unwrap();
        for kk in 1..=3u32 {
            let counts = powers::power_sum_counts(q, kk).unwrap();
            for r in 0..q as i64 {
                let f = powers::power_sum_count_formula_with(&profile, kk, r).unwrap();
                cases += 1;
                if !f.contains_bigint(&BigInt::from(counts[r as usize].clone())) {
                    failures += 1;
                }
            }
        }
    }
    outcome(failures == 0, format!("{cases} cases, {failures} failures"))
}

fn c7() -> Outcome1 {
    let primes = primecube_core::arith::sieve_primes(199).unwrap();
    let mut bad = Vec::new();
    for &p in primes.primes() {
        let d = LocalDensities::new(p, P).unwrap();
        let one = BoundedReal::one(P);
        if p >= 5 && p % 3 == 2 {
            for r in [0i64, 1] {
                let generic = &one + &d.real(r).unwrap();
                let (n, den) = series::closed_form_factor(p, r).unwrap();
                let exact = BoundedReal::from_ratio(&n, &den, P).unwrap();
                if !generic.intersects(&exact) {
                    bad.push(format!("closed form p={p} r={r}"));
                }
            }
        }
        let sum = (1..=p as i64).fold(BoundedReal::zero(P), |acc, j| &acc + &d.real(j).unwrap());
        if !sum.contains_int(0) {
            bad.push(format!("residue sum p={p}"));
        }
    }
    outcome(bad.is_empty(), format!("{} primes, failing: {bad:?}", primes.len()))
}

fn c8() -> Outcome1 {
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, eta) in [(1_000_000u64, "0.01"), (10_000_000, "0.01"), (100_000_000, "0.05")] {
        let r = threshold::j_volume_check(n, &dec(eta), P).unwrap();
        ok &= r.pass;
        parts.push(format!("N={n}: {} >= {}", r.computed.lo_decimal(8), r.bound.hi_decimal(8)));
    }
    outcome(ok, parts.join("; "))
}

fn c9() -> Outcome1 {
    let w = represent::find_witness(51, 1, None).unwrap();
    let pair = represent::find_pair_witness(51, 53, 1).unwrap();
    let scan = represent::coverage_scan(51, 1001, 1).unwrap();
    let ok = w.as_ref().is_some_and(represent::verify_witness)
        && pair.as_ref().is_some_and(represent::verify_pair)
        && scan.verify_failures == 0;
    outcome(
        ok,
        format!(
            "witness {:?}, scan found {} / not found {}, verifier failures {}",
            w.map(|w| (w.p1, w.cubes, w.powers)),
            scan.found,
            scan.not_found,
            scan.verify_failures
        ),
    )
}

fn c10() -> Outcome1 {
    let report = verify::run_verify_all(&Config::default()).unwrap();
    let boundary = report.verification_boundary.join(" ");
    let ok = report.exit_code() == 0
        && report.min_k == Some(48)
        && report.checks.iter().all(|c| c.verdict == Outcome::Pass)
        && boundary.contains("Not reproducible at desk scale")
        && boundary.contains("configuration inputs");
    outcome(
        ok,
        format!(
            "verify-all: {} checks, exit {}, boundary statements {}",
            report.checks.len(),
            report.exit_code(),
            report.verification_boundary.len()
        ),
    )
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [(u32, Option<Duration>, fn() -> Outcome1); 10] = [
        (1, secs(5), c1),
        (2, secs(60), c2),
        (3, None, c3),
        (4, None, c4),
        (5, secs(1), c5),
        (6, None, c6),
        (7, None, c7),
        (8, None, c8),
        (9, secs(30), c9),
        (10, None, c10),
    ];
    let mut failed = 0;
    for (n, limit, f) in criteria {
        let (o, t) = timed(limit, f);
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {n:>2}: {tag} ({t:.2?}) {}", o.detail);
        failed += (!o.ok) as u32;
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
