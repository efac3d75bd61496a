//! The end-to-end verification run.

use std::thread;
use std::time::{SystemTime, UNIX_EPOCH};

use primecube_core::constants as k;
use primecube_core::numerics::{BoundedReal, Decimal};
use primecube_core::powers::{self, PowerTwoProfile};
use primecube_core::series::{self, LocalFactorRecord};
use primecube_core::threshold::{self, ThresholdInputs};

use crate::config::Config;
use crate::error::CliError;
use crate::report::{
    CheckRecord, ConfigEntry, IntervalText, Outcome, Relation, RunMetadata, VerificationReport, Versions,
    VERIFICATION_BOUNDARY,
};

/// Exact-decision record for one tabulated prime.
pub fn euler_check(rec: &LocalFactorRecord, bound: &str) -> CheckRecord {
    let verdict = rec.check_at_least(&Decimal::parse(bound).expect("bound literal"));
    let mut r = CheckRecord::new(
        format!("euler.p{}", rec.p),
        format!("1 + A(n, {}) >= {bound} for every n", rec.p),
        (&rec.factor).into(),
        bound,
        Relation::AtLeast,
        verdict.into(),
    );
    r.exact = rec.exact.as_ref().map(|(n, d)| format!("{n}/{d}"));
    r
}

/// Product blocks; the small block reuses an already computed Euler table.
pub struct Blocks {
    pub small: BoundedReal,
    pub midrange: BoundedReal,
    pub tail: BoundedReal,
}

impl Blocks {
    pub fn c(&self) -> BoundedReal {
        &(&self.small * &self.midrange) * &self.tail
    }

    pub fn checks(&self) -> Vec<CheckRecord> {
        let mut tail = CheckRecord::at_least(
            "product.tail",
            "((M-1)/M)^17 >= 0.999983 for M = 10^6",
            &self.tail,
            k::TAIL_PRODUCT_BOUND,
        );
        tail.exact = Some("(999999/1000000)^17".to_string());
        vec![
            CheckRecord::at_least(
                "product.small",
                "product of local minima over p in {5, 11, 17} and 23 <= p < 200",
                &self.small,
                k::SMALL_PRIME_PRODUCT_BOUND,
            ),
            CheckRecord::at_least(
                "product.midrange",
                "product of per-prime bounds over 200 <= p < 10^6",
                &self.midrange,
                k::MIDRANGE_PRODUCT_BOUND,
            ),
            tail,
            CheckRecord::at_least(
                "constant.C",
                "C = small * midrange * tail",
                &self.c(),
                k::SERIES_CONSTANT_BOUND,
            ),
        ]
    }
}

pub fn small_from_table(table: &[LocalFactorRecord], prec: u32) -> BoundedReal {
    let wanted = series::small_product_primes();
    table
        .iter()
        .filter(|r| wanted.contains(&r.p))
        .fold(BoundedReal::one(prec), |acc, r| &acc * &r.factor)
}

pub fn theta_checks(profile: &PowerTwoProfile) -> Vec<CheckRecord> {
    vec![
        CheckRecord::equals(
            format!("delta.{}", profile.modulus()),
            format!("order of 2 modulo {}", profile.modulus()),
            profile.delta(),
            k::POWER_MODULUS_ORDER,
        ),
        CheckRecord::at_most(
            format!("theta_max.{}", profile.modulus()),
            "max over 0 < t < q of |theta(t)|",
            profile.theta_max(),
            k::THETA_MAX_VALUE,
        ),
    ]
}

pub fn s_check(profile: &PowerTwoProfile, kk: u32) -> Result<CheckRecord, CliError> {
    let s = powers::s_lower_from_profile(profile, kk)?;
    Ok(CheckRecord::at_least(
        format!("s_constant.k{kk}"),
        "(1/q)(1 - (q-1)(theta_max/delta)^k)",
        &s,
        k::S_CONSTANT_BOUND,
    ))
}

/// Reconstructions of the rounded coefficients at `η = 0`, then the `η`-dependent ones.
pub fn coefficient_checks(inputs: &ThresholdInputs) -> Vec<CheckRecord> {
    let mut no_eta = inputs.clone();
    no_eta.eta = BoundedReal::zero(inputs.precision());
    let tol = k::RECONSTRUCTION_TOLERANCE;
    let mut out = vec![
        CheckRecord::within(
            "r3.intermediate",
            "sqrt(f_moment) * cube_moment",
            &threshold::r3_intermediate(inputs),
            k::R3_INTERMEDIATE,
            tol,
        ),
        CheckRecord::within(
            "r3.base",
            "8 sqrt(f_moment) cube_moment at eta = 0",
            &threshold::r3_base(&no_eta).expect("eta = 0"),
            k::R3_COEFFICIENT,
            tol,
        ),
        CheckRecord::within(
            "r1.base",
            "singular_sum_const (cbrt 7 - 1)^2 at eta = 0",
            &threshold::r1_coefficient(&no_eta),
            k::R1_COEFFICIENT,
            tol,
        ),
    ];
    // r1 ≥ 3.09441331 (1 − η)^8, decided against the interval of the right side
    let r1 = threshold::r1_coefficient(inputs);
    let one_minus = &BoundedReal::one(inputs.precision()) - &inputs.eta;
    let rhs = &BoundedReal::parse_decimal(k::R1_COEFFICIENT, inputs.precision()).expect("literal")
        * &one_minus.powi(8);
    let verdict = if r1.lo() >= rhs.hi() {
        Outcome::Pass
    } else if r1.hi() < rhs.lo() {
        Outcome::Fail
    } else {
        Outcome::Inconclusive
    };
    out.push(CheckRecord::new(
        "r1.coefficient",
        "r1 >= 3.09441331 (1 - eta)^8",
        (&r1).into(),
        &format!("{} * (1 - eta)^8", k::R1_COEFFICIENT),
        Relation::AtLeast,
        verdict,
    ));
    out
}

pub fn threshold_check(cfg: &Config, inputs: &ThresholdInputs) -> (CheckRecord, Option<u32>) {
    match threshold::solve_min_k(inputs) {
        Ok(rep) => {
            let v = if rep.min_k <= cfg.k_min_check { Outcome::Pass } else { Outcome::Fail };
            let mut r = CheckRecord::new(
                "threshold.min_k",
                "smallest k >= 3 with r1 > r3(k)",
                IntervalText::exact(rep.min_k),
                &format!("<= {}", cfg.k_min_check),
                Relation::AtMost,
                v,
            );
            r.exact = Some(rep.min_k.to_string());
            (r, Some(rep.min_k))
        }
        Err(primecube_core::Error::Inconclusive(msg)) => (
            CheckRecord::new(
                "threshold.min_k",
                format!("smallest k >= 3 with r1 > r3(k): {msg}"),
                IntervalText::exact("?"),
                &format!("<= {}", cfg.k_min_check),
                Relation::AtMost,
                Outcome::Inconclusive,
            ),
            None,
        ),
        Err(e) => (
            CheckRecord::new(
                "threshold.min_k",
                format!("smallest k >= 3 with r1 > r3(k): {e}"),
                IntervalText::exact("?"),
                &format!("<= {}", cfg.k_min_check),
                Relation::AtMost,
                Outcome::Fail,
            ),
            None,
        ),
    }
}

/// Runs every check in a fixed order. Independent heavy pieces (Euler table,
/// midrange sweep, θ profile) run on separate threads.
pub fn run_verify_all(cfg: &Config) -> Result<VerificationReport, CliError> {
    cfg.validate()?;
    let prec = cfg.precision_bits;
    let (table, midrange, profile) = thread::scope(|s| {
        let t = s.spawn(|| series::euler_factor_table(k::EULER_TABLE_MAX_P, prec));
        let m = s.spawn(|| series::midrange_product(k::MIDRANGE_START, k::MIDRANGE_END, prec));
        let p = s.spawn(|| powers::theta_profile(cfg.q, prec));
        (
            t.join().expect("euler thread"),
            m.join().expect("midrange thread"),
            p.join().expect("theta thread"),
        )
    });
    let (table, midrange, profile) = (table?, midrange?, profile?);

    let mut checks = Vec::new();
    for (p, bound) in k::EULER_FACTOR_BOUNDS {
        let rec = table.iter().find(|r| r.p == p).expect("p <= 199");
        checks.push(euler_check(rec, bound));
    }

    let blocks = Blocks {
        small: small_from_table(&table, prec),
        midrange,
        tail: series::tail_product(k::MIDRANGE_END, prec)?,
    };
    checks.extend(blocks.checks());
    checks.extend(theta_checks(&profile));
    checks.push(s_check(&profile, k::SINGULAR_SUM_MIN_K)?);

    let bound = powers::singular_sum_lower_with(&blocks.c(), &profile, k::SINGULAR_SUM_MIN_K)?;
    for sq in &bound.square_sums {
        checks.push(CheckRecord::at_least(
            format!("square_sum.p{}", sq.p),
            format!("sum over j mod {} of (1 + A(j, {}))^2 >= {}", sq.p, sq.p, sq.p),
            &sq.sum_sq,
            &sq.p.to_string(),
        ));
    }
    checks.push(CheckRecord::at_least(
        format!("singular_sum.k{}", k::SINGULAR_SUM_MIN_K),
        "(2C)^2 * s * q",
        &bound.value,
        k::SINGULAR_SUM_BOUND,
    ));

    // the verified literal is a valid lower bound for the computed value
    let inputs = cfg.threshold_inputs(None);
    checks.extend(coefficient_checks(&inputs));
    let (rec, min_k) = threshold_check(cfg, &inputs);
    checks.push(rec);

    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(VerificationReport {
        metadata: RunMetadata {
            precision_bits: prec,
            config_hash: cfg.hash(),
            timestamp,
            versions: Versions::current(),
        },
        config: cfg
            .entries()
            .into_iter()
            .map(|(key, value)| ConfigEntry {
                key: key.to_string(),
                value,
            })
            .collect(),
        checks,
        min_k,
        verification_boundary: VERIFICATION_BOUNDARY.iter().map(|s| s.to_string()).collect(),
    })
}
