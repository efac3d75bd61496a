//! Verification report records and their JSON form.

use primecube_core::numerics::{BoundedReal, Decimal, Verdict};
use serde::{Deserialize, Serialize};

/// Significant digits for every decimal endpoint in reports.
pub const DIGITS: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Outcome::Pass,
            Verdict::Fail => Outcome::Fail,
            Verdict::Inconclusive => Outcome::Inconclusive,
        }
    }
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Directed decimal endpoints: `lo` rounded down, `hi` rounded up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalText {
    pub lo: String,
    pub hi: String,
}

impl From<&BoundedReal> for IntervalText {
    fn from(x: &BoundedReal) -> Self {
        IntervalText {
            lo: x.lo_decimal(DIGITS),
            hi: x.hi_decimal(DIGITS),
        }
    }
}

impl IntervalText {
    pub fn exact(v: impl ToString) -> Self {
        let s = v.to_string();
        IntervalText { lo: s.clone(), hi: s }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lo ≥ bound`.
    AtLeast,
    /// `hi ≤ bound`.
    AtMost,
    /// Exact integer equality.
    Equals,
    /// `|x − bound| ≤ tolerance` on the whole interval.
    Within,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    /// The inequality being checked, in words.
    pub claim: String,
    pub computed: IntervalText,
    /// Exact rational value when one is known, as `num/den`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<String>,
    pub bound: String,
    pub relation: Relation,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<String>,
    pub verdict: Outcome,
}

impl CheckRecord {
    pub fn at_least(id: impl Into<String>, claim: impl Into<String>, x: &BoundedReal, bound: &str) -> Self {
        let v = x.check_at_least(&Decimal::parse(bound).expect("bound literal"));
        Self::new(id, claim, x.into(), bound, Relation::AtLeast, v.into())
    }

    pub fn at_most(id: impl Into<String>, claim: impl Into<String>, x: &BoundedReal, bound: &str) -> Self {
        let v = x.check_at_most(&Decimal::parse(bound).expect("bound literal"));
        Self::new(id, claim, x.into(), bound, Relation::AtMost, v.into())
    }

    /// `|x − bound| ≤ tol`, decided on the whole interval.
    pub fn within(
        id: impl Into<String>,
        claim: impl Into<String>,
        x: &BoundedReal,
        bound: &str,
        tol: &str,
    ) -> Self {
        let p = x.precision();
        let b = BoundedReal::parse_decimal(bound, p).expect("bound literal");
        let t = Decimal::parse(tol).expect("tolerance literal");
        let d = (x - &b).abs();
        let v = d.check_at_most(&t);
        let mut r = Self::new(id, claim, x.into(), bound, Relation::Within, v.into());
        r.tolerance = Some(tol.to_string());
        r
    }

    pub fn equals(id: impl Into<String>, claim: impl Into<String>, got: u64, want: u64) -> Self {
        let v = if got == want { Outcome::Pass } else { Outcome::Fail };
        Self::new(id, claim, IntervalText::exact(got), &want.to_string(), Relation::Equals, v)
    }

    pub fn new(
        id: impl Into<String>,
        claim: impl Into<String>,
        computed: IntervalText,
        bound: &str,
        relation: Relation,
        verdict: Outcome,
    ) -> Self {
        CheckRecord {
            check_id: id.into(),
            claim: claim.into(),
            computed,
            exact: None,
            bound: bound.to_string(),
            relation,
            tolerance: None,
            verdict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub precision_bits: u32,
    pub config_hash: String,
    /// Seconds since the Unix epoch; excluded from the determinism contract.
    pub timestamp: u64,
    pub versions: Versions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Versions {
    pub primecube: String,
    pub primecube_core: String,
}

impl Versions {
    pub fn current() -> Self {
        Versions {
            primecube: env!("CARGO_PKG_VERSION").to_string(),
            primecube_core: primecube_core::VERSION.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEntry {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub metadata: RunMetadata,
    pub config: Vec<ConfigEntry>,
    pub checks: Vec<CheckRecord>,
    pub min_k: Option<u32>,
    /// What the run establishes, what it assumes and what it cannot reach.
    pub verification_boundary: Vec<String>,
}

impl VerificationReport {
    pub fn count(&self, o: Outcome) -> usize {
        self.checks.iter().filter(|c| c.verdict == o).count()
    }

    /// 0 when everything passes, 1 on any failure, 2 on any inconclusive check.
    pub fn exit_code(&self) -> i32 {
        if self.count(Outcome::Fail) > 0 {
            1
        } else if self.count(Outcome::Inconclusive) > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

pub const VERIFICATION_BOUNDARY: [&str; 4] = [
    "Checked with interval arithmetic: per-prime local factor minima for p <= 199, the three \
     product blocks and C, the order of 2 modulo q, max |theta|, the averaged singular-series \
     bound, the main-term and minor-arc coefficients, and the minimal k for the configured constants.",
    "Taken as configuration inputs and not checked: lambda and the measure estimate behind it, \
     the fourth-moment constant f_moment and the cube moment constant cube_moment.",
    "Not reproducible at desk scale: representations of sufficiently large pairs with k = 48. \
     The represent and scan commands only exhibit small explicit witnesses of the same identity.",
    "min_k is minimal for this constant set only and is not a claim about the true threshold.",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_decide_on_whole_intervals() {
        let x = BoundedReal::parse_decimal("0.5", 128).unwrap();
        assert_eq!(CheckRecord::at_least("a", "", &x, "0.5").verdict, Outcome::Pass);
        assert_eq!(CheckRecord::at_most("a", "", &x, "0.4").verdict, Outcome::Fail);
        let r = CheckRecord::within("a", "", &x, "0.50004", "5e-5");
        assert_eq!(r.verdict, Outcome::Pass);
        assert_eq!(CheckRecord::equals("d", "", 36, 36).verdict, Outcome::Pass);
    }

    #[test]
    fn outcome_serializes_upper_case() {
        assert_eq!(serde_json::to_string(&Outcome::Inconclusive).unwrap(), "\"INCONCLUSIVE\"");
    }
}
