//! One function per subcommand; each returns serializable output.

use std::io::Write;

use primecube_core::constants as k;
use primecube_core::numerics::{Decimal, DEFAULT_PRECISION};
use primecube_core::powers::{self, XiParameters};
use primecube_core::represent::{self, CoverageSummary, RepresentationWitness};
use primecube_core::series;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::CliError;
use crate::report::{CheckRecord, IntervalText};
use crate::verify::{self, Blocks};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerRow {
    pub p: u64,
    pub minimizing_residue: u64,
    pub lower_bound: String,
    pub upper_bound: String,
    pub closed_form_tag: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub check: Option<CheckRecord>,
}

pub fn euler_factors(max_p: u64, prec: u32) -> Result<Vec<EulerRow>, CliError> {
    let table = series::euler_factor_table(max_p, prec)?;
    Ok(table
        .iter()
        .map(|rec| {
            let iv = IntervalText::from(&rec.factor);
            EulerRow {
                p: rec.p,
                minimizing_residue: rec.residue,
                lower_bound: iv.lo,
                upper_bound: iv.hi,
                closed_form_tag: rec.closed_form.tag().to_string(),
                exact: rec.exact.as_ref().map(|(n, d)| format!("{n}/{d}")),
                check: k::euler_factor_bound(rec.p).map(|b| verify::euler_check(rec, b)),
            }
        })
        .collect())
}

/// `p, minimizing_residue, lower_bound, closed_form_tag`.
pub fn write_euler_csv<W: Write>(rows: &[EulerRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["p", "minimizing_residue", "lower_bound", "closed_form_tag"])?;
    for r in rows {
        w.write_record([
            r.p.to_string(),
            r.minimizing_residue.to_string(),
            r.lower_bound.clone(),
            r.closed_form_tag.clone(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn products(prec: u32) -> Result<Vec<CheckRecord>, CliError> {
    let blocks = Blocks {
        small: series::small_prime_product(prec)?,
        midrange: series::midrange_product(k::MIDRANGE_START, k::MIDRANGE_END, prec)?,
        tail: series::tail_product(k::MIDRANGE_END, prec)?,
    };
    Ok(blocks.checks())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaOut {
    pub q: u64,
    pub delta: u64,
    pub theta_max: IntervalText,
    pub argmax: u64,
    pub checks: Vec<CheckRecord>,
}

pub fn theta(q: u64, prec: u32) -> Result<(ThetaOut, powers::PowerTwoProfile), CliError> {
    let profile = powers::theta_profile(q, prec)?;
    let out = ThetaOut {
        q,
        delta: profile.delta(),
        theta_max: profile.theta_max().into(),
        argmax: profile.argmax(),
        checks: if q == k::POWER_MODULUS {
            verify::theta_checks(&profile)
        } else {
            Vec::new()
        },
    };
    Ok((out, profile))
}

/// `t, abs_lo, abs_hi` for `t = 1..q`.
pub fn write_theta_csv<W: Write>(profile: &powers::PowerTwoProfile, out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "abs_lo", "abs_hi"])?;
    for (i, a) in profile.theta_abs().iter().enumerate() {
        let iv = IntervalText::from(a);
        w.write_record([(i + 1).to_string(), iv.lo, iv.hi])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SConstantOut {
    pub q: u64,
    pub k: u32,
    pub delta: u64,
    pub theta_max: IntervalText,
    pub s: IntervalText,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub check: Option<CheckRecord>,
}

pub fn s_constant(q: u64, kk: u32, prec: u32) -> Result<SConstantOut, CliError> {
    let profile = powers::theta_profile(q, prec)?;
    let s = powers::s_lower_from_profile(&profile, kk)?;
    Ok(SConstantOut {
        q,
        k: kk,
        delta: profile.delta(),
        theta_max: profile.theta_max().into(),
        s: (&s).into(),
        check: (q == k::POWER_MODULUS)
            .then(|| verify::s_check(&profile, kk))
            .transpose()?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Margins {
    pub at_min_k: IntervalText,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub below_min_k: Option<IntervalText>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOut {
    pub min_k: u32,
    pub r1: IntervalText,
    pub r3_base: IntervalText,
    pub crossing: IntervalText,
    pub margins: Margins,
    pub checks: Vec<CheckRecord>,
}

pub fn solve_k(cfg: &Config, singular_sum: Option<&Decimal>) -> Result<SolveOut, CliError> {
    cfg.validate()?;
    let s = singular_sum.map(|d| primecube_core::numerics::BoundedReal::from_decimal(d, cfg.precision_bits));
    let inputs = cfg.threshold_inputs(s);
    let rep = primecube_core::threshold::solve_min_k(&inputs)?;
    let mut checks = verify::coefficient_checks(&inputs);
    checks.push(verify::threshold_check(cfg, &inputs).0);
    Ok(SolveOut {
        min_k: rep.min_k,
        r1: (&rep.r1_coefficient).into(),
        r3_base: (&rep.r3_coefficient_base).into(),
        crossing: (&rep.crossing).into(),
        margins: Margins {
            at_min_k: (&rep.margin_at_min_k).into(),
            below_min_k: rep.margin_below_min_k.as_ref().map(IntervalText::from),
        },
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiEntry {
    pub n: u64,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiOut {
    #[serde(rename = "N")]
    pub big_n: u64,
    pub k: u32,
    #[serde(rename = "L")]
    pub l: u32,
    pub entries: Vec<XiEntry>,
}

pub fn xi(n: u64, kk: u32, l: Option<u32>) -> Result<XiOut, CliError> {
    let params = match l {
        Some(l) => XiParameters::with_l(n, kk, l),
        None => XiParameters::new(n, kk, DEFAULT_PRECISION)?,
    };
    let entries = powers::enumerate_xi(&params)?
        .into_iter()
        .map(|(n, multiplicity)| XiEntry { n, multiplicity })
        .collect();
    Ok(XiOut {
        big_n: n,
        k: kk,
        l: params.l,
        entries,
    })
}

/// One JSON-lines record; field order is fixed for diffing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessLine {
    #[serde(rename = "N")]
    pub n: u64,
    pub p1: Option<u64>,
    pub cubes: Option<[u64; 4]>,
    pub powers: Option<Vec<u32>>,
    pub constrained: bool,
    pub found: bool,
}

impl WitnessLine {
    pub fn found(w: &RepresentationWitness) -> Self {
        WitnessLine {
            n: w.n,
            p1: Some(w.p1),
            cubes: Some(w.cubes),
            powers: Some(w.powers.clone()),
            constrained: w.constrained,
            found: true,
        }
    }

    pub fn missing(n: u64, constrained: bool) -> Self {
        WitnessLine {
            n,
            p1: None,
            cubes: None,
            powers: None,
            constrained,
            found: false,
        }
    }

    pub fn to_witness(&self) -> Option<RepresentationWitness> {
        Some(RepresentationWitness {
            n: self.n,
            p1: self.p1?,
            cubes: self.cubes?,
            powers: self.powers.clone()?,
            constrained: self.constrained,
        })
    }
}

pub fn represent(n: u64, kk: u32, pair: Option<u64>, eta: Option<&Decimal>) -> Result<Vec<WitnessLine>, CliError> {
    match pair {
        Some(n2) => {
            if eta.is_some() {
                return Err(CliError::Invalid("--constrained applies to single targets only".into()));
            }
            Ok(match represent::find_pair_witness(n, n2, kk)? {
                Some(p) => vec![WitnessLine::found(&p.w1), WitnessLine::found(&p.w2)],
                None => vec![WitnessLine::missing(n, false), WitnessLine::missing(n2, false)],
            })
        }
        None => Ok(vec![match represent::find_witness(n, kk, eta)? {
            Some(w) => WitnessLine::found(&w),
            None => WitnessLine::missing(n, eta.is_some()),
        }]),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub from: u64,
    pub to: u64,
    pub k: u32,
    pub found: u64,
    pub not_found: u64,
    pub verify_failures: u64,
    pub smallest_unrepresented: Option<u64>,
}

pub fn scan(from: u64, to: u64, kk: u32) -> Result<(Vec<WitnessLine>, ScanSummary), CliError> {
    let s: CoverageSummary = represent::coverage_scan(from, to, kk)?;
    let lines = s
        .entries
        .iter()
        .map(|e| match &e.witness {
            Some(w) => WitnessLine::found(w),
            None => WitnessLine::missing(e.n, false),
        })
        .collect();
    Ok((
        lines,
        ScanSummary {
            from,
            to,
            k: kk,
            found: s.found,
            not_found: s.not_found,
            verify_failures: s.verify_failures,
            smallest_unrepresented: s.smallest_unrepresented,
        },
    ))
}

pub fn to_json_lines(lines: &[WitnessLine]) -> Result<String, CliError> {
    let mut s = String::new();
    for l in lines {
        s.push_str(&serde_json::to_string(l)?);
        s.push('\n');
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_line_field_order() {
        let w = represent::find_witness(51, 1, None).unwrap().unwrap();
        let s = serde_json::to_string(&WitnessLine::found(&w)).unwrap();
        assert_eq!(
            s,
            r#"{"N":51,"p1":3,"cubes":[2,2,2,2],"powers":[4],"constrained":false,"found":true}"#
        );
        let back: WitnessLine = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_witness().unwrap(), w);
    }

    #[test]
    fn xi_output() {
        let out = xi(51, 2, Some(5)).unwrap();
        assert_eq!(out.entries, vec![XiEntry { n: 3, multiplicity: 2 }, XiEntry { n: 19, multiplicity: 1 }]);
    }

    #[test]
    fn euler_csv_columns() {
        let rows = euler_factors(7, 128).unwrap();
        let mut buf = Vec::new();
        write_euler_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("p,minimizing_residue,lower_bound,closed_form_tag"));
        assert!(lines.next().unwrap().starts_with("3,0,0.9375"));
        assert_eq!(text.lines().count(), 4);
    }
}
