//! Flat `key = value` run configuration.

use std::fmt::Write as _;
use std::path::Path;

use primecube_core::constants;
use primecube_core::numerics::{BoundedReal, Decimal, MIN_PRECISION};
use primecube_core::threshold::ThresholdInputs;
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub precision_bits: u32,
    pub lambda: Decimal,
    pub eta: Decimal,
    pub f_moment: Decimal,
    pub cube_moment: Decimal,
    pub q: u64,
    /// `verify-all` passes only if the solved threshold is at most this.
    pub k_min_check: u32,
}

pub const KEYS: [&str; 7] = [
    "precision_bits",
    "lambda",
    "eta",
    "f_moment",
    "cube_moment",
    "q",
    "k_min_check",
];

fn dec(s: &str) -> Decimal {
    Decimal::parse(s).expect("valid literal")
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision_bits: primecube_core::numerics::DEFAULT_PRECISION,
            lambda: dec(constants::DEFAULT_LAMBDA),
            eta: dec(constants::DEFAULT_ETA),
            f_moment: dec(constants::DEFAULT_F_MOMENT),
            cube_moment: dec(constants::DEFAULT_CUBE_MOMENT),
            q: constants::POWER_MODULUS,
            k_min_check: constants::EXPECTED_MIN_K,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg = Config::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), CliError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::config(i + 1, "expected key = value"))?;
            self.set(key.trim(), value.trim())
                .map_err(|msg| CliError::config(i + 1, &msg))?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let decimal = |v: &str| Decimal::parse(v).map_err(|e| format!("{key}: {e}"));
        let integer = |v: &str| v.parse::<u64>().map_err(|e| format!("{key}: {e}"));
        match key {
            "precision_bits" => self.precision_bits = integer(value)? as u32,
            "lambda" => self.lambda = decimal(value)?,
            "eta" => self.eta = decimal(value)?,
            "f_moment" => self.f_moment = decimal(value)?,
            "cube_moment" => self.cube_moment = decimal(value)?,
            "q" => self.q = integer(value)?,
            "k_min_check" => self.k_min_check = integer(value)? as u32,
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.precision_bits < MIN_PRECISION.max(64) {
            return Err(CliError::Invalid(format!(
                "precision_bits must be at least 64, got {}",
                self.precision_bits
            )));
        }
        let positive = |d: &Decimal| BoundedReal::from_decimal(d, 64).is_positive();
        for (name, d) in [("lambda", &self.lambda), ("f_moment", &self.f_moment), ("cube_moment", &self.cube_moment)] {
            if !positive(d) {
                return Err(CliError::Invalid(format!("{name} must be positive")));
            }
        }
        if self.q < 3 || self.q.is_multiple_of(2) {
            return Err(CliError::Invalid(format!("q must be odd and at least 3, got {}", self.q)));
        }
        Ok(())
    }

    /// Canonical text form; the config hash is taken over these bytes.
    pub fn canonical(&self) -> String {
        let mut s = String::new();
        for (k, v) in self.entries() {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }

    pub fn entries(&self) -> [(&'static str, String); 7] {
        [
            (KEYS[0], self.precision_bits.to_string()),
            (KEYS[1], self.lambda.to_string()),
            (KEYS[2], self.eta.to_string()),
            (KEYS[3], self.f_moment.to_string()),
            (KEYS[4], self.cube_moment.to_string()),
            (KEYS[5], self.q.to_string()),
            (KEYS[6], self.k_min_check.to_string()),
        ]
    }

    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes())
            .iter()
            .fold(String::with_capacity(64), |mut s, b| {
                let _ = write!(s, "{b:02x}");
                s
            })
    }

    /// Threshold inputs from this config, with a given singular-series constant.
    pub fn threshold_inputs(&self, singular_sum: Option<BoundedReal>) -> ThresholdInputs {
        let p = self.precision_bits;
        let mut inp = ThresholdInputs::defaults(p);
        inp.lambda = BoundedReal::from_decimal(&self.lambda, p);
        inp.eta = BoundedReal::from_decimal(&self.eta, p);
        inp.f_moment_const = BoundedReal::from_decimal(&self.f_moment, p);
        inp.cube_moment_const = BoundedReal::from_decimal(&self.cube_moment, p);
        if let Some(s) = singular_sum {
            inp.singular_sum_const = s;
        }
        inp
    }
}
