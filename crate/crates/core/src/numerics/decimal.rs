//! Exact decimal literals: parsing into rationals and directed formatting of
//! dyadic values.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed};

use super::dyadic::{Dyadic, Round};

/// A decimal literal held as the exact rational `num / den`, `den = 10^k > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    text: String,
    num: BigInt,
    den: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimalParseError(pub String);

impl fmt::Display for DecimalParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid decimal literal `{}`", self.0)
    }
}

impl core::error::Error for DecimalParseError {}

impl Decimal {
    pub fn parse(s: &str) -> Result<Self, DecimalParseError> {
        let err = || DecimalParseError(s.to_string());
        let t = s.trim();
        let (mantissa, exp) = match t.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = t[i + 1..].parse().map_err(|_| err())?;
                (&t[..i], e)
            }
            None => (t, 0),
        };
        let (neg, body) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (int_part, frac_part) = match body.find('.') {
            Some(i) => (&body[..i], &body[i + 1..]),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let mut digits = String::with_capacity(int_part.len() + frac_part.len());
        digits.push_str(int_part);
        digits.push_str(frac_part);
        let mut num: BigInt = digits.parse().map_err(|_| err())?;
        if neg {
            num = -num;
        }
        let scale = frac_part.len() as i64 - exp;
        let ten = BigInt::from(10u32);
        let den = if scale >= 0 {
            num_traits::pow(ten, scale as usize)
        } else {
            num *= num_traits::pow(ten, (-scale) as usize);
            BigInt::one()
        };
        Ok(Decimal {
            text: t.to_string(),
            num,
            den,
        })
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    /// Exact comparison `value ⋚ self`.
    pub fn cmp_dyadic(&self, value: &Dyadic) -> Ordering {
        value.cmp_ratio(&self.num, &self.den).reverse()
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl core::str::FromStr for Decimal {
    type Err = DecimalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Decimal::parse(s)
    }
}

/// Formats `value` with `digits` significant decimal digits, rounded in
/// direction `dir` so the printed number is a valid one-sided bound.
///
/// Plain positional notation is used for decimal exponents in `[-12, 30]`,
/// scientific notation otherwise. Output is a pure function of the exact
/// value, so equal inputs serialize identically.
pub fn format_directed(value: &Dyadic, digits: u32, dir: Round) -> String {
    assert!(digits >= 1);
    if value.is_zero() {
        return "0".to_string();
    }
    // decimal exponent estimate from the binary top: |v| in [2^(t-1), 2^t)
    let t = value.top();
    // floor((t-1)·log10 2) with a rational approximation of log10 2
    let est = ((t - 1) as i128 * 30103).div_euclid(100000) as i64;
    let mut scale = digits as i64 - 1 - est;
    let lower = num_traits::pow(BigInt::from(10u32), digits as usize - 1);
    let upper = &lower * 10u32;
    let mut n;
    loop {
        n = value.to_scaled_decimal(scale, dir);
        let a = n.abs();
        if a >= upper {
            scale -= 1;
        } else if a < lower {
            scale += 1;
        } else {
            break;
        }
    }
    render(&n, scale)
}

fn render(n: &BigInt, scale: i64) -> String {
    let neg = n.sign() == Sign::Minus;
    let digits = n.abs().to_string();
    let len = digits.len() as i64;
    // value = n · 10^-scale; leading digit exponent
    let exp10 = len - 1 - scale;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if (-12..=30).contains(&exp10) {
        if scale <= 0 {
            out.push_str(&digits);
            for _ in 0..(-scale) {
                out.push('0');
            }
        } else if scale >= len {
            out.push_str("0.");
            for _ in 0..(scale - len) {
                out.push('0');
            }
            out.push_str(&digits);
        } else {
            let split = (len - scale) as usize;
            out.push_str(&digits[..split]);
            out.push('.');
            out.push_str(&digits[split..]);
        }
    } else {
        out.push_str(&digits[..1]);
        if len > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push('e');
        out.push_str(&exp10.to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        let d = Decimal::parse("0.87045114").unwrap();
        assert_eq!(d.numer(), &BigInt::from(87045114));
        assert_eq!(d.denom(), &BigInt::from(100000000));
        let e = Decimal::parse("1e-9").unwrap();
        assert_eq!(e.numer(), &BigInt::from(1));
        assert_eq!(e.denom(), &BigInt::from(1_000_000_000));
        let f = Decimal::parse("-2.5E+3").unwrap();
        assert_eq!(f.numer(), &BigInt::from(-2500));
        assert_eq!(f.denom(), &BigInt::from(1));
        assert!(Decimal::parse("abc").is_err());
        assert!(Decimal::parse(".").is_err());
        assert!(Decimal::parse("1.2.3").is_err());
    }

    #[test]
    fn formats_with_direction() {
        let third = Dyadic::one().div(&Dyadic::from_i64(3), 200, Round::Down);
        assert_eq!(format_directed(&third, 5, Round::Down), "0.33333");
        let third_up = Dyadic::one().div(&Dyadic::from_i64(3), 200, Round::Up);
        assert_eq!(format_directed(&third_up, 5, Round::Up), "0.33334");
        assert_eq!(format_directed(&Dyadic::from_i64(36), 30, Round::Down), "36.0000000000000000000000000000");
        assert_eq!(format_directed(&Dyadic::from_i64(-1), 3, Round::Up), "-1.00");
        let tiny = Dyadic::pow2(-200);
        assert!(format_directed(&tiny, 4, Round::Down).contains('e'));
    }

    #[test]
    fn formatted_bound_is_on_the_right_side() {
        let x = Dyadic::from_i64(2).sqrt(128, Round::Down);
        let s = format_directed(&x, 30, Round::Down);
        let d = Decimal::parse(&s).unwrap();
        assert_ne!(d.cmp_dyadic(&x), Ordering::Greater);
        let s_up = format_directed(&x, 30, Round::Up);
        let d_up = Decimal::parse(&s_up).unwrap();
        assert_ne!(d_up.cmp_dyadic(&x), Ordering::Less);
    }
}
