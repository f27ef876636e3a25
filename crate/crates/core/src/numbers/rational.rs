//! Exact rationals backed by `num-rational`, plus the string codec used in
//! every JSON and CSV surface (`"p/q"`, with `q` omitted when it is 1).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Three-way sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(x: &Rational) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn of_int(x: &BigInt) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact total order by cross-multiplication.
pub fn rat_cmp(x: &Rational, y: &Rational) -> Ordering {
    // denominators are positive in normalized form
    (x.numer() * y.denom()).cmp(&(y.numer() * x.denom()))
}

pub fn half() -> Rational {
    rat(1, 2)
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

pub fn min(x: &Rational, y: &Rational) -> Rational {
    if x <= y {
        x.clone()
    } else {
        y.clone()
    }
}

pub fn max(x: &Rational, y: &Rational) -> Rational {
    if x >= y {
        x.clone()
    } else {
        y.clone()
    }
}

pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil(x: &Rational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `2^k` as a rational; negative `k` gives `2^-|k|`.
pub fn pow2(k: i64) -> Rational {
    let p = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Parses `"p"`, `"p/q"`, or a finite decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::malformed(t.to_string(), "not a rational literal (expected \"p\" or \"p/q\")");
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::malformed(t.to_string(), "zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip_abs.is_empty() {
            BigInt::zero()
        } else {
            ip_abs.parse().map_err(|_| bad())?
        };
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mag = Rational::new(whole * &scale + frac, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Decimal rendering with `digits` significant digits, round-half-even.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let v = x.abs();
    // find e with 10^(e-1) <= v < 10^e
    let ten = Rational::from_integer(BigInt::from(10));
    let mut e: i64 = 0;
    let mut scaled = v.clone();
    while scaled >= Rational::one() {
        scaled /= &ten;
        e += 1;
    }
    while scaled < Rational::new(BigInt::one(), BigInt::from(10)) {
        scaled *= &ten;
        e -= 1;
    }
    // scaled in [0.1, 1); want `digits` digits
    let shifted = scaled * Rational::from_integer(num_traits::pow(BigInt::from(10), digits));
    let mut m = round_half_even(&shifted);
    if m == num_traits::pow(BigInt::from(10), digits) {
        m /= 10;
        e += 1;
    }
    let s = m.to_string();
    let s = format!("{:0>width$}", s, width = digits);
    // value = 0.s * 10^e
    let body = if e <= 0 {
        format!("0.{}{}", "0".repeat(e.unsigned_abs() as usize), s)
    } else if (e as usize) >= digits {
        format!("{}{}", s, "0".repeat(e as usize - digits))
    } else {
        format!("{}.{}", &s[..e as usize], &s[e as usize..])
    };
    let body = if body.contains('.') {
        body.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        body
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn round_half_even(x: &Rational) -> BigInt {
    let fl = floor(x);
    let frac = x - Rational::from_integer(fl.clone());
    match frac.cmp(&half()) {
        Ordering::Less => fl,
        Ordering::Greater => fl + 1,
        Ordering::Equal => {
            if fl.is_even() {
                fl
            } else {
                fl + 1
            }
        }
    }
}

/// Serde codec for a single rational as its exact string.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde codec for a vector of rationals as exact strings.
pub mod serde_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde codec for an optional rational; `None` becomes `null`.
pub mod serde_opt {
    use super::*;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&format_rational(x)),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cmp_examples() {
        assert_eq!(rat_cmp(&rat(1, 3), &rat(2, 6)), Ordering::Equal);
        assert_eq!(rat_cmp(&rat(-1, 2), &int(0)), Ordering::Less);
        assert_eq!(rat_cmp(&rat(7, 5), &rat(4, 3)), Ordering::Greater);
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = rat(0, -7);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
        assert_eq!(format_rational(&z), "0");
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-1").unwrap(), int(-1));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(format_rational(&rat(3, 2)), "3/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(1, 3), 20), "0.33333333333333333333");
        assert_eq!(to_decimal(&rat(2, 3), 20), "0.66666666666666666667");
        assert_eq!(to_decimal(&int(1000000), 20), "1000000");
        assert_eq!(to_decimal(&rat(-17, 2), 20), "-8.5");
        // exact tie at the 3rd digit: 0.1235 -> 0.124 (4 is even), 0.1245 -> 0.124
        assert_eq!(to_decimal(&rat(1235, 10000), 3), "0.124");
        assert_eq!(to_decimal(&rat(1245, 10000), 3), "0.124");
        assert_eq!(to_decimal(&rat(9999, 1000), 3), "10");
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(floor(&rat(-3, 2)), BigInt::from(-2));
        assert_eq!(ceil(&rat(-3, 2)), BigInt::from(-1));
        assert_eq!(ceil(&int(4)), BigInt::from(4));
    }
}
