//! Exact nonnegative rational distances.
//!
//! Centers of distances are defined through exact equality of distances, so
//! every metric value is kept as a reduced fraction. Input is accepted as an
//! integer (`"3"`), a terminating decimal (`"0.25"`) or a fraction (`"1/4"`).
//! JSON floating-point numbers are refused.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedMul, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A nonnegative rational number in lowest terms.
///
/// Ordering is exact (no floating point is involved anywhere).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistanceValue(Ratio<u64>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse distance {input:?}: {reason}")]
pub struct ParseDistanceError {
    input: String,
    reason: &'static str,
}

impl DistanceValue {
    pub const ZERO: DistanceValue = DistanceValue(Ratio::new_raw(0, 1));

    /// Returns `None` when `denominator` is zero.
    pub fn new(numerator: u64, denominator: u64) -> Option<Self> {
        if denominator == 0 {
            return None;
        }
        Some(DistanceValue(Ratio::new(numerator, denominator)))
    }

    pub fn from_integer(value: u64) -> Self {
        DistanceValue(Ratio::from_integer(value))
    }

    /// `1 / 2^exponent`.
    pub fn inverse_power_of_two(exponent: u32) -> Option<Self> {
        1u64.checked_shl(exponent)
            .filter(|_| exponent < 64)
            .map(|den| DistanceValue(Ratio::new_raw(1, den)))
    }

    pub fn numerator(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Multiplies by a positive integer, failing on overflow.
    pub fn checked_scale(&self, factor: u64) -> Option<Self> {
        self.0
            .checked_mul(&Ratio::from_integer(factor))
            .map(DistanceValue)
    }

    /// Lossy conversion, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        self.numerator() as f64 / self.denominator() as f64
    }
}

impl Default for DistanceValue {
    fn default() -> Self {
        DistanceValue::ZERO
    }
}

impl From<u64> for DistanceValue {
    fn from(value: u64) -> Self {
        DistanceValue::from_integer(value)
    }
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator() == 1 {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl fmt::Debug for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(digits: &str) -> Option<u64> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

impl FromStr for DistanceValue {
    type Err = ParseDistanceError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let fail = |reason| ParseDistanceError {
            input: input.to_owned(),
            reason,
        };
        let text = input.trim();
        if text.is_empty() {
            return Err(fail("empty value"));
        }
        if text.starts_with('-') {
            return Err(fail("distances are nonnegative"));
        }
        if let Some((num, den)) = text.split_once('/') {
            let num = parse_digits(num.trim()).ok_or_else(|| fail("bad numerator"))?;
            let den = parse_digits(den.trim()).ok_or_else(|| fail("bad denominator"))?;
            return DistanceValue::new(num, den).ok_or_else(|| fail("zero denominator"));
        }
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(fail("no digits"));
        }
        let int_value = if int_part.is_empty() {
            0
        } else {
            parse_digits(int_part).ok_or_else(|| fail("not an exact decimal or p/q fraction"))?
        };
        if frac_part.is_empty() {
            return Ok(DistanceValue::from_integer(int_value));
        }
        let frac_value =
            parse_digits(frac_part).ok_or_else(|| fail("not an exact decimal or p/q fraction"))?;
        let scale = u32::try_from(frac_part.len())
            .ok()
            .and_then(|len| 10u64.checked_pow(len))
            .ok_or_else(|| fail("too many decimal places"))?;
        let numerator = int_value
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_value))
            .ok_or_else(|| fail("value out of range"))?;
        Ok(DistanceValue(Ratio::new(numerator, scale)))
    }
}

impl Serialize for DistanceValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct DistanceVisitor;

impl Visitor<'_> for DistanceVisitor {
    type Value = DistanceValue;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an exact distance as a string (\"3\", \"0.25\", \"1/4\") or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<DistanceValue, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<DistanceValue, E> {
        Ok(DistanceValue::from_integer(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<DistanceValue, E> {
        u64::try_from(v)
            .map(DistanceValue::from_integer)
            .map_err(|_| E::custom("distances are nonnegative"))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<DistanceValue, E> {
        Err(E::custom(format!(
            "binary floating-point distance {v} is not accepted; write it as a quoted decimal or fraction"
        )))
    }
}

impl<'de> Deserialize<'de> for DistanceValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(DistanceVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(s: &str) -> DistanceValue {
        s.parse().unwrap()
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(dv("0.25"), DistanceValue::new(1, 4).unwrap());
        assert_eq!(dv("1.50"), DistanceValue::new(3, 2).unwrap());
        assert_eq!(dv(".5"), DistanceValue::new(1, 2).unwrap());
        assert_eq!(dv("3"), DistanceValue::from_integer(3));
        assert_eq!(dv("3."), DistanceValue::from_integer(3));
        assert_eq!(dv(" 6/8 "), DistanceValue::new(3, 4).unwrap());
        assert_eq!(dv("0.1").to_string(), "1/10");
    }

    #[test]
    fn rejects_garbage() {
        for bad in [
            "", "-1", "1/0", "abc", "1e3", "0x10", "1.2.3", "NaN", "inf", ".", "1/-2", "+1",
        ] {
            assert!(
                bad.parse::<DistanceValue>().is_err(),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn ordering_is_exact() {
        // 1/3 vs 333333333/1000000000 differ only far out in the expansion
        let third = DistanceValue::new(1, 3).unwrap();
        let approx = dv("0.333333333");
        assert!(approx < third);
        assert!(
            DistanceValue::new(u64::MAX - 1, u64::MAX).unwrap() < DistanceValue::from_integer(1)
        );
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(DistanceValue::new(2, 4).unwrap().to_string(), "1/2");
        assert_eq!(DistanceValue::new(8, 4).unwrap().to_string(), "2");
        assert_eq!(DistanceValue::ZERO.to_string(), "0");
        assert_eq!(
            DistanceValue::inverse_power_of_two(3).unwrap().to_string(),
            "1/8"
        );
    }

    #[test]
    fn json_refuses_floats() {
        assert!(serde_json::from_str::<DistanceValue>("0.5").is_err());
        assert_eq!(
            serde_json::from_str::<DistanceValue>("7").unwrap(),
            DistanceValue::from(7)
        );
        assert_eq!(
            serde_json::from_str::<DistanceValue>("\"7/2\"")
                .unwrap()
                .to_string(),
            "7/2"
        );
        assert_eq!(serde_json::to_string(&dv("0.75")).unwrap(), "\"3/4\"");
    }
}
