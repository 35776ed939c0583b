//! Nonnegative exact rationals used for cycle means and approximation factors.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("value {num}/{den} does not fit in 64-bit numerator/denominator")]
    TooLarge { num: u128, den: u128 },
    #[error("cannot parse '{0}' as a nonnegative rational")]
    Parse(String),
}

/// A nonnegative rational `num / den`, always kept in lowest terms with `den >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRational", into = "RawRational")]
pub struct Rational {
    num: u64,
    den: u64,
}

#[derive(Serialize, Deserialize)]
struct RawRational {
    num: u64,
    den: u64,
}

impl TryFrom<RawRational> for Rational {
    type Error = RationalError;

    fn try_from(raw: RawRational) -> Result<Self, Self::Error> {
        Rational::new(raw.num, raw.den)
    }
}

impl From<Rational> for RawRational {
    fn from(r: Rational) -> Self {
        RawRational {
            num: r.num,
            den: r.den,
        }
    }
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self, RationalError> {
        Self::from_u128(num as u128, den as u128)
    }

    /// Reduces a wide fraction, failing if the reduced form does not fit in `u64`.
    pub fn from_u128(num: u128, den: u128) -> Result<Self, RationalError> {
        if den == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (n, d) = (num / g, den / g);
        match (u64::try_from(n), u64::try_from(d)) {
            (Ok(num), Ok(den)) => Ok(Rational { num, den }),
            _ => Err(RationalError::TooLarge { num: n, den: d }),
        }
    }

    pub fn integer(value: u64) -> Self {
        Rational { num: value, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Display-only rendering; never feed this back into a computation.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Fixed-point decimal rendering computed with integer arithmetic (truncated).
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let whole = self.num / self.den;
        let mut rem = (self.num % self.den) as u128;
        let den = self.den as u128;
        let mut out = whole.to_string();
        if digits > 0 {
            out.push('.');
            for _ in 0..digits {
                rem *= 10;
                out.push(char::from(b'0' + (rem / den) as u8));
                rem %= den;
            }
        }
        out
    }

    /// `self * (1 + other)` as an exact rational, when it fits.
    pub fn scaled_by_one_plus(&self, other: Rational) -> Result<Rational, RationalError> {
        let num = self.num as u128 * (other.den as u128 + other.num as u128);
        let den = self.den as u128 * other.den as u128;
        Rational::from_u128(num, den)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `p/q`, integers, and finite decimals such as `0.125` (parsed exactly).
impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || RationalError::Parse(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let q: u64 = q.trim().parse().map_err(|_| bad())?;
            return Rational::new(p, q);
        }
        let (whole, frac) = s.split_once('.').unwrap_or((s, ""));
        if whole.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !whole.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if frac.len() > 18 {
            return Err(bad());
        }
        let scale = 10u128.pow(frac.len() as u32);
        let whole: u128 = if whole.is_empty() {
            0
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let frac_val: u128 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let num = whole
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(bad)?;
        Rational::from_u128(num, scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let r = Rational::new(6, 4).unwrap();
        assert_eq!((r.num(), r.den()), (3, 2));
        assert_eq!(Rational::new(0, 7).unwrap(), Rational::ZERO);
        assert!(Rational::new(1, 0).is_err());
    }

    #[test]
    fn parses_decimal_and_fraction_forms() {
        assert_eq!(
            "0.1".parse::<Rational>().unwrap(),
            Rational::new(1, 10).unwrap()
        );
        assert_eq!(
            "1/2".parse::<Rational>().unwrap(),
            Rational::new(1, 2).unwrap()
        );
        assert_eq!("1".parse::<Rational>().unwrap(), Rational::ONE);
        assert_eq!(
            ".5".parse::<Rational>().unwrap(),
            Rational::new(1, 2).unwrap()
        );
        assert!("-1".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!(".".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering_uses_cross_multiplication() {
        let a = Rational::new(1, 3).unwrap();
        let b = Rational::new(2, 5).unwrap();
        assert!(a < b);
        assert_eq!(
            Rational::new(2, 4)
                .unwrap()
                .cmp(&Rational::new(1, 2).unwrap()),
            Ordering::Equal
        );
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(
            Rational::new(3, 2).unwrap().to_decimal_string(6),
            "1.500000"
        );
        assert_eq!(Rational::new(1, 3).unwrap().to_decimal_string(4), "0.3333");
    }

    #[test]
    fn json_rejects_zero_denominator() {
        assert!(serde_json::from_str::<Rational>(r#"{"num":1,"den":0}"#).is_err());
        let r: Rational = serde_json::from_str(r#"{"num":4,"den":2}"#).unwrap();
        assert_eq!(r, Rational::integer(2));
    }
}
