//! Exact integer and rational substrate: binomial coefficients, reduced
//! probabilities and round-half-even decimal rendering.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default number of decimals used when rendering probabilities.
pub const DEFAULT_DIGITS: u32 = 6;

/// Binomial coefficient `C(a, b)`, zero-extended outside `0 <= b <= a`.
///
/// Uses the multiplicative formula over the smaller of `b` and `a - b`; every
/// intermediate quotient is itself a binomial coefficient, so each division
/// is exact.
pub fn binom(a: i64, b: i64) -> BigUint {
    if a < 0 || b < 0 || b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 1..=b {
        acc *= BigUint::from((a - b + i) as u64);
        acc /= BigUint::from(i as u64);
    }
    acc
}

/// An exact probability `num / den` with `gcd(num, den) = 1` and
/// `0 <= num <= den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactProb {
    num: BigUint,
    den: BigUint,
}

impl ExactProb {
    /// Builds a reduced probability from non-negative parts.
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num > den {
            return Err(Error::OutOfRange {
                num: num.to_string(),
                den: den.to_string(),
            });
        }
        let g = num.gcd(&den);
        Ok(Self {
            num: num / &g,
            den: den / g,
        })
    }

    pub fn zero() -> Self {
        Self {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: BigUint::one(),
            den: BigUint::one(),
        }
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `1 - self`, still reduced since `gcd(den - num, den) = gcd(num, den)`.
    pub fn complement(&self) -> Self {
        Self {
            num: &self.den - &self.num,
            den: self.den.clone(),
        }
    }

    pub fn to_ratio(&self) -> BigRational {
        BigRational::new_raw(
            BigInt::from_biguint(Sign::Plus, self.num.clone()),
            BigInt::from_biguint(Sign::Plus, self.den.clone()),
        )
    }

    /// Decimal rendering with exactly `digits` fractional digits, rounded
    /// half-to-even.
    pub fn to_decimal(&self, digits: u32) -> String {
        render_decimal(&self.to_ratio(), digits)
    }

    /// Nearest `f64`; only for display and statistics.
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.to_ratio())
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for ExactProb {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("ExactProb", 3)?;
        s.serialize_field("num", &self.num.to_string())?;
        s.serialize_field("den", &self.den.to_string())?;
        s.serialize_field("decimal", &self.to_decimal(DEFAULT_DIGITS))?;
        s.end()
    }
}

/// Reduced probability from signed parts, rejecting anything outside
/// `[0, 1]`.
pub fn prob_ratio(num: &BigInt, den: &BigInt) -> Result<ExactProb> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let out_of_range = || Error::OutOfRange {
        num: num.to_string(),
        den: den.to_string(),
    };
    // A negative denominator is only accepted with a non-positive numerator.
    let (num, den) = if den.is_negative() {
        (-num, -den)
    } else {
        (num.clone(), den.clone())
    };
    match (num.to_biguint(), den.to_biguint()) {
        (Some(n), Some(d)) => ExactProb::new(n, d).map_err(|_| out_of_range()),
        _ => Err(out_of_range()),
    }
}

/// Renders a signed rational with exactly `digits` fractional digits,
/// rounding half-to-even. Values that round to zero print without a sign.
pub fn render_decimal(value: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let num = value.numer().abs() * &scale;
    let den = value.denom().abs();
    let (mut q, r) = num.div_rem(&den);
    let twice = r * 2u32;
    if twice > den || (twice == den && q.is_odd()) {
        q += 1u32;
    }
    let negative = value.is_negative() && !q.is_zero();
    let mut digits_str = q.to_string();
    let width = digits as usize + 1;
    if digits_str.len() < width {
        digits_str = format!("{}{}", "0".repeat(width - digits_str.len()), digits_str);
    }
    let split = digits_str.len() - digits as usize;
    let mut out = String::with_capacity(digits_str.len() + 2);
    if negative {
        out.push('-');
    }
    out.push_str(&digits_str[..split]);
    if digits > 0 {
        out.push('.');
        out.push_str(&digits_str[split..]);
    }
    out
}

/// Drops trailing fractional zeros, and the point itself when nothing is
/// left after it: `"0.998060"` becomes `"0.99806"`, `"1.000000"` becomes `"1"`.
pub fn trim_decimal(rendered: &str) -> &str {
    if !rendered.contains('.') {
        return rendered;
    }
    rendered.trim_end_matches('0').trim_end_matches('.')
}

pub fn ratio_to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
