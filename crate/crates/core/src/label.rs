use alloc::string::ToString;
use core::fmt;
use core::iter::{Product, Sum};
use core::ops::{Add, AddAssign, Mul, MulAssign};
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// An exact nonnegative rational number, the edge-weight scalar of a labeled
/// graph.
///
/// Addition and multiplication are closed on nonnegative rationals, so the
/// type offers them directly; subtraction and division are checked. Values
/// are always kept in lowest terms and `Display` prints `p` or `p/q`
/// accordingly, which [`FromStr`] accepts back (along with exact decimal
/// literals such as `0.25`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(BigRational);

impl Label {
    /// Wraps an exact rational; rejects negative values.
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() {
            Err(Error::NegativeLabel(value.to_string()))
        } else {
            Ok(Label(value))
        }
    }

    pub fn zero() -> Self {
        Label(BigRational::zero())
    }

    pub fn one() -> Self {
        Label(BigRational::one())
    }

    pub fn from_int(n: u64) -> Self {
        Label(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact fraction `numer / denom`.
    pub fn from_fraction(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidRational("denominator is zero".to_string()));
        }
        Ok(Label(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// True when the value is a whole number.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn pow(&self, exp: u32) -> Self {
        Label(BigRational::new(
            self.0.numer().pow(exp),
            self.0.denom().pow(exp),
        ))
    }

    /// `self - rhs`, or `None` when the result would be negative.
    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        if self.0 >= rhs.0 {
            Some(Label(&self.0 - &rhs.0))
        } else {
            None
        }
    }

    /// `self / rhs`, or `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(Label(&self.0 / &rhs.0))
        }
    }

    /// `self / n` for a positive integer divisor.
    pub fn div_int(&self, n: u64) -> Self {
        assert!(n > 0, "division by zero");
        Label(&self.0 / BigInt::from(n))
    }
}

impl Add for &Label {
    type Output = Label;
    fn add(self, rhs: &Label) -> Label {
        Label(&self.0 + &rhs.0)
    }
}

impl Mul for &Label {
    type Output = Label;
    fn mul(self, rhs: &Label) -> Label {
        Label(&self.0 * &rhs.0)
    }
}

impl AddAssign<&Label> for Label {
    fn add_assign(&mut self, rhs: &Label) {
        self.0 += &rhs.0;
    }
}

impl MulAssign<&Label> for Label {
    fn mul_assign(&mut self, rhs: &Label) {
        self.0 *= &rhs.0;
    }
}

impl<'a> Sum<&'a Label> for Label {
    fn sum<I: Iterator<Item = &'a Label>>(iter: I) -> Label {
        iter.fold(Label::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Sum for Label {
    fn sum<I: Iterator<Item = Label>>(iter: I) -> Label {
        iter.fold(Label::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Product<&'a Label> for Label {
    fn product<I: Iterator<Item = &'a Label>>(iter: I) -> Label {
        iter.fold(Label::one(), |mut acc, x| {
            acc *= x;
            acc
        })
    }
}

impl Product for Label {
    fn product<I: Iterator<Item = Label>>(iter: I) -> Label {
        iter.fold(Label::one(), |mut acc, x| {
            acc *= &x;
            acc
        })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // BigRational prints `p` when the denominator is one, else `p/q`,
        // always in lowest terms.
        write!(f, "{}", self.0)
    }
}

fn parse_uint(s: &str, whole: &str) -> Result<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidRational(whole.to_string()));
    }
    s.parse::<BigUint>()
        .map_err(|_| Error::InvalidRational(whole.to_string()))
}

impl FromStr for Label {
    type Err = Error;

    /// Accepts `p`, `p/q`, and finite decimal literals, all nonnegative.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        if body.starts_with('-') {
            return Err(Error::NegativeLabel(s.to_string()));
        }
        let body = body.strip_prefix('+').unwrap_or(body);
        if body.is_empty() {
            return Err(Error::InvalidRational(s.to_string()));
        }
        if let Some((num, den)) = body.split_once('/') {
            let num = parse_uint(num, s)?;
            let den = parse_uint(den, s)?;
            if den.is_zero() {
                return Err(Error::InvalidRational(s.to_string()));
            }
            return Ok(Label(BigRational::new(num.into(), den.into())));
        }
        if let Some((int, frac)) = body.split_once('.') {
            if int.is_empty() && frac.is_empty() {
                return Err(Error::InvalidRational(s.to_string()));
            }
            let int = if int.is_empty() {
                BigUint::zero()
            } else {
                parse_uint(int, s)?
            };
            let frac_digits = frac.len() as u32;
            let frac = if frac.is_empty() {
                BigUint::zero()
            } else {
                parse_uint(frac, s)?
            };
            let scale = BigUint::from(10u32).pow(frac_digits);
            let numer = int * &scale + frac;
            return Ok(Label(BigRational::new(numer.into(), scale.into())));
        }
        let n = parse_uint(body, s)?;
        Ok(Label(BigRational::from_integer(n.into())))
    }
}
