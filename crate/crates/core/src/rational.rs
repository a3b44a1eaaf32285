//! Exact rational values used for evaluation and specialization.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A reduced fraction with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalValue(BigRational);

impl RationalValue {
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // BigRational::new reduces and normalizes the sign onto the numerator.
        Ok(RationalValue(BigRational::new(numerator, denominator)))
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        RationalValue(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        RationalValue(BigRational::zero())
    }

    pub fn one() -> Self {
        RationalValue(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Integer power; negative exponents invert and fail on zero.
    pub fn pow(&self, exp: i32) -> Result<Self> {
        if exp < 0 && self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalValue(num_traits::Pow::pow(&self.0, exp)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalValue(&self.0 / &other.0))
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for RationalValue {
    fn from(r: BigRational) -> Self {
        RationalValue(r)
    }
}

impl From<i64> for RationalValue {
    fn from(v: i64) -> Self {
        RationalValue::integer(v)
    }
}

impl fmt::Display for RationalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Accepts `p`, `-p`, `p/q`.
impl FromStr for RationalValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str, offset: usize| {
            BigInt::from_str(t.trim()).map_err(|_| Error::Parse {
                line: 1,
                column: offset + 1,
                message: format!("invalid integer `{t}` in rational `{s}`"),
            })
        };
        match s.split_once('/') {
            None => Ok(RationalValue::integer(parse_int(s, 0)?)),
            Some((p, q)) => {
                let num = parse_int(p, 0)?;
                let den = parse_int(q, p.len() + 1)?;
                if den.is_zero() {
                    return Err(Error::Parse {
                        line: 1,
                        column: p.len() + 2,
                        message: "zero denominator".into(),
                    });
                }
                RationalValue::new(num, den)
            }
        }
    }
}

impl Add for &RationalValue {
    type Output = RationalValue;
    fn add(self, rhs: Self) -> RationalValue {
        RationalValue(&self.0 + &rhs.0)
    }
}

impl Sub for &RationalValue {
    type Output = RationalValue;
    fn sub(self, rhs: Self) -> RationalValue {
        RationalValue(&self.0 - &rhs.0)
    }
}

impl Mul for &RationalValue {
    type Output = RationalValue;
    fn mul(self, rhs: Self) -> RationalValue {
        RationalValue(&self.0 * &rhs.0)
    }
}

impl Neg for &RationalValue {
    type Output = RationalValue;
    fn neg(self) -> RationalValue {
        RationalValue(-&self.0)
    }
}

impl RationalValue {
    pub fn abs(&self) -> Self {
        RationalValue(self.0.abs())
    }
}
