//! Scalar implementations for ℚ (arbitrary-precision rationals, always
//! reduced with positive denominator) and for the ring ℤ.
//!
//! Both are thin newtypes over the `num` types; keeping `Scalar` off the
//! foreign types avoids method-name clashes with `num_traits`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Automorphism, CoeffError, FieldMode, Scalar};

/// Exact rational scalar (ℚ mode): reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(pub BigRational);

/// Exact integer scalar (ℤ mode; ring operations only, units are ±1).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Integer(pub BigInt);

impl Rational {
    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from(BigInt::from(n)))
    }

    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Integer {
    pub fn from_int(n: i64) -> Self {
        Integer(BigInt::from(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

macro_rules! ref_binops {
    ($t:ty) => {
        impl Add<&$t> for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                Scalar::add(self, rhs)
            }
        }
        impl Sub<&$t> for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                Scalar::sub(self, rhs)
            }
        }
        impl Mul<&$t> for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                Scalar::mul(self, rhs)
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                Scalar::neg(self)
            }
        }
        impl Div<&$t> for &$t {
            type Output = $t;
            fn div(self, rhs: &$t) -> $t {
                Scalar::mul(self, &rhs.inverse().expect("division by a non-unit"))
            }
        }
    };
}

ref_binops!(Rational);
ref_binops!(Integer);

impl Scalar for Rational {
    const MODE_LABEL: &'static str = "Q";

    fn from_integer(mode: &FieldMode, n: &BigInt) -> Result<Self, CoeffError> {
        match mode {
            FieldMode::Rational => Ok(Rational(BigRational::from(n.clone()))),
            other => Err(CoeffError::ModeMismatch {
                expected: "Q".to_string(),
                got: other.to_string(),
            }),
        }
    }

    fn from_ratio(mode: &FieldMode, num: &BigInt, den: &BigInt) -> Result<Self, CoeffError> {
        match mode {
            FieldMode::Rational => {
                if den.is_zero() {
                    return Err(CoeffError::DivisionByZero);
                }
                Ok(Rational(BigRational::new(num.clone(), den.clone())))
            }
            other => Err(CoeffError::ModeMismatch {
                expected: "Q".to_string(),
                got: other.to_string(),
            }),
        }
    }

    fn parameter(_mode: &FieldMode, _index: usize) -> Result<Self, CoeffError> {
        Err(CoeffError::NoParameters)
    }

    fn zero_like(&self) -> Self {
        Rational(BigRational::zero())
    }

    fn one_like(&self) -> Self {
        Rational(BigRational::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn is_unit(&self) -> bool {
        !self.0.is_zero()
    }

    fn inverse(&self) -> Result<Self, CoeffError> {
        if self.0.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    fn apply_automorphism(
        &self,
        aut: &Automorphism,
        _power: &BigInt,
    ) -> Result<Self, CoeffError> {
        match aut {
            Automorphism::Identity => Ok(self.clone()),
            other => Err(CoeffError::UnsupportedAutomorphism {
                detail: format!("{other:?} on Q"),
            }),
        }
    }

    fn differentiate(&self, _var: usize) -> Result<Self, CoeffError> {
        Err(CoeffError::NoParameters)
    }

    fn as_parameter_monomial(&self) -> Option<Vec<BigInt>> {
        if self.0.is_one() {
            Some(Vec::new())
        } else {
            None
        }
    }

    fn mode(&self) -> FieldMode {
        FieldMode::Rational
    }

    fn render(&self) -> String {
        if self.0.denom().is_one() {
            self.0.numer().to_string()
        } else {
            format!("{}/{}", self.0.numer(), self.0.denom())
        }
    }

    fn needs_parens(&self) -> bool {
        false
    }

    fn display_negative(&self) -> bool {
        self.0.is_negative()
    }
}

impl Scalar for Integer {
    const MODE_LABEL: &'static str = "Z";

    fn from_integer(mode: &FieldMode, n: &BigInt) -> Result<Self, CoeffError> {
        match mode {
            FieldMode::Integer => Ok(Integer(n.clone())),
            other => Err(CoeffError::ModeMismatch {
                expected: "Z".to_string(),
                got: other.to_string(),
            }),
        }
    }

    fn from_ratio(mode: &FieldMode, num: &BigInt, den: &BigInt) -> Result<Self, CoeffError> {
        match mode {
            FieldMode::Integer => {
                if den.is_zero() {
                    return Err(CoeffError::DivisionByZero);
                }
                let (q, r) = num_integer::Integer::div_rem(num, den);
                if !r.is_zero() {
                    return Err(CoeffError::NotAUnit);
                }
                Ok(Integer(q))
            }
            other => Err(CoeffError::ModeMismatch {
                expected: "Z".to_string(),
                got: other.to_string(),
            }),
        }
    }

    fn parameter(_mode: &FieldMode, _index: usize) -> Result<Self, CoeffError> {
        Err(CoeffError::NoParameters)
    }

    fn zero_like(&self) -> Self {
        Integer(BigInt::zero())
    }

    fn one_like(&self) -> Self {
        Integer(BigInt::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        Integer(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Integer(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Integer(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Integer(-&self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn is_unit(&self) -> bool {
        self.0.abs().is_one()
    }

    fn inverse(&self) -> Result<Self, CoeffError> {
        if self.0.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        if self.0.abs().is_one() {
            Ok(self.clone())
        } else {
            Err(CoeffError::NotAUnit)
        }
    }

    fn apply_automorphism(
        &self,
        aut: &Automorphism,
        _power: &BigInt,
    ) -> Result<Self, CoeffError> {
        match aut {
            Automorphism::Identity => Ok(self.clone()),
            other => Err(CoeffError::UnsupportedAutomorphism {
                detail: format!("{other:?} on Z"),
            }),
        }
    }

    fn differentiate(&self, _var: usize) -> Result<Self, CoeffError> {
        Err(CoeffError::NoParameters)
    }

    fn as_parameter_monomial(&self) -> Option<Vec<BigInt>> {
        if self.0.is_one() {
            Some(Vec::new())
        } else {
            None
        }
    }

    fn mode(&self) -> FieldMode {
        FieldMode::Integer
    }

    fn render(&self) -> String {
        self.0.to_string()
    }

    fn needs_parens(&self) -> bool {
        false
    }

    fn display_negative(&self) -> bool {
        self.0.is_negative()
    }
}
