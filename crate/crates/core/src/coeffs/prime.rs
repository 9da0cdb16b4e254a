//! Prime field 𝔽ₚ with a runtime modulus.
//!
//! Every element carries its modulus; arithmetic on elements of different
//! prime fields is a programming error and panics. Moduli up to 2⁶³ are
//! supported (products go through u128).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive};

use super::{Automorphism, CoeffError, FieldMode, Scalar};

/// Deterministic Miller-Rabin for u64 (the first twelve prime bases decide
/// primality for all 64-bit integers).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let pow_mod = |mut base: u128, mut exp: u64, modulus: u128| -> u128 {
        let mut acc: u128 = 1;
        base %= modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % modulus;
            }
            base = base * base % modulus;
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a as u128, d, n as u128);
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x * x % (n as u128);
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An element of 𝔽ₚ: the residue in [0, p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Result<Self, CoeffError> {
        if !is_prime_u64(modulus) {
            return Err(CoeffError::NotPrime { p: modulus });
        }
        Ok(Fp {
            value: value % modulus,
            modulus,
        })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn same_field(&self, other: &Fp) -> u64 {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed prime-field moduli {} and {}",
            self.modulus, other.modulus
        );
        self.modulus
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add<&Fp> for &Fp {
    type Output = Fp;
    fn add(self, rhs: &Fp) -> Fp {
        let p = self.same_field(rhs);
        Fp {
            value: ((self.value as u128 + rhs.value as u128) % p as u128) as u64,
            modulus: p,
        }
    }
}

impl Sub<&Fp> for &Fp {
    type Output = Fp;
    fn sub(self, rhs: &Fp) -> Fp {
        let p = self.same_field(rhs);
        Fp {
            value: ((self.value as u128 + (p - rhs.value) as u128) % p as u128) as u64,
            modulus: p,
        }
    }
}

impl Mul<&Fp> for &Fp {
    type Output = Fp;
    fn mul(self, rhs: &Fp) -> Fp {
        let p = self.same_field(rhs);
        Fp {
            value: (self.value as u128 * rhs.value as u128 % p as u128) as u64,
            modulus: p,
        }
    }
}

impl Neg for &Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

impl Scalar for Fp {
    const MODE_LABEL: &'static str = "Fp";

    fn from_integer(mode: &FieldMode, n: &BigInt) -> Result<Self, CoeffError> {
        match mode {
            FieldMode::PrimeField { p } => {
                if !is_prime_u64(*p) {
                    return Err(CoeffError::NotPrime { p: *p });
                }
                let pb = BigInt::from(*p);
                let mut r = n.mod_floor(&pb);
                if r.is_negative() {
                    r += &pb;
                }
                Ok(Fp {
                    value: r.to_u64().expect("residue fits u64"),
                    modulus: *p,
                })
            }
            other => Err(CoeffError::ModeMismatch {
                expected: "Fp".to_string(),
                got: other.to_string(),
            }),
        }
    }

    fn from_ratio(mode: &FieldMode, num: &BigInt, den: &BigInt) -> Result<Self, CoeffError> {
        let n = Fp::from_integer(mode, num)?;
        let d = Fp::from_integer(mode, den)?;
        Ok(&n * &d.inverse()?)
    }

    fn parameter(_mode: &FieldMode, _index: usize) -> Result<Self, CoeffError> {
        Err(CoeffError::NoParameters)
    }

    fn zero_like(&self) -> Self {
        Fp {
            value: 0,
            modulus: self.modulus,
        }
    }

    fn one_like(&self) -> Self {
        Fp {
            value: 1 % self.modulus,
            modulus: self.modulus,
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1 % self.modulus
    }

    fn is_unit(&self) -> bool {
        self.value != 0
    }

    fn inverse(&self) -> Result<Self, CoeffError> {
        if self.value == 0 {
            return Err(CoeffError::DivisionByZero);
        }
        // extended Euclid on (value, p)
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (self.modulus as i128, self.value as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1, "modulus is prime, nonzero residues are units");
        let p = self.modulus as i128;
        let inv = ((t % p) + p) % p;
        Ok(Fp {
            value: inv as u64,
            modulus: self.modulus,
        })
    }

    fn apply_automorphism(&self, aut: &Automorphism, power: &BigInt) -> Result<Self, CoeffError> {
        match aut {
            Automorphism::Identity => Ok(*self),
            // x ↦ x^(p^k) = x on the prime field (Fermat), any k.
            Automorphism::Frobenius => {
                let _ = power;
                Ok(*self)
            }
            other => Err(CoeffError::UnsupportedAutomorphism {
                detail: format!("{other:?} on Fp"),
            }),
        }
    }

    fn differentiate(&self, _var: usize) -> Result<Self, CoeffError> {
        Err(CoeffError::NoParameters)
    }

    fn as_parameter_monomial(&self) -> Option<Vec<BigInt>> {
        if Scalar::is_one(self) {
            Some(Vec::new())
        } else {
            None
        }
    }

    fn mode(&self) -> FieldMode {
        FieldMode::PrimeField { p: self.modulus }
    }

    fn render(&self) -> String {
        self.value.to_string()
    }

    fn needs_parens(&self) -> bool {
        false
    }

    fn display_negative(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(7));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(91));
    }

    #[test]
    fn arithmetic_mod_7() {
        let mode = FieldMode::PrimeField { p: 7 };
        let a = Fp::from_integer(&mode, &BigInt::from(-3)).unwrap();
        assert_eq!(a.value(), 4);
        let b = Fp::from_integer(&mode, &BigInt::from(5)).unwrap();
        assert_eq!((&a + &b).value(), 2);
        assert_eq!((&a - &b).value(), 6);
        assert_eq!((&a * &b).value(), 6);
        assert_eq!((&a * &a.inverse().unwrap()).value(), 1);
        // 4^{-2} = (4^{-1})^2 = 2^2 = 4
        assert_eq!(a.pow_int(&BigInt::from(-2)).unwrap().value(), 4);
    }

    #[test]
    fn nonprime_modulus_rejected() {
        let mode = FieldMode::PrimeField { p: 6 };
        assert!(matches!(
            Fp::from_integer(&mode, &BigInt::from(1)),
            Err(CoeffError::NotPrime { p: 6 })
        ));
    }
}
