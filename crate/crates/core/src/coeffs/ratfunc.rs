//! Multivariate rational functions ℚ(t₁..tₘ).
//!
//! Fractions are deliberately kept unreduced (no multivariate gcd); only the
//! content and the sign of the denominator are normalised, so that the
//! denominator is always a primitive integer-coefficient polynomial with
//! positive leading coefficient. Equality is decided by cross-multiplication,
//! which is exact regardless of reduction.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{rational_pow_big, Automorphism, CoeffError, FieldMode, Scalar};

/// Sparse multivariate polynomial over ℚ. Keys are dense exponent rows of
/// length `nvars`; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u64>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k < nvars);
        let mut e = vec![0u64; nvars];
        e[k] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u64>, c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        let constant = vec![0u64; self.nvars];
        self.terms.len() == 1 && self.terms.get(&constant).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, &BigRational)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, e: Vec<u64>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "parameter count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &MPoly) -> MPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "parameter count mismatch");
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u64> = ea
                    .iter()
                    .zip(eb.iter())
                    .map(|(a, b)| a.checked_add(*b).expect("parameter exponent overflow"))
                    .collect();
                out.insert_add(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    /// ∂/∂t_var.
    pub fn differentiate(&self, var: usize) -> MPoly {
        assert!(var < self.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.insert_add(e2, c * BigRational::from(BigInt::from(e[var])));
        }
        out
    }

    /// Leading (largest-exponent) coefficient under the lexicographic key
    /// order; zero polynomial gives None.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.iter().next_back().map(|(_, c)| c)
    }

    /// content · sign(leading): the positive-or-negative rational c such that
    /// self/c has coprime integer coefficients and positive leading one.
    fn normalizer(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return None;
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut c = BigRational::new(num_gcd, den_lcm);
        if self.leading_coeff().expect("nonzero").is_negative() {
            c = -c;
        }
        Some(c)
    }

    /// Single-term check: returns (exponents, coefficient).
    pub fn as_single_term(&self) -> Option<(&Vec<u64>, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Descending by exponent key for stable, readable output.
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let is_const = e.iter().all(|&v| v == 0);
            let (sign, abs) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if idx == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff_str = if abs.denom().is_one() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            if is_const {
                write!(f, "{coeff_str}")?;
            } else {
                let mut first = true;
                if !abs.is_one() {
                    write!(f, "{coeff_str}")?;
                    first = false;
                }
                for (k, &exp) in e.iter().enumerate() {
                    if exp == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write!(f, "t{}", k + 1)?;
                    if exp != 1 {
                        write!(f, "^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// A rational function num/den over ℚ(t₁..tₘ).
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    /// Build num/den, normalising the denominator to a primitive integer
    /// polynomial with positive leading coefficient.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        assert_eq!(num.nvars(), den.nvars(), "parameter count mismatch");
        if num.is_zero() {
            return Ok(RatFunc {
                den: MPoly::one(num.nvars()),
                num,
            });
        }
        let c = den.normalizer().expect("nonzero denominator");
        let inv = c.recip();
        Ok(RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(num: MPoly) -> Self {
        let n = num.nvars();
        RatFunc {
            num,
            den: MPoly::one(n),
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        // cross-multiplication; exact without any gcd reduction
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        let num = self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
            .expect("nonzero denominator")
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.num.is_zero(), "division by zero rational function");
        RatFunc::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
            .expect("nonzero denominator")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Scalar for RatFunc {
    const MODE_LABEL: &'static str = "Qt";

    fn from_integer(mode: &FieldMode, n: &BigInt) -> Result<Self, CoeffError> {
        match mode {
            FieldMode::RationalFunctions { params } => Ok(RatFunc::from_poly(MPoly::constant(
                *params,
                BigRational::from(n.clone()),
            ))),
            other => Err(CoeffError::ModeMismatch {
                expected: "Qt".to_string(),
                got: other.to_string(),
            }),
        }
    }

    fn from_ratio(mode: &FieldMode, num: &BigInt, den: &BigInt) -> Result<Self, CoeffError> {
        match mode {
            FieldMode::RationalFunctions { params } => {
                if den.is_zero() {
                    return Err(CoeffError::DivisionByZero);
                }
                Ok(RatFunc::from_poly(MPoly::constant(
                    *params,
                    BigRational::new(num.clone(), den.clone()),
                )))
            }
            other => Err(CoeffError::ModeMismatch {
                expected: "Qt".to_string(),
                got: other.to_string(),
            }),
        }
    }

    fn parameter(mode: &FieldMode, index: usize) -> Result<Self, CoeffError> {
        match mode {
            FieldMode::RationalFunctions { params } => {
                if index >= *params {
                    return Err(CoeffError::ParameterOutOfRange {
                        index,
                        params: *params,
                    });
                }
                Ok(RatFunc::from_poly(MPoly::var(*params, index)))
            }
            other => Err(CoeffError::ModeMismatch {
                expected: "Qt".to_string(),
                got: other.to_string(),
            }),
        }
    }

    fn zero_like(&self) -> Self {
        RatFunc::from_poly(MPoly::zero(self.nvars()))
    }

    fn one_like(&self) -> Self {
        RatFunc::from_poly(MPoly::one(self.nvars()))
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
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn is_unit(&self) -> bool {
        !self.num.is_zero()
    }

    fn inverse(&self) -> Result<Self, CoeffError> {
        if self.num.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    fn apply_automorphism(&self, aut: &Automorphism, power: &BigInt) -> Result<Self, CoeffError> {
        match aut {
            Automorphism::Identity => Ok(self.clone()),
            Automorphism::ParamScaling(cs) => {
                if cs.len() != self.nvars() {
                    return Err(CoeffError::UnsupportedAutomorphism {
                        detail: format!(
                            "scaling has {} constants for {} parameters",
                            cs.len(),
                            self.nvars()
                        ),
                    });
                }
                let scale_poly = |p: &MPoly| -> MPoly {
                    let mut out = MPoly::zero(p.nvars());
                    for (e, c) in p.terms() {
                        let mut factor = BigRational::one();
                        for (ck, &ek) in cs.iter().zip(e.iter()) {
                            if ek != 0 {
                                factor *= rational_pow_big(ck, &(BigInt::from(ek) * power));
                            }
                        }
                        out.insert_add(e.clone(), c * &factor);
                    }
                    out
                };
                RatFunc::new(scale_poly(&self.num), scale_poly(&self.den))
            }
            other => Err(CoeffError::UnsupportedAutomorphism {
                detail: format!("{other:?} on Qt"),
            }),
        }
    }

    fn differentiate(&self, var: usize) -> Result<Self, CoeffError> {
        if var >= self.nvars() {
            return Err(CoeffError::ParameterOutOfRange {
                index: var,
                params: self.nvars(),
            });
        }
        // quotient rule: (n/d)' = (n'd - nd')/d^2
        let num = self
            .num
            .differentiate(var)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.differentiate(var)));
        let den = self.den.mul(&self.den);
        RatFunc::new(num, den)
    }

    fn as_parameter_monomial(&self) -> Option<Vec<BigInt>> {
        let (en, cn) = self.num.as_single_term()?;
        let (ed, cd) = self.den.as_single_term()?;
        if cn != cd {
            return None;
        }
        Some(
            en.iter()
                .zip(ed.iter())
                .map(|(a, b)| BigInt::from(*a) - BigInt::from(*b))
                .collect(),
        )
    }

    fn mode(&self) -> FieldMode {
        FieldMode::RationalFunctions {
            params: self.nvars(),
        }
    }

    fn render(&self) -> String {
        if self.den.is_one() {
            format!("{}", self.num)
        } else {
            format!("({})/({})", self.num, self.den)
        }
    }

    fn needs_parens(&self) -> bool {
        // a bare polynomial with several terms must be parenthesised in a
        // product; a full fraction renders as (num)/(den) already
        self.den.is_one() && self.num.terms.len() > 1
    }

    fn display_negative(&self) -> bool {
        self.den.is_one()
            && self
                .num
                .leading_coeff()
                .map(Signed::is_negative)
                .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mode() -> FieldMode {
        FieldMode::RationalFunctions { params: 2 }
    }

    #[test]
    fn cross_multiplication_equality() {
        let t1 = RatFunc::parameter(&mode(), 0).unwrap();
        let one = t1.one_like();
        // (t1^2 - 1)/(t1 - 1) == (t1 + 1)/1
        let num = &(&t1 * &t1) - &one;
        let den = &t1 - &one;
        let a = RatFunc::new(num.num().clone(), den.num().clone()).unwrap();
        let b = &t1 + &one;
        assert_eq!(a, b);
        assert!(!a.den().is_one(), "a stays unreduced");
    }

    #[test]
    fn denominator_sign_normalisation() {
        let t1 = RatFunc::parameter(&mode(), 0).unwrap();
        let neg_t1 = -&t1;
        let f = (&t1.one_like() / &neg_t1).clone();
        // denominator must have positive leading coefficient
        assert!(f.den().leading_coeff().unwrap().is_positive());
        assert_eq!(&f * &neg_t1, t1.one_like());
    }

    #[test]
    fn parameter_monomial_extraction() {
        let m = mode();
        let t1 = RatFunc::parameter(&m, 0).unwrap();
        let t2 = RatFunc::parameter(&m, 1).unwrap();
        let q = &t1 * &t2.inverse().unwrap();
        assert_eq!(
            q.as_parameter_monomial().unwrap(),
            vec![BigInt::from(1), BigInt::from(-1)]
        );
        let two = RatFunc::from_integer(&m, &BigInt::from(2)).unwrap();
        assert!((&two * &t1).as_parameter_monomial().is_none());
        assert_eq!(t1.one_like().as_parameter_monomial().unwrap().len(), 2);
    }

    #[test]
    fn render_round_shapes() {
        let m = mode();
        let t1 = RatFunc::parameter(&m, 0).unwrap();
        let one = t1.one_like();
        let f = &(&t1 + &one) * &t1.inverse().unwrap();
        assert_eq!(f.render(), "(t1 + 1)/(t1)");
        assert_eq!((&t1 + &t1).render(), "2*t1");
    }
}

