//! Exact coefficient scalars and their actions.
//!
//! Four coefficient modes are supported: ℚ, a prime field 𝔽ₚ, multivariate
//! rational functions ℚ(t₁..tₘ), and the plain ring ℤ (no division; it exists
//! to exercise scalar extension). The core algebra is generic over the
//! [`Scalar`] trait; ring automorphisms are restricted to parameter scalings
//! (plus Frobenius on 𝔽ₚ), which keeps any two automorphisms commuting as the
//! quantum relations require over commutative coefficients.

mod prime;
mod ratfunc;
mod rational;

use std::fmt;


use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice;

pub use prime::{is_prime_u64, Fp};
pub use ratfunc::{MPoly, RatFunc};
pub use rational::{Integer, Rational};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not a unit in this coefficient ring")]
    NotAUnit,
    #[error("coefficient mode mismatch: expected {expected}, got {got}")]
    ModeMismatch { expected: String, got: String },
    #[error("coefficient mode has no parameters")]
    NoParameters,
    #[error("parameter index {index} out of range (mode has {params} parameters)")]
    ParameterOutOfRange { index: usize, params: usize },
    #[error("automorphism not supported in this mode: {detail}")]
    UnsupportedAutomorphism { detail: String },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("genericity check unsupported for this presentation: {detail}")]
    GenericityUnsupported { detail: String },
}

/// Which coefficient ring a presentation works over.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FieldMode {
    Rational,
    PrimeField { p: u64 },
    RationalFunctions { params: usize },
    Integer,
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Rational => write!(f, "Q"),
            FieldMode::PrimeField { p } => write!(f, "F{p}"),
            FieldMode::RationalFunctions { params: 1 } => write!(f, "Q(t1)"),
            FieldMode::RationalFunctions { params } => write!(f, "Q(t1..t{params})"),
            FieldMode::Integer => write!(f, "Z"),
        }
    }
}

impl FieldMode {
    pub fn params(&self) -> usize {
        match self {
            FieldMode::RationalFunctions { params } => *params,
            _ => 0,
        }
    }
}

/// A coefficient-ring automorphism of one of the supported shapes.
///
/// Parameter scalings act by t_k ↦ c_k·t_k and fix ℚ; any two of them
/// commute. Frobenius x ↦ x^p is the identity map on a prime field but is
/// kept as a distinct tag.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Automorphism {
    Identity,
    ParamScaling(Vec<BigRational>),
    Frobenius,
}

impl Automorphism {
    /// True when the map fixes every coefficient.
    pub fn is_identity(&self) -> bool {
        match self {
            Automorphism::Identity => true,
            Automorphism::ParamScaling(cs) => cs.iter().all(|c| c.is_one()),
            // x ↦ x^p is pointwise the identity on 𝔽_p.
            Automorphism::Frobenius => true,
        }
    }

    /// Structural well-formedness for a given coefficient mode.
    pub fn validate_for_mode(&self, mode: &FieldMode) -> Result<(), CoeffError> {
        match self {
            Automorphism::Identity => Ok(()),
            Automorphism::ParamScaling(cs) => match mode {
                FieldMode::RationalFunctions { params } => {
                    if cs.len() != *params {
                        return Err(CoeffError::UnsupportedAutomorphism {
                            detail: format!(
                                "scaling has {} constants for {} parameters",
                                cs.len(),
                                params
                            ),
                        });
                    }
                    if cs.iter().any(|c| c.is_zero()) {
                        return Err(CoeffError::UnsupportedAutomorphism {
                            detail: "scaling constant is zero".to_string(),
                        });
                    }
                    Ok(())
                }
                other => Err(CoeffError::UnsupportedAutomorphism {
                    detail: format!("parameter scaling in mode {other}"),
                }),
            },
            Automorphism::Frobenius => match mode {
                FieldMode::PrimeField { .. } => Ok(()),
                other => Err(CoeffError::UnsupportedAutomorphism {
                    detail: format!("Frobenius in mode {other}"),
                }),
            },
        }
    }

    /// True when the map acts trivially on the parameters t₁..tₘ (the
    /// supported regime for genericity).
    pub fn fixes_parameters(&self) -> bool {
        match self {
            Automorphism::Identity | Automorphism::Frobenius => true,
            Automorphism::ParamScaling(cs) => cs.iter().all(|c| c.is_one()),
        }
    }
}

/// A derivation δ = Σ aₖ ∂/∂tₖ with coefficients in the scalar ring; the
/// empty coefficient list is the zero map (the only derivation available in
/// modes without parameters).
#[derive(Clone, PartialEq, Debug)]
pub struct Derivation<K> {
    coeffs: Vec<K>,
}

impl<K: Scalar> Derivation<K> {
    pub fn zero() -> Self {
        Derivation { coeffs: Vec::new() }
    }

    pub fn new(coeffs: Vec<K>) -> Self {
        Derivation { coeffs }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Apply the derivation. Satisfies the Leibniz rule δ(ab) = δ(a)b + aδ(b).
    pub fn apply(&self, a: &K) -> Result<K, CoeffError> {
        if self.is_zero() {
            return Ok(a.zero_like());
        }
        let mut acc = a.zero_like();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let da = a.differentiate(k)?;
            acc = acc.add(&c.mul(&da));
        }
        Ok(acc)
    }
}

/// Exact coefficient arithmetic shared by all modes.
///
/// Arithmetic is exposed as `&self` methods (the concrete types additionally
/// implement the usual operators); division goes through
/// [`Scalar::inverse`] so that the ℤ mode can refuse non-units.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Short label of the mode family ("Q", "Fp", "Qt", "Z").
    const MODE_LABEL: &'static str;

    fn from_integer(mode: &FieldMode, n: &BigInt) -> Result<Self, CoeffError>;
    fn from_ratio(mode: &FieldMode, num: &BigInt, den: &BigInt) -> Result<Self, CoeffError>;
    /// The parameter t_{index+1} where the mode has parameters.
    fn parameter(mode: &FieldMode, index: usize) -> Result<Self, CoeffError>;

    /// Additive identity carrying the same mode data as `self`.
    fn zero_like(&self) -> Self;
    /// Multiplicative identity carrying the same mode data as `self`.
    fn one_like(&self) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn inverse(&self) -> Result<Self, CoeffError>;

    /// Integer power; negative exponents require a unit.
    fn pow_int(&self, k: &BigInt) -> Result<Self, CoeffError> {
        if k.is_zero() {
            return Ok(self.one_like());
        }
        let base = if k.is_negative() {
            self.inverse()?
        } else {
            self.clone()
        };
        let mag = k.magnitude();
        let mut result = self.one_like();
        for b in (0..mag.bits()).rev() {
            result = result.mul(&result);
            if mag.bit(b) {
                result = result.mul(&base);
            }
        }
        Ok(result)
    }

    /// Apply the `power`-th iterate of an automorphism (negative powers use
    /// bijectivity).
    fn apply_automorphism(&self, aut: &Automorphism, power: &BigInt)
        -> Result<Self, CoeffError>;

    /// Partial derivative ∂/∂t_var where the mode has parameters.
    fn differentiate(&self, var: usize) -> Result<Self, CoeffError>;

    /// When `self` is exactly t^e with scalar coefficient 1, the integer
    /// exponent vector e (empty for the element 1 in parameterless modes).
    fn as_parameter_monomial(&self) -> Option<Vec<BigInt>>;

    /// Value-level mode descriptor.
    fn mode(&self) -> FieldMode;

    /// Canonical text form, parseable by the frontend grammar.
    fn render(&self) -> String;
    /// Whether `render()` must be parenthesised inside a product.
    fn needs_parens(&self) -> bool;
    /// Used by printers to pull a leading minus sign out of a term.
    fn display_negative(&self) -> bool;
}

/// c^e for a nonzero rational c and arbitrary integer e.
pub fn rational_pow_big(c: &BigRational, e: &BigInt) -> BigRational {
    if e.is_zero() {
        return BigRational::one();
    }
    let base = if e.is_negative() { c.recip() } else { c.clone() };
    let mag = e.magnitude();
    let mut result = BigRational::one();
    for b in (0..mag.bits()).rev() {
        result = &result * &result;
        if mag.bit(b) {
            result = &result * &base;
        }
    }
    result
}

/// The coboundary σᵏ(a)/a = Π cⱼ^(k·eⱼ) for a scaling σ and the monomial
/// a with parameter exponents `exponents`.
pub fn scaling_coboundary(
    constants: &[BigRational],
    exponents: &[BigInt],
    k: &BigInt,
) -> BigRational {
    let mut acc = BigRational::one();
    for (c, e) in constants.iter().zip(exponents.iter()) {
        acc *= rational_pow_big(c, &(e * k));
    }
    acc
}

/// Exact rank of a family of integer vectors together with a basis of their
/// dependency lattice (combinations summing to zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeRank {
    pub rank: usize,
    pub kernel: Vec<Vec<BigInt>>,
}

pub fn integer_lattice_rank(vectors: &[Vec<BigInt>]) -> LatticeRank {
    if vectors.is_empty() {
        return LatticeRank {
            rank: 0,
            kernel: Vec::new(),
        };
    }
    let dim = vectors[0].len();
    assert!(
        vectors.iter().all(|v| v.len() == dim),
        "vectors of unequal length"
    );
    if dim == 0 {
        // Everything is the zero vector of ℤ⁰; all of ℤ^count is dependency.
        let count = vectors.len();
        let kernel = (0..count)
            .map(|j| {
                let mut v = vec![BigInt::zero(); count];
                v[j] = BigInt::one();
                v
            })
            .collect();
        return LatticeRank { rank: 0, kernel };
    }
    // Dependencies are the right kernel of the transpose.
    let transpose: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| vectors.iter().map(|v| v[i].clone()).collect())
        .collect();
    let kernel = lattice::kernel_basis(&transpose);
    LatticeRank {
        rank: vectors.len() - kernel.len(),
        kernel,
    }
}

/// The subgroup N ⊆ K* of the genericity quotient, in the supported regime:
/// the derived subgroup is trivial over commutative K and the σ-coboundaries
/// are trivial when σ fixes the parameters, so N is described by the lattice
/// of integer dependencies among the multiparameter exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubgroupN {
    /// Basis of the dependency lattice (combinations of the q_{ij} exponent
    /// vectors summing to zero). Empty exactly when the ring is generic.
    pub dependency_lattice: Vec<Vec<BigInt>>,
}

/// Outcome of a genericity check on a multiparameter system.
#[derive(Clone, Debug)]
pub struct GenericityReport {
    pub generic: bool,
    /// The (i, j, exponent) triple for each upper multiparameter q_{ij}.
    pub monomials: Vec<(usize, usize, Vec<BigInt>)>,
    pub certificate: GenericityCertificate,
    /// The exponent description of N backing the verdict.
    pub subgroup_n: SubgroupN,
}

#[derive(Clone, Debug)]
pub enum GenericityCertificate {
    /// The exponent vectors are independent; carries the verified rank.
    Independent { rank: usize },
    /// An explicit integral dependency among the q_{ij} (in the order of
    /// `monomials`).
    Dependency { combination: Vec<BigInt> },
}

/// Decide whether the multiparameters q_{ij} (i < j) are independent in the
/// multiplicative group K*/N.
///
/// Supported case: every q_{ij} is a pure Laurent monomial t^e with scalar 1
/// and every automorphism fixes the parameters, so N is trivial and
/// independence reduces to ℤ-linear independence of the exponent vectors.
#[allow(clippy::needless_range_loop)] // (i, j) pairs index the q matrix
pub fn genericity_check<K: Scalar>(
    q: &[Vec<K>],
    sigma: &[Automorphism],
) -> Result<GenericityReport, CoeffError> {
    for (i, s) in sigma.iter().enumerate() {
        if !s.fixes_parameters() {
            return Err(CoeffError::GenericityUnsupported {
                detail: format!("sigma_{} acts nontrivially on the parameters", i + 1),
            });
        }
    }
    let n = q.len();
    let mut monomials = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            match q[i][j].as_parameter_monomial() {
                Some(e) => monomials.push((i + 1, j + 1, e)),
                None => {
                    return Err(CoeffError::GenericityUnsupported {
                        detail: format!(
                            "q[{}][{}] = {} is not a parameter monomial with scalar 1",
                            i + 1,
                            j + 1,
                            q[i][j]
                        ),
                    })
                }
            }
        }
    }
    let vectors: Vec<Vec<BigInt>> = monomials.iter().map(|(_, _, e)| e.clone()).collect();
    let lr = integer_lattice_rank(&vectors);
    let generic = lr.kernel.is_empty();
    let certificate = if generic {
        GenericityCertificate::Independent { rank: lr.rank }
    } else {
        GenericityCertificate::Dependency {
            combination: lr.kernel[0].clone(),
        }
    };
    Ok(GenericityReport {
        generic,
        monomials,
        certificate,
        subgroup_n: SubgroupN {
            dependency_lattice: lr.kernel,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rational_field_arith() {
        // 1/2 + 1/3 = 5/6
        assert_eq!(&rat(1, 2) + &rat(1, 3), rat(5, 6));
        let q = rat(-3, 4);
        assert!((&q * &q.inverse().unwrap()).is_one());
    }

    #[test]
    fn prime_field_arith() {
        let mode = FieldMode::PrimeField { p: 7 };
        let three = Fp::from_integer(&mode, &BigInt::from(3)).unwrap();
        let five = Fp::from_integer(&mode, &BigInt::from(5)).unwrap();
        assert!((&three * &five).is_one());
    }

    #[test]
    fn ratfunc_inverse_pair() {
        let mode = FieldMode::RationalFunctions { params: 1 };
        let t = RatFunc::parameter(&mode, 0).unwrap();
        let one = t.one_like();
        let a = &t / &(&t + &one); // t1/(t1+1) via Div impl
        let b = &(&t + &one) / &t;
        assert!((&a * &b).is_one());
    }

    #[test]
    fn integer_mode_rejects_nonunit_inverse() {
        let two = Integer::from_int(2);
        assert_eq!(two.inverse(), Err(CoeffError::NotAUnit));
        assert_eq!(
            Integer::from_int(-1).inverse().unwrap(),
            Integer::from_int(-1)
        );
    }

    #[test]
    fn pow_int_negative_exponent() {
        let q = rat(2, 3);
        assert_eq!(q.pow_int(&BigInt::from(-2)).unwrap(), rat(9, 4));
        assert!(rat(0, 1).pow_int(&BigInt::from(-1)).is_err());
        assert_eq!(
            Rational::from_int(2).pow_int(&BigInt::from(10)).unwrap(),
            Rational::from_int(1024)
        );
    }

    #[test]
    fn derivation_power_and_quotient_rule() {
        let mode = FieldMode::RationalFunctions { params: 1 };
        let t = RatFunc::parameter(&mode, 0).unwrap();
        let d = Derivation::new(vec![t.one_like()]);
        // d(t^2) = 2t
        let t2 = &t * &t;
        let two_t = &(&t + &t);
        assert_eq!(&d.apply(&t2).unwrap(), two_t);
        // d(5) = 0
        let five = RatFunc::from_integer(&mode, &BigInt::from(5)).unwrap();
        assert!(d.apply(&five).unwrap().is_zero());
        // d(1/t) = -1/t^2
        let inv_t = t.inverse().unwrap();
        let expected = -&(&inv_t * &inv_t);
        assert_eq!(d.apply(&inv_t).unwrap(), expected);
    }

    #[test]
    fn leibniz_rule_spot() {
        let mode = FieldMode::RationalFunctions { params: 2 };
        let t1 = RatFunc::parameter(&mode, 0).unwrap();
        let t2 = RatFunc::parameter(&mode, 1).unwrap();
        let d = Derivation::new(vec![t2.clone(), t1.one_like()]);
        let a = &(&t1 * &t1) + &t2;
        let b = &t1 * &t2.inverse().unwrap();
        let lhs = d.apply(&(&a * &b)).unwrap();
        let rhs = &(&d.apply(&a).unwrap() * &b) + &(&a * &d.apply(&b).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scaling_automorphism_and_coboundary() {
        let mode = FieldMode::RationalFunctions { params: 1 };
        let two = BigRational::from(BigInt::from(2));
        let t = RatFunc::parameter(&mode, 0).unwrap();
        let sigma = Automorphism::ParamScaling(vec![two.clone()]);
        // sigma(t^2) = 4 t^2
        let t2 = &t * &t;
        let four = RatFunc::from_integer(&mode, &BigInt::from(4)).unwrap();
        assert_eq!(
            t2.apply_automorphism(&sigma, &BigInt::one()).unwrap(),
            &four * &t2
        );
        // k = 0 fixes everything
        assert_eq!(t2.apply_automorphism(&sigma, &BigInt::zero()).unwrap(), t2);
        // constants are fixed
        let three = RatFunc::from_integer(&mode, &BigInt::from(3)).unwrap();
        assert_eq!(
            three.apply_automorphism(&sigma, &BigInt::one()).unwrap(),
            three
        );
        // coboundary witness: sigma^k(a) = a * prod c_j^(k e_j)
        for k in [-2i64, 1, 3] {
            let kk = BigInt::from(k);
            let lhs = t2.apply_automorphism(&sigma, &kk).unwrap();
            let n = scaling_coboundary(std::slice::from_ref(&two), &[BigInt::from(2)], &kk);
            let n_rf = RatFunc::from_ratio(&mode, n.numer(), n.denom()).unwrap();
            assert_eq!(lhs, &t2 * &n_rf);
        }
    }

    #[test]
    fn lattice_rank_examples() {
        let v = |s: &[i64]| s.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let r = integer_lattice_rank(&[v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(r.rank, 2);
        assert!(r.kernel.is_empty());

        let r = integer_lattice_rank(&[v(&[2, 4]), v(&[1, 2])]);
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel.len(), 1);
        let k = &r.kernel[0];
        assert_eq!(&k[0] * 2 + &k[1] * 1, BigInt::zero());
        assert_eq!(&k[0] * 4 + &k[1] * 2, BigInt::zero());

        let r = integer_lattice_rank(&[]);
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn genericity_examples() {
        let mode = FieldMode::RationalFunctions { params: 2 };
        let t1 = RatFunc::parameter(&mode, 0).unwrap();
        let t2 = RatFunc::parameter(&mode, 1).unwrap();
        let one = t1.one_like();
        let q_entry = |v: &RatFunc| v.clone();
        // q12 = t1, q13 = t2, q23 = t1 t2: dependency (1, 1, -1)
        let t1t2 = &t1 * &t2;
        let q = vec![
            vec![one.clone(), q_entry(&t1), q_entry(&t2)],
            vec![t1.inverse().unwrap(), one.clone(), q_entry(&t1t2)],
            vec![t2.inverse().unwrap(), t1t2.inverse().unwrap(), one.clone()],
        ];
        let sigma = vec![Automorphism::Identity; 3];
        let report = genericity_check(&q, &sigma).unwrap();
        assert!(!report.generic);
        match &report.certificate {
            GenericityCertificate::Dependency { combination } => {
                // verify by substitution: q12^a * q13^b * q23^c = 1
                let mut prod = one.clone();
                let qs = [&t1, &t2, &t1t2];
                for (qv, a) in qs.iter().zip(combination) {
                    prod = &prod * &qv.pow_int(a).unwrap();
                }
                assert!(prod.is_one());
                let c: Vec<i64> = combination
                    .iter()
                    .map(|v| i64::try_from(v).unwrap())
                    .collect();
                assert!(c == [1, 1, -1] || c == [-1, -1, 1]);
            }
            other => panic!("expected dependency, got {other:?}"),
        }
    }

    #[test]
    fn genericity_standard_basis_generic() {
        let mode = FieldMode::RationalFunctions { params: 3 };
        let t: Vec<RatFunc> = (0..3).map(|k| RatFunc::parameter(&mode, k).unwrap()).collect();
        let one = t[0].one_like();
        let q = vec![
            vec![one.clone(), t[0].clone(), t[1].clone()],
            vec![t[0].inverse().unwrap(), one.clone(), t[2].clone()],
            vec![t[1].inverse().unwrap(), t[2].inverse().unwrap(), one.clone()],
        ];
        let report = genericity_check(&q, &vec![Automorphism::Identity; 3]).unwrap();
        assert!(report.generic);
    }

    #[test]
    fn genericity_q_one_is_dependent() {
        // n = 2 over Q with q12 = 1: the exponent vector is empty/zero,
        // so (1) is a dependency and the ring is not generic.
        let one = Rational::from_int(1);
        let q = vec![vec![one.clone(), one.clone()], vec![one.clone(), one.clone()]];
        let report =
            genericity_check(&q, &[Automorphism::Identity, Automorphism::Identity]).unwrap();
        assert!(!report.generic);
    }

    #[test]
    fn scaling_automorphisms_commute() {
        let mode = FieldMode::RationalFunctions { params: 2 };
        let t1 = RatFunc::parameter(&mode, 0).unwrap();
        let t2 = RatFunc::parameter(&mode, 1).unwrap();
        let s1 = Automorphism::ParamScaling(vec![
            BigRational::new(BigInt::from(2), BigInt::from(1)),
            BigRational::new(BigInt::from(1), BigInt::from(3)),
        ]);
        let s2 = Automorphism::ParamScaling(vec![
            BigRational::new(BigInt::from(-1), BigInt::from(5)),
            BigRational::new(BigInt::from(7), BigInt::from(1)),
        ]);
        let one = BigInt::one();
        for a in [&(&t1 * &t1) + &t2, &t1 * &t2.inverse().unwrap()] {
            let ab = a
                .apply_automorphism(&s2, &one)
                .unwrap()
                .apply_automorphism(&s1, &one)
                .unwrap();
            let ba = a
                .apply_automorphism(&s1, &one)
                .unwrap()
                .apply_automorphism(&s2, &one)
                .unwrap();
            assert_eq!(ab, ba);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn rational_strategy() -> impl Strategy<Value = Rational> {
            (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
        }

        fn fp_strategy() -> impl Strategy<Value = Fp> {
            (0i64..7).prop_map(|v| {
                Fp::from_integer(&FieldMode::PrimeField { p: 7 }, &BigInt::from(v)).unwrap()
            })
        }

        fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
            // small polynomials a + b t1 + c t1^2 over one parameter
            (-4i64..=4, -4i64..=4, -4i64..=4).prop_map(|(a, b, c)| {
                let mode = FieldMode::RationalFunctions { params: 1 };
                let t = RatFunc::parameter(&mode, 0).unwrap();
                let ca = RatFunc::from_integer(&mode, &BigInt::from(a)).unwrap();
                let cb = RatFunc::from_integer(&mode, &BigInt::from(b)).unwrap();
                let cc = RatFunc::from_integer(&mode, &BigInt::from(c)).unwrap();
                &ca + &(&(&cb * &t) + &(&cc * &(&t * &t)))
            })
        }

        macro_rules! field_axioms {
            ($name:ident, $strat:expr) => {
                proptest! {
                    #[test]
                    fn $name(a in $strat, b in $strat, c in $strat) {
                        // associativity and commutativity
                        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                        prop_assert_eq!(a.add(&b), b.add(&a));
                        prop_assert_eq!(a.mul(&b), b.mul(&a));
                        // distributivity
                        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                        // identities and inverses
                        prop_assert_eq!(a.add(&a.zero_like()), a.clone());
                        prop_assert_eq!(a.mul(&a.one_like()), a.clone());
                        prop_assert!(a.add(&a.neg()).is_zero());
                        if !a.is_zero() {
                            prop_assert!(a.mul(&a.inverse().unwrap()).is_one());
                        }
                    }
                }
            };
        }

        field_axioms!(rational_field_axioms, rational_strategy());
        field_axioms!(prime_field_axioms, fp_strategy());
        field_axioms!(ratfunc_field_axioms, ratfunc_strategy());

        proptest! {
            #[test]
            fn leibniz_rule(a in ratfunc_strategy(), b in ratfunc_strategy()) {
                let t = RatFunc::parameter(&FieldMode::RationalFunctions { params: 1 }, 0).unwrap();
                let d = Derivation::new(vec![t]);
                let lhs = d.apply(&a.mul(&b)).unwrap();
                let rhs = d.apply(&a).unwrap().mul(&b).add(&a.mul(&d.apply(&b).unwrap()));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn genericity_brute_force_small_combinations() {
        // exhaustive dependency search with coefficients in [-3, 3] must agree
        let mode = FieldMode::RationalFunctions { params: 2 };
        let t1 = RatFunc::parameter(&mode, 0).unwrap();
        let t2 = RatFunc::parameter(&mode, 1).unwrap();
        let cases: Vec<Vec<RatFunc>> = vec![
            vec![t1.clone(), t2.clone()],
            vec![t1.clone(), t2.clone(), &t1 * &t2],
            vec![t1.clone(), &t1 * &t1],
            vec![&t1 * &t2, t2.inverse().unwrap()],
        ];
        for qs in cases {
            let vectors: Vec<Vec<BigInt>> = qs
                .iter()
                .map(|q| q.as_parameter_monomial().unwrap())
                .collect();
            let lr = integer_lattice_rank(&vectors);
            let independent = lr.kernel.is_empty();
            let mut found = false;
            let m = qs.len();
            let mut combo = vec![-3i64; m];
            'outer: loop {
                if combo.iter().any(|&c| c != 0) {
                    let mut prod = qs[0].one_like();
                    for (q, &c) in qs.iter().zip(&combo) {
                        prod = &prod * &q.pow_int(&BigInt::from(c)).unwrap();
                    }
                    if prod.is_one() {
                        found = true;
                        break 'outer;
                    }
                }
                let mut i = 0;
                loop {
                    if i == m {
                        break 'outer;
                    }
                    combo[i] += 1;
                    if combo[i] <= 3 {
                        break;
                    }
                    combo[i] = -3;
                    i += 1;
                }
            }
            assert_eq!(independent, !found);
        }
    }
}
