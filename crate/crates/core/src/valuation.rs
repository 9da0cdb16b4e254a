//! The leading-exponent valuation ν into Γ = ℤⁿ.
//!
//! ν(f) is the least support exponent of f under the ambient monomial order,
//! with ν(0) = ∞. Coefficients never contribute (ν(K*) = 0), so ν(fg) =
//! ν(f) + ν(g) exactly: leading coefficients are units over a field and the
//! quasi-commutative leading terms cannot cancel.
//!
//! Classification follows the division-ring picture: every nonzero element
//! with ν = 0 is a unit of the ring of fractions / completion, so the ν = 0
//! class is the unit class. The `InLambdaOnly` variant is kept for the
//! valuation-ring partition Λ = U ⊔ W ⊔ (rest) but is unreachable for these
//! valuations.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coeffs::Scalar;
use crate::elements::Element;
use crate::exponents::{ExponentVector, MonomialOrder, OrderError};
use crate::lattice;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ValuationError {
    #[error("residue requires nonnegative valuation, found {nu}")]
    NegativeValuation { nu: ExponentVector },
    #[error("comparison matrix must have full row rank")]
    RankDeficient,
    #[error("matrix must be square")]
    NonSquare,
    #[error("comparison matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A value of the valuation: a point of Γ = ℤⁿ or the distinguished ∞.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Value {
    Finite(ExponentVector),
    Infinity,
}

impl Value {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinity)
    }

    pub fn finite(&self) -> Option<&ExponentVector> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Infinity => None,
        }
    }

    /// Monoid addition on Γ ∪ {∞}: ∞ absorbs.
    pub fn add(&self, other: &Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a.add(b)),
            _ => Value::Infinity,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(v) => write!(f, "{v}"),
            Value::Infinity => write!(f, "infinity"),
        }
    }
}

/// A valuation datum: the ambient monomial order defining
/// ν(f) = least element of supp f, with ν(0) = ∞.
#[derive(Clone, Debug)]
pub struct ValuationSpec {
    pub order: MonomialOrder,
}

impl ValuationSpec {
    pub fn new(order: MonomialOrder) -> Self {
        ValuationSpec { order }
    }

    pub fn val<K: Scalar>(&self, f: &Element<K>) -> Result<Value, ValuationError> {
        val(&self.order, f)
    }

    pub fn classify<K: Scalar>(&self, f: &Element<K>) -> Result<ValuationClass, ValuationError> {
        classify(&self.order, f)
    }

    pub fn residue<K: Scalar>(&self, f: &Element<K>) -> Result<K, ValuationError> {
        residue(&self.order, f)
    }
}

/// A comparison datum between two valuations: the integer matrix τ mapping
/// Γ₁ = ℤⁿ onto Γ₂ = ℤᵏ.
#[derive(Clone, Debug)]
pub struct ValuationComparison {
    pub tau: Vec<Vec<BigInt>>,
}

impl ValuationComparison {
    pub fn new(tau: Vec<Vec<BigInt>>) -> Self {
        ValuationComparison { tau }
    }

    pub fn check(
        &self,
        ord1: &MonomialOrder,
        ord2: &MonomialOrder,
        cfg: &ComparisonConfig,
    ) -> Result<ComparisonReport, ValuationError> {
        compare_valuations(ord1, ord2, &self.tau, cfg)
    }

    /// τ has maximal rank exactly when it lies in GL(n,ℤ).
    pub fn maximal_rank(&self) -> Result<bool, ValuationError> {
        maximal_rank(&self.tau)
    }
}

/// ν(f): the least support exponent under `ord`; ∞ for the zero element.
pub fn val<K: Scalar>(ord: &MonomialOrder, f: &Element<K>) -> Result<Value, ValuationError> {
    let mut min: Option<&ExponentVector> = None;
    for e in f.support().keys() {
        match min {
            None => min = Some(e),
            Some(m) => {
                if ord.compare(e, m)? == Ordering::Less {
                    min = Some(e);
                }
            }
        }
    }
    Ok(match min {
        Some(m) => Value::Finite(m.clone()),
        None => Value::Infinity,
    })
}

/// Membership classes of the valuation ring Λ = {ν ≥ 0} and its parts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ValuationClass {
    Zero,
    /// ν = 0: units of the division ring of fractions / completion.
    UnitRing,
    /// ν > 0: the maximal ideal W.
    InW,
    /// In Λ but in neither U nor W; unreachable for these valuations.
    InLambdaOnly,
    /// ν < 0.
    OutsideLambda,
}

impl fmt::Display for ValuationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ValuationClass::Zero => "zero",
            ValuationClass::UnitRing => "unit_ring",
            ValuationClass::InW => "in_W",
            ValuationClass::InLambdaOnly => "in_lambda_only",
            ValuationClass::OutsideLambda => "outside_lambda",
        };
        write!(f, "{s}")
    }
}

pub fn classify<K: Scalar>(
    ord: &MonomialOrder,
    f: &Element<K>,
) -> Result<ValuationClass, ValuationError> {
    match val(ord, f)? {
        Value::Infinity => Ok(ValuationClass::Zero),
        Value::Finite(nu) => {
            let zero = ExponentVector::zero(ord.n());
            Ok(match ord.compare(&nu, &zero)? {
                Ordering::Equal => ValuationClass::UnitRing,
                Ordering::Greater => ValuationClass::InW,
                Ordering::Less => ValuationClass::OutsideLambda,
            })
        }
    }
}

/// Residue of f in Λ/W ≅ K: the coefficient at exponent 0 (zero when ν > 0).
pub fn residue<K: Scalar>(ord: &MonomialOrder, f: &Element<K>) -> Result<K, ValuationError> {
    if let Value::Finite(nu) = val(ord, f)? {
        let zero = ExponentVector::zero(ord.n());
        if ord.compare(&nu, &zero)? == Ordering::Less {
            return Err(ValuationError::NegativeValuation { nu });
        }
    }
    Ok(f.coeff_at(&ExponentVector::zero(f.presentation().n()))
        .cloned()
        .unwrap_or_else(|| f.presentation().zero_coeff()))
}

/// τ applied to a lattice point.
fn apply_tau(tau: &[Vec<BigInt>], g: &ExponentVector) -> ExponentVector {
    ExponentVector::new(
        tau.iter()
            .map(|row| row.iter().zip(g.entries()).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

/// How a sampled support set fails the comparison, if it does.
#[derive(Clone, Debug)]
pub enum ComparisonCounterexample {
    /// τ(ν₁(f)) ≠ ν₂(f) on this support.
    ValueMismatch {
        support: Vec<ExponentVector>,
        nu1: ExponentVector,
        tau_nu1: ExponentVector,
        nu2: ExponentVector,
    },
    /// g <₁ h but τg >₂ τh.
    OrderFlip {
        g: ExponentVector,
        h: ExponentVector,
    },
}

/// Sampling parameters for [`compare_valuations`]; the seed makes the
/// reported corpus reproducible.
#[derive(Clone, Copy, Debug)]
pub struct ComparisonConfig {
    pub samples: usize,
    pub seed: u64,
    pub max_terms: usize,
    pub coordinate_bound: i64,
}

impl Default for ComparisonConfig {
    fn default() -> Self {
        ComparisonConfig {
            samples: 200,
            seed: 0xC0FFEE,
            max_terms: 4,
            coordinate_bound: 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub holds: bool,
    pub counterexample: Option<ComparisonCounterexample>,
    /// The sampled supports (for the value check) and pairs (for the order
    /// check), recorded for reproducibility.
    pub corpus_supports: Vec<Vec<ExponentVector>>,
    pub corpus_pairs: Vec<(ExponentVector, ExponentVector)>,
    /// Whether τ maps ℤⁿ onto ℤᵏ (gcd of maximal minors is 1).
    pub surjective: bool,
}

/// Check τ∘ν₁ = ν₂ on a sampled corpus, where ν₁ is the least-exponent
/// valuation under `ord1` and ν₂ the pushforward min under `ord2` of τ
/// applied to the support; also checks order preservation on sampled pairs.
pub fn compare_valuations(
    ord1: &MonomialOrder,
    ord2: &MonomialOrder,
    tau: &[Vec<BigInt>],
    cfg: &ComparisonConfig,
) -> Result<ComparisonReport, ValuationError> {
    let k = tau.len();
    let n = ord1.n();
    if k == 0 || tau.iter().any(|r| r.len() != n) || ord2.n() != k {
        return Err(ValuationError::ShapeMismatch {
            rows: k,
            cols: tau.first().map_or(0, |r| r.len()),
            expected_rows: ord2.n(),
            expected_cols: n,
        });
    }
    if k > n || lattice::rank(tau) != k {
        return Err(ValuationError::RankDeficient);
    }
    let surjective = lattice::minor_gcd(tau).is_one();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let b = cfg.coordinate_bound;
    let random_vec = |rng: &mut ChaCha8Rng| {
        ExponentVector::new(
            (0..n)
                .map(|_| BigInt::from(rng.gen_range(-b..=b)))
                .collect(),
        )
    };
    let mut corpus_supports = Vec::new();
    let mut corpus_pairs = Vec::new();
    let mut counterexample = None;
    for _ in 0..cfg.samples {
        let terms = rng.gen_range(1..=cfg.max_terms);
        let mut support: Vec<ExponentVector> = Vec::new();
        while support.len() < terms {
            let v = random_vec(&mut rng);
            if !support.contains(&v) {
                support.push(v);
            }
        }
        corpus_supports.push(support.clone());
        if counterexample.is_some() {
            continue;
        }
        // nu1 = min under ord1, nu2 = min of tau(support) under ord2
        let mut nu1 = support[0].clone();
        for e in &support[1..] {
            if ord1.compare(e, &nu1)? == Ordering::Less {
                nu1 = e.clone();
            }
        }
        let mut nu2 = apply_tau(tau, &support[0]);
        for e in &support[1..] {
            let te = apply_tau(tau, e);
            if ord2.compare(&te, &nu2)? == Ordering::Less {
                nu2 = te;
            }
        }
        let tau_nu1 = apply_tau(tau, &nu1);
        if tau_nu1 != nu2 {
            counterexample = Some(ComparisonCounterexample::ValueMismatch {
                support,
                nu1,
                tau_nu1,
                nu2,
            });
        }
    }
    for _ in 0..cfg.samples {
        let g = random_vec(&mut rng);
        let h = random_vec(&mut rng);
        corpus_pairs.push((g.clone(), h.clone()));
        if counterexample.is_some() {
            continue;
        }
        if ord1.compare(&g, &h)? == Ordering::Less {
            let (tg, th) = (apply_tau(tau, &g), apply_tau(tau, &h));
            if ord2.compare(&tg, &th)? == Ordering::Greater {
                counterexample = Some(ComparisonCounterexample::OrderFlip { g, h });
            }
        }
    }
    Ok(ComparisonReport {
        holds: counterexample.is_none(),
        counterexample,
        corpus_supports,
        corpus_pairs,
        surjective,
    })
}

/// Maximal rank of the comparison τ: true exactly when τ ∈ GL(n,ℤ).
pub fn maximal_rank(tau: &[Vec<BigInt>]) -> Result<bool, ValuationError> {
    let n = tau.len();
    if n == 0 || tau.iter().any(|r| r.len() != n) {
        return Err(ValuationError::NonSquare);
    }
    Ok(lattice::det(tau).abs().is_one())
}

/// Result of the Archimedean power-bound check on the rank-1 projection of
/// an order (its first matrix row).
#[derive(Clone, Debug)]
pub enum PowerBoundReport {
    /// The projection is faithful (no positive element projects to 0):
    /// λ_i = inf ν'(Wⁱ) scales linearly and elements of finite projected
    /// valuation v leave Wⁱ as soon as i·λ₁ > v.
    Archimedean {
        lambda1: BigRational,
        /// λ_1..λ_imax, each equal to i·λ₁.
        lambda: Vec<BigRational>,
        /// (k, i, member) for the monomial with exponent k·m₀ against Wⁱ.
        exclusions: Vec<(u64, u64, bool)>,
        /// Every table entry satisfies: member ⇔ k ≥ i.
        consistent: bool,
    },
    /// The first row vanishes on a positive element (witness), so
    /// inf ν'(W) = 0 and the hypothesis fails; reported, not an error.
    HypothesisViolated { witness: ExponentVector },
}

pub fn power_value_bound(
    ord: &MonomialOrder,
    imax: u64,
) -> Result<PowerBoundReport, ValuationError> {
    let m0 = ord
        .min_positive()
        .ok_or(OrderError::NoMinimalElement)?
        .clone();
    let first_row = &ord.matrix()[0];
    let project = |g: &ExponentVector| -> BigRational {
        first_row
            .iter()
            .zip(g.entries())
            .map(|(w, e)| w * BigRational::from(e.clone()))
            .sum()
    };
    let lambda1 = project(&m0);
    if lambda1.is_zero() {
        return Ok(PowerBoundReport::HypothesisViolated { witness: m0 });
    }
    debug_assert!(lambda1.is_positive());
    let mut lambda = Vec::new();
    for i in 1..=imax {
        // inf of the projection over W^i = {g >= i*m0} is attained at i*m0
        lambda.push(project(&m0.scaled(&BigInt::from(i))));
    }
    let mut exclusions = Vec::new();
    let mut consistent = true;
    for k in 0..=imax {
        let g = m0.scaled(&BigInt::from(k));
        for i in 1..=imax {
            let member = if k == 0 {
                false
            } else {
                ord.cone_power_membership(&g, i)?
            };
            if member != (k >= i) {
                consistent = false;
            }
            exclusions.push((k, i, member));
        }
    }
    Ok(PowerBoundReport::Archimedean {
        lambda1,
        lambda,
        exclusions,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{FieldMode, Rational};
    use crate::elements::Element;
    use crate::presentation::{quantum_plane, quantum_torus};
    use num_rational::BigRational;
    use std::sync::Arc;

    fn rat(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn plane() -> Arc<crate::presentation::Presentation<Rational>> {
        quantum_plane(FieldMode::Rational, rat(2)).unwrap().into_arc()
    }

    fn ev(e: &[i64]) -> ExponentVector {
        ExponentVector::from_i64(e)
    }

    #[test]
    fn val_examples() {
        let p = plane();
        let ord = MonomialOrder::lex(2);
        let f = Element::generator(&p, 0)
            .unwrap()
            .checked_add(&Element::generator(&p, 1).unwrap())
            .unwrap();
        assert_eq!(val(&ord, &f).unwrap(), Value::Finite(ev(&[0, 1])));
        assert_eq!(
            val(&ord, &Element::one(&p)).unwrap(),
            Value::Finite(ev(&[0, 0]))
        );
        assert_eq!(val(&ord, &Element::zero(&p)).unwrap(), Value::Infinity);
    }

    #[test]
    fn classify_examples() {
        let ord = MonomialOrder::lex(2);
        let p = plane();
        let x1 = Element::generator(&p, 0).unwrap();
        assert_eq!(classify(&ord, &x1).unwrap(), ValuationClass::InW);
        let three_plus = Element::constant(&p, rat(3)).checked_add(&x1).unwrap();
        assert_eq!(
            classify(&ord, &three_plus).unwrap(),
            ValuationClass::UnitRing
        );
        let torus = quantum_torus(FieldMode::Rational, 2, &[rat(2)])
            .unwrap()
            .into_arc();
        let x1_inv = Element::generator_inverse(&torus, 0).unwrap();
        assert_eq!(
            classify(&ord, &x1_inv).unwrap(),
            ValuationClass::OutsideLambda
        );
        assert_eq!(
            classify(&ord, &Element::zero(&p)).unwrap(),
            ValuationClass::Zero
        );
    }

    #[test]
    fn residue_examples() {
        let ord = MonomialOrder::lex(2);
        let p = plane();
        let x1 = Element::generator(&p, 0).unwrap();
        let x2 = Element::generator(&p, 1).unwrap();
        let f = Element::constant(&p, rat(3)).checked_add(&x1).unwrap();
        assert_eq!(residue(&ord, &f).unwrap(), rat(3));
        assert_eq!(residue(&ord, &x1).unwrap(), rat(0));
        // residue is multiplicative on Λ: (2+x1)(3+x2) has residue 6
        let a = Element::constant(&p, rat(2)).checked_add(&x1).unwrap();
        let b = Element::constant(&p, rat(3)).checked_add(&x2).unwrap();
        let prod = a.checked_mul(&b).unwrap();
        assert_eq!(residue(&ord, &prod).unwrap(), rat(6));
        // negative valuation is rejected
        let torus = quantum_torus(FieldMode::Rational, 2, &[rat(2)])
            .unwrap()
            .into_arc();
        let x1_inv = Element::generator_inverse(&torus, 0).unwrap();
        assert!(matches!(
            residue(&ord, &x1_inv),
            Err(ValuationError::NegativeValuation { .. })
        ));
    }

    #[test]
    fn compare_valuations_projection() {
        let ord1 = MonomialOrder::lex(2);
        let ord2 = MonomialOrder::lex(1);
        let tau = vec![vec![BigInt::from(1), BigInt::from(0)]];
        let report =
            compare_valuations(&ord1, &ord2, &tau, &ComparisonConfig::default()).unwrap();
        assert!(report.holds, "{:?}", report.counterexample);
        assert!(report.surjective);

        // identity always holds
        let tau_id = vec![
            vec![BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(1)],
        ];
        let report =
            compare_valuations(&ord1, &ord1, &tau_id, &ComparisonConfig::default()).unwrap();
        assert!(report.holds);

        // second-coordinate projection against lex flips somewhere
        let tau_bad = vec![vec![BigInt::from(0), BigInt::from(1)]];
        let report =
            compare_valuations(&ord1, &ord2, &tau_bad, &ComparisonConfig::default()).unwrap();
        assert!(!report.holds);
        assert!(report.counterexample.is_some());
    }

    #[test]
    fn compare_valuations_rejects_rank_deficient() {
        let ord1 = MonomialOrder::lex(2);
        let ord2 = MonomialOrder::lex(2);
        let tau = vec![
            vec![BigInt::from(1), BigInt::from(1)],
            vec![BigInt::from(2), BigInt::from(2)],
        ];
        assert!(matches!(
            compare_valuations(&ord1, &ord2, &tau, &ComparisonConfig::default()),
            Err(ValuationError::RankDeficient)
        ));
    }

    #[test]
    fn maximal_rank_examples() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect()
        };
        assert!(maximal_rank(&m(&[&[1, 0], &[0, 1]])).unwrap());
        assert!(maximal_rank(&m(&[&[1, 1], &[0, 1]])).unwrap());
        assert!(!maximal_rank(&m(&[&[2, 0], &[0, 1]])).unwrap());
        assert!(matches!(
            maximal_rank(&m(&[&[1, 0]])),
            Err(ValuationError::NonSquare)
        ));
    }

    #[test]
    fn power_bound_rank_one() {
        let ord = MonomialOrder::lex(1);
        match power_value_bound(&ord, 10).unwrap() {
            PowerBoundReport::Archimedean {
                lambda1,
                lambda,
                consistent,
                ..
            } => {
                assert_eq!(lambda1, BigRational::from(BigInt::from(1)));
                let expected: Vec<BigRational> = (1..=10)
                    .map(|i| BigRational::from(BigInt::from(i)))
                    .collect();
                assert_eq!(lambda, expected);
                assert!(consistent);
            }
            other => panic!("expected Archimedean report, got {other:?}"),
        }
    }

    #[test]
    fn power_bound_lex2_violates_hypothesis() {
        let ord = MonomialOrder::lex(2);
        match power_value_bound(&ord, 5).unwrap() {
            PowerBoundReport::HypothesisViolated { witness } => {
                assert_eq!(witness, ev(&[0, 1]));
            }
            other => panic!("expected hypothesis violation, got {other:?}"),
        }
    }

    #[test]
    fn spec_and_comparison_wrappers() {
        let spec = ValuationSpec::new(MonomialOrder::lex(2));
        let p = plane();
        let x1 = Element::generator(&p, 0).unwrap();
        assert_eq!(spec.val(&x1).unwrap(), Value::Finite(ev(&[1, 0])));
        assert_eq!(spec.classify(&x1).unwrap(), ValuationClass::InW);
        assert_eq!(spec.residue(&x1).unwrap(), rat(0));
        let cmp = ValuationComparison::new(vec![vec![BigInt::from(1), BigInt::from(0)]]);
        assert!(cmp
            .check(
                &MonomialOrder::lex(2),
                &MonomialOrder::lex(1),
                &ComparisonConfig::default()
            )
            .unwrap()
            .holds);
        assert!(cmp.maximal_rank().is_err(), "non-square tau");
        let cone = MonomialOrder::lex(2).positive_cone();
        assert!(cone.contains(&ev(&[1, -5])).unwrap());
        assert!(cone.power_contains(&ev(&[1, -5]), 4).unwrap());
        assert_eq!(cone.factor(&ev(&[0, 2]), 2).unwrap().len(), 2);
    }

    #[test]
    fn classify_partitions_and_lambda_is_closed() {
        use crate::testkit;
        use rand::SeedableRng;
        let torus = quantum_torus(FieldMode::Rational, 2, &[rat(2)])
            .unwrap()
            .into_arc();
        let ord = MonomialOrder::lex(2);
        let pool = [rat(1), rat(-1), rat(2), Rational::new(1, 2)];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let in_lambda = |f: &Element<Rational>| -> bool {
            matches!(
                classify(&ord, f).unwrap(),
                ValuationClass::Zero | ValuationClass::UnitRing | ValuationClass::InW
            )
        };
        for _ in 0..300 {
            let f = testkit::random_element(&mut rng, &torus, 3, 3, &pool);
            // exactly one class
            let class = classify(&ord, &f).unwrap();
            if f.is_zero() {
                assert_eq!(class, ValuationClass::Zero);
            } else {
                assert_ne!(class, ValuationClass::Zero);
            }
            let g = testkit::random_element(&mut rng, &torus, 3, 3, &pool);
            if in_lambda(&f) && in_lambda(&g) {
                assert!(in_lambda(&f.checked_add(&g).unwrap()), "Lambda closed under +");
                assert!(in_lambda(&f.checked_mul(&g).unwrap()), "Lambda closed under *");
            }
        }
    }
}
