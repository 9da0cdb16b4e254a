//! Declaration and validation of a skew PBW / skew quantum ring.
//!
//! A presentation fixes: the number of generators n, how many of them are
//! invertible (the first r), the coefficient mode, the multiparameter matrix
//! q with q_ii = 1 and q_ij·q_ji = 1, one automorphism and one derivation per
//! generator, and the optional degree-≤1 lower terms of the relations
//! x_j x_i = q_ij x_i x_j + L_ji (j > i).
//!
//! Supported regime: derivations only with identity twist (δ_i ≠ 0 forces
//! σ_i = id), Laurent generators only in the quasi-commutative case.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::coeffs::{
    Automorphism, CoeffError, Derivation, FieldMode, Fp, Integer, MPoly, RatFunc, Rational,
    Scalar,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("bad presentation shape: {detail}")]
    BadDimensions { detail: String },
    #[error("q matrix invalid at ({i},{j}): {detail}")]
    QMatrixInvalid { i: usize, j: usize, detail: String },
    #[error("sigma_{i} and sigma_{j} do not commute")]
    SigmaNoncommuting { i: usize, j: usize },
    #[error("Laurent generators (r > 0) require a quasi-commutative bijective presentation")]
    LaurentRequiresQuasiCommutative,
    #[error("delta_{i} is nonzero but sigma_{i} is not the identity")]
    DeltaWithNontrivialSigma { i: usize },
    #[error("lower term for pair ({j},{i}) invalid: {detail}")]
    LowerTermInvalid { j: usize, i: usize, detail: String },
    #[error("presentation is not quasi-commutative")]
    NotQuasiCommutative,
    #[error("scalar extension requires a presentation over Z")]
    NotIntegerMode,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// The degree-≤1 element d₀ + Σ d_k x_k on the right-hand side of a relation
/// x_j x_i = q_ij x_i x_j + (this).
#[derive(Clone, PartialEq, Debug)]
pub struct LowerTerm<K> {
    pub constant: K,
    pub linear: Vec<K>,
}

impl<K: Scalar> LowerTerm<K> {
    pub fn constant_only(c: K, n: usize) -> Self {
        let linear = (0..n).map(|_| c.zero_like()).collect();
        LowerTerm { constant: c, linear }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.iter().all(|c| c.is_zero())
    }
}

/// A validated skew PBW / skew quantum presentation.
#[derive(Clone, Debug)]
pub struct Presentation<K> {
    mode: FieldMode,
    n: usize,
    r: usize,
    q: Vec<Vec<K>>,
    sigma: Vec<Automorphism>,
    delta: Vec<Derivation<K>>,
    lower_terms: BTreeMap<(usize, usize), LowerTerm<K>>,
    quasi_commutative: bool,
    bijective: bool,
}

impl<K: Scalar> PartialEq for Presentation<K> {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode
            && self.n == other.n
            && self.r == other.r
            && self.q == other.q
            && self.sigma == other.sigma
            && self.delta == other.delta
            && self.lower_terms == other.lower_terms
    }
}

impl<K: Scalar> fmt::Display for Presentation<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} over {} (n={}, r={})",
            if self.quasi_commutative {
                "quasi-commutative skew PBW presentation"
            } else {
                "skew PBW presentation"
            },
            self.mode,
            self.n,
            self.r
        )
    }
}

impl<K: Scalar> Presentation<K> {
    /// Validate raw presentation data; returns the presentation with its
    /// computed flags, or a diagnostic pinpointing the violated relation.
    #[allow(clippy::needless_range_loop)] // (i, j, k) tuples index the q matrix
    pub fn validate(
        mode: FieldMode,
        n: usize,
        r: usize,
        q: Vec<Vec<K>>,
        sigma: Vec<Automorphism>,
        delta: Vec<Derivation<K>>,
        lower_terms: BTreeMap<(usize, usize), LowerTerm<K>>,
    ) -> Result<Self, PresentationError> {
        if n == 0 {
            return Err(PresentationError::BadDimensions {
                detail: "n must be at least 1".to_string(),
            });
        }
        if r > n {
            return Err(PresentationError::BadDimensions {
                detail: format!("r = {r} exceeds n = {n}"),
            });
        }
        if q.len() != n || q.iter().any(|row| row.len() != n) {
            return Err(PresentationError::BadDimensions {
                detail: format!("q must be {n}x{n}"),
            });
        }
        if sigma.len() != n {
            return Err(PresentationError::BadDimensions {
                detail: format!("expected {n} automorphisms, got {}", sigma.len()),
            });
        }
        if delta.len() != n {
            return Err(PresentationError::BadDimensions {
                detail: format!("expected {n} derivations, got {}", delta.len()),
            });
        }
        for (i, row) in q.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.mode() != mode {
                    return Err(PresentationError::QMatrixInvalid {
                        i: i + 1,
                        j: j + 1,
                        detail: format!("coefficient mode {} does not match {}", v.mode(), mode),
                    });
                }
            }
        }
        for s in &sigma {
            s.validate_for_mode(&mode)?;
        }
        // q_ii = 1 and q_ij q_ji = 1; every multiparameter is a unit.
        for i in 0..n {
            if !q[i][i].is_one() {
                return Err(PresentationError::QMatrixInvalid {
                    i: i + 1,
                    j: i + 1,
                    detail: format!("q_ii must be 1, found {}", q[i][i]),
                });
            }
            for j in 0..n {
                if !q[i][j].is_unit() {
                    return Err(PresentationError::QMatrixInvalid {
                        i: i + 1,
                        j: j + 1,
                        detail: format!("q entry {} is not a unit", q[i][j]),
                    });
                }
                if !q[i][j].mul(&q[j][i]).is_one() {
                    return Err(PresentationError::QMatrixInvalid {
                        i: i + 1,
                        j: j + 1,
                        detail: format!(
                            "q_ij*q_ji must be 1, found {} * {}",
                            q[i][j], q[j][i]
                        ),
                    });
                }
            }
        }
        // Overlap consistency for generator triples: resolving x_k x_j x_i in
        // the two possible orders forces
        //   q_jk·σ_j(q_ik)·q_ij = σ_k(q_ij)·q_ik·σ_i(q_jk)  for i < j < k.
        // Trivial automorphisms satisfy this identically; with scalings it is
        // a genuine constraint on the multiparameters.
        let one_int = BigInt::from(1);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let lhs = q[j][k]
                        .mul(&q[i][k].apply_automorphism(&sigma[j], &one_int)?)
                        .mul(&q[i][j]);
                    let rhs = q[i][j]
                        .apply_automorphism(&sigma[k], &one_int)?
                        .mul(&q[i][k])
                        .mul(&q[j][k].apply_automorphism(&sigma[i], &one_int)?);
                    if lhs != rhs {
                        return Err(PresentationError::QMatrixInvalid {
                            i: i + 1,
                            j: j + 1,
                            detail: format!(
                                "triple ({}, {}, {}) breaks associativity: q_jk*s_j(q_ik)*q_ij = {} but s_k(q_ij)*q_ik*s_i(q_jk) = {}",
                                i + 1,
                                j + 1,
                                k + 1,
                                lhs,
                                rhs
                            ),
                        });
                    }
                }
            }
        }
        for (i, d) in delta.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            if d.coeffs().len() != mode.params() {
                return Err(PresentationError::BadDimensions {
                    detail: format!(
                        "delta_{} has {} partial coefficients for {} parameters",
                        i + 1,
                        d.coeffs().len(),
                        mode.params()
                    ),
                });
            }
            if !sigma[i].is_identity() {
                return Err(PresentationError::DeltaWithNontrivialSigma { i: i + 1 });
            }
        }
        for (&(j, i), lt) in &lower_terms {
            if j <= i || j >= n {
                return Err(PresentationError::LowerTermInvalid {
                    j: j + 1,
                    i: i + 1,
                    detail: "pair must satisfy n >= j > i >= 1".to_string(),
                });
            }
            if lt.linear.len() != n {
                return Err(PresentationError::LowerTermInvalid {
                    j: j + 1,
                    i: i + 1,
                    detail: format!("linear part must have {n} entries"),
                });
            }
        }
        // Scalings, Frobenius and identities commute pairwise, so the
        // alpha-relations over commutative coefficients hold structurally.
        let quasi_commutative = delta.iter().all(Derivation::is_zero)
            && lower_terms.values().all(LowerTerm::is_zero);
        // sigmas of the supported shapes are bijective and all q are units.
        let bijective = true;
        if r > 0 && !quasi_commutative {
            return Err(PresentationError::LaurentRequiresQuasiCommutative);
        }
        let lower_terms: BTreeMap<_, _> = lower_terms
            .into_iter()
            .filter(|(_, lt)| !lt.is_zero())
            .collect();
        Ok(Presentation {
            mode,
            n,
            r,
            q,
            sigma,
            delta,
            lower_terms,
            quasi_commutative,
            bijective,
        })
    }

    pub fn mode(&self) -> &FieldMode {
        &self.mode
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn laurent_count(&self) -> usize {
        self.r
    }

    pub fn is_quasi_commutative(&self) -> bool {
        self.quasi_commutative
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    pub fn q(&self, i: usize, j: usize) -> &K {
        &self.q[i][j]
    }

    pub fn q_matrix(&self) -> &[Vec<K>] {
        &self.q
    }

    pub fn sigma(&self, i: usize) -> &Automorphism {
        &self.sigma[i]
    }

    pub fn sigmas(&self) -> &[Automorphism] {
        &self.sigma
    }

    pub fn delta(&self, i: usize) -> &Derivation<K> {
        &self.delta[i]
    }

    pub fn lower_term(&self, j: usize, i: usize) -> Option<&LowerTerm<K>> {
        self.lower_terms.get(&(j, i))
    }

    pub fn lower_terms(&self) -> &BTreeMap<(usize, usize), LowerTerm<K>> {
        &self.lower_terms
    }

    /// True when every automorphism is the identity map (the hot path for
    /// closed-form coefficient transport).
    pub fn all_sigma_trivial(&self) -> bool {
        self.sigma.iter().all(Automorphism::is_identity)
    }

    /// A coefficient 1 carrying this presentation's mode data.
    pub fn one_coeff(&self) -> K {
        self.q[0][0].one_like()
    }

    /// A coefficient 0 carrying this presentation's mode data.
    pub fn zero_coeff(&self) -> K {
        self.q[0][0].zero_like()
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }

    /// The iterated skew polynomial form: stage j acts on coefficients by
    /// σ_j and maps the earlier generator z_i (i < j) to q_ij·z_i.
    pub fn iterated_form(&self) -> Result<IteratedForm<K>, PresentationError> {
        if !self.quasi_commutative {
            return Err(PresentationError::NotQuasiCommutative);
        }
        let stages = (0..self.n)
            .map(|j| IteratedStage {
                sigma: self.sigma[j].clone(),
                z_action: (0..j).map(|i| self.q[i][j].clone()).collect(),
            })
            .collect();
        Ok(IteratedForm { stages })
    }

    /// The associated graded presentation: derivations and lower terms are
    /// dropped, leaving a quasi-commutative presentation with the same
    /// multiparameters and automorphisms.
    pub fn associated_graded(&self) -> Presentation<K> {
        Presentation {
            mode: self.mode.clone(),
            n: self.n,
            r: self.r,
            q: self.q.clone(),
            sigma: self.sigma.clone(),
            delta: (0..self.n).map(|_| Derivation::zero()).collect(),
            lower_terms: BTreeMap::new(),
            quasi_commutative: true,
            bijective: self.bijective,
        }
    }
}

/// One stage of the iterated skew polynomial form.
#[derive(Clone, Debug)]
pub struct IteratedStage<K> {
    /// Action on coefficients.
    pub sigma: Automorphism,
    /// z_action[i] is the scalar q_ij with which stage j rescales z_i, i < j.
    pub z_action: Vec<K>,
}

/// The tower R[z₁;θ₁]…[zₙ;θₙ] attached to a quasi-commutative presentation.
#[derive(Clone, Debug)]
pub struct IteratedForm<K> {
    pub stages: Vec<IteratedStage<K>>,
}

/// Transport a presentation over ℤ to the same presentation over ℚ.
pub fn extend_scalars(
    p: &Presentation<Integer>,
) -> Result<Presentation<Rational>, PresentationError> {
    if *p.mode() != FieldMode::Integer {
        return Err(PresentationError::NotIntegerMode);
    }
    let map = |c: &Integer| Rational(num_rational::BigRational::from(c.0.clone()));
    let q = p
        .q_matrix()
        .iter()
        .map(|row| row.iter().map(map).collect())
        .collect();
    let lower = p
        .lower_terms()
        .iter()
        .map(|(&k, lt)| {
            (
                k,
                LowerTerm {
                    constant: map(&lt.constant),
                    linear: lt.linear.iter().map(map).collect(),
                },
            )
        })
        .collect();
    Presentation::validate(
        FieldMode::Rational,
        p.n(),
        p.laurent_count(),
        q,
        p.sigmas().to_vec(),
        (0..p.n()).map(|_| Derivation::zero()).collect(),
        lower,
    )
}

// Canned families used by the CLI defaults and throughout the tests.

/// Quasi-commutative presentation with trivial automorphisms and the given
/// upper multiparameters (row-major over pairs i < j); lower entries are
/// filled with inverses.
#[allow(clippy::needless_range_loop)] // (i, j) pairs index the q matrix
pub fn quantum_affine<K: Scalar>(
    mode: FieldMode,
    n: usize,
    r: usize,
    upper: &[K],
) -> Result<Presentation<K>, PresentationError> {
    assert_eq!(upper.len(), n * (n - 1) / 2, "need one q per pair i < j");
    let one = match upper.first() {
        Some(c) => c.one_like(),
        None => K::from_integer(&mode, &BigInt::from(1))?,
    };
    let mut q: Vec<Vec<K>> = (0..n)
        .map(|_| (0..n).map(|_| one.clone()).collect())
        .collect();
    let mut it = upper.iter();
    for i in 0..n {
        for j in i + 1..n {
            let v = it.next().expect("length checked").clone();
            q[j][i] = v.inverse()?;
            q[i][j] = v;
        }
    }
    Presentation::validate(
        mode,
        n,
        r,
        q,
        vec![Automorphism::Identity; n],
        (0..n).map(|_| Derivation::zero()).collect(),
        BTreeMap::new(),
    )
}

/// The quantum plane: n = 2, r = 0, x₂x₁ = q₁₂x₁x₂.
pub fn quantum_plane<K: Scalar>(
    mode: FieldMode,
    q12: K,
) -> Result<Presentation<K>, PresentationError> {
    quantum_affine(mode, 2, 0, &[q12])
}

/// The n-multiparametric quantum torus (all generators invertible).
pub fn quantum_torus<K: Scalar>(
    mode: FieldMode,
    n: usize,
    upper: &[K],
) -> Result<Presentation<K>, PresentationError> {
    quantum_affine(mode, n, n, upper)
}

/// Default torus over ℚ with q_ij = 2 for every pair; used by CLI commands
/// that need a concrete completion but were not given a presentation.
pub fn default_torus(n: usize) -> Presentation<Rational> {
    let count = n * (n - 1) / 2;
    let two = Rational::from_int(2);
    let upper = vec![two; count];
    quantum_torus(FieldMode::Rational, n, &upper).expect("default torus is valid")
}

/// The quantum Weyl algebra: x₂x₁ = q·x₁x₂ + 1.
pub fn quantum_weyl<K: Scalar>(
    mode: FieldMode,
    q12: K,
) -> Result<Presentation<K>, PresentationError> {
    let one = q12.one_like();
    let mut lower = BTreeMap::new();
    lower.insert((1usize, 0usize), LowerTerm::constant_only(one.clone(), 2));
    let q = vec![
        vec![one.clone(), q12.clone()],
        vec![q12.inverse()?, one.clone()],
    ];
    Presentation::validate(
        mode,
        2,
        0,
        q,
        vec![Automorphism::Identity; 2],
        vec![Derivation::zero(), Derivation::zero()],
        lower,
    )
}

/// The first Weyl algebra A₁ over ℚ(t): one generator x with x·c(t) = c(t)·x + c'(t).
pub fn weyl_a1() -> Presentation<RatFunc> {
    let mode = FieldMode::RationalFunctions { params: 1 };
    let one = RatFunc::from_poly(MPoly::one(1));
    let q = vec![vec![one.clone()]];
    Presentation::validate(
        mode,
        1,
        0,
        q,
        vec![Automorphism::Identity],
        vec![Derivation::new(vec![one])],
        BTreeMap::new(),
    )
    .expect("Weyl algebra data is valid")
}

/// 𝔽ₚ quantum plane helper for tests and examples.
pub fn fp_quantum_plane(p: u64, q12: u64) -> Result<Presentation<Fp>, PresentationError> {
    let mode = FieldMode::PrimeField { p };
    let q = Fp::from_integer(&mode, &BigInt::from(q12))?;
    quantum_plane(mode, q)
}
