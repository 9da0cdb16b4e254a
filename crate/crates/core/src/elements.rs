//! Normal-form arithmetic for ring elements.
//!
//! Elements are finite left-coefficient combinations Σ λ_u x^u stored in
//! canonical form (no zero coefficients, exponents legal for the ring's
//! Laurent mask). Multiplication has two paths:
//!
//! * quasi-commutative presentations use closed-form coefficient transport:
//!   λx^u · μx^v = λ·σ^u(μ)·Q(u,v)·x^{u+v}, where Q collects the exact
//!   q-factors from moving x^v across x^u one generator letter at a time;
//! * general presentations rewrite x^u·r and x_j·x_i step by step using the
//!   derivations and lower terms, with the degree of every correction term
//!   strictly below the main term (checked on every product).
//!
//! [`normalize_word`] is an independent brute-force oracle: it reduces a raw
//! word one adjacent pair at a time and is used as ground truth for the
//! closed-form and rewriting paths.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::coeffs::{CoeffError, Scalar};
use crate::exponents::ExponentVector;
use crate::presentation::Presentation;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ElementError {
    #[error("elements belong to different presentations")]
    PresentationMismatch,
    #[error("exponent dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("negative exponent at non-Laurent position {index}")]
    IllegalExponent { index: usize },
    #[error("inverse letter for generator x{index} (only the first {laurent} are invertible)")]
    IllegalInverse { index: usize, laurent: usize },
    #[error("operation requires a quasi-commutative presentation")]
    NotQuasiCommutative,
    #[error("element is not invertible: {reason}")]
    NotInvertible { reason: String },
    #[error("exponent too large for letterwise transport")]
    ExponentTooLarge,
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// A ring element in normal form over a fixed presentation.
#[derive(Clone, Debug)]
pub struct Element<K> {
    presentation: Arc<Presentation<K>>,
    support: BTreeMap<ExponentVector, K>,
}

impl<K: Scalar> PartialEq for Element<K> {
    fn eq(&self, other: &Self) -> bool {
        self.same_presentation(other) && self.support == other.support
    }
}

impl<K: Scalar> fmt::Display for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.support.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*x^{e}")?;
        }
        Ok(())
    }
}

/// A letter of a raw word: a coefficient or a signed generator.
#[derive(Clone, Debug)]
pub enum Letter<K> {
    Coeff(K),
    Gen { index: usize, inverse: bool },
}

/// A raw product of letters, the input of the word-reduction oracle.
#[derive(Clone, Debug, Default)]
pub struct Word<K>(pub Vec<Letter<K>>);

impl<K> Word<K> {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn coeff(mut self, c: K) -> Self {
        self.0.push(Letter::Coeff(c));
        self
    }

    pub fn gen(mut self, index: usize) -> Self {
        self.0.push(Letter::Gen {
            index,
            inverse: false,
        });
        self
    }

    pub fn gen_inv(mut self, index: usize) -> Self {
        self.0.push(Letter::Gen {
            index,
            inverse: true,
        });
        self
    }

    pub fn concat(mut self, other: &Word<K>) -> Self
    where
        K: Clone,
    {
        self.0.extend(other.0.iter().cloned());
        self
    }
}

impl<K: Scalar> Element<K> {
    pub fn zero(p: &Arc<Presentation<K>>) -> Self {
        Element {
            presentation: Arc::clone(p),
            support: BTreeMap::new(),
        }
    }

    pub fn constant(p: &Arc<Presentation<K>>, c: K) -> Self {
        let mut support = BTreeMap::new();
        if !c.is_zero() {
            support.insert(ExponentVector::zero(p.n()), c);
        }
        Element {
            presentation: Arc::clone(p),
            support,
        }
    }

    pub fn one(p: &Arc<Presentation<K>>) -> Self {
        Element::constant(p, p.one_coeff())
    }

    /// Single term c·x^u; the exponent must respect the Laurent mask.
    pub fn monomial(
        p: &Arc<Presentation<K>>,
        c: K,
        u: ExponentVector,
    ) -> Result<Self, ElementError> {
        check_exponent(p, &u)?;
        let mut support = BTreeMap::new();
        if !c.is_zero() {
            support.insert(u, c);
        }
        Ok(Element {
            presentation: Arc::clone(p),
            support,
        })
    }

    /// The generator x_{i+1} (0-based index).
    pub fn generator(p: &Arc<Presentation<K>>, i: usize) -> Result<Self, ElementError> {
        if i >= p.n() {
            return Err(ElementError::DimensionMismatch {
                expected: p.n(),
                got: i + 1,
            });
        }
        Element::monomial(p, p.one_coeff(), ExponentVector::unit(p.n(), i))
    }

    /// The inverse generator x_{i+1}^{-1}; requires i < r.
    pub fn generator_inverse(p: &Arc<Presentation<K>>, i: usize) -> Result<Self, ElementError> {
        if i >= p.laurent_count() {
            return Err(ElementError::IllegalInverse {
                index: i + 1,
                laurent: p.laurent_count(),
            });
        }
        let e = ExponentVector::unit(p.n(), i).neg();
        Element::monomial(p, p.one_coeff(), e)
    }

    pub fn presentation(&self) -> &Arc<Presentation<K>> {
        &self.presentation
    }

    pub fn support(&self) -> &BTreeMap<ExponentVector, K> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.support.len()
    }

    pub fn coeff_at(&self, u: &ExponentVector) -> Option<&K> {
        self.support.get(u)
    }

    pub fn same_presentation(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.presentation, &other.presentation)
            || *self.presentation == *other.presentation
    }

    fn from_support(
        p: &Arc<Presentation<K>>,
        support: BTreeMap<ExponentVector, K>,
    ) -> Self {
        debug_assert!(support.values().all(|c| !c.is_zero()));
        Element {
            presentation: Arc::clone(p),
            support,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ElementError> {
        if !self.same_presentation(other) {
            return Err(ElementError::PresentationMismatch);
        }
        let mut support = self.support.clone();
        for (e, c) in &other.support {
            merge_add(&mut support, e.clone(), c.clone());
        }
        Ok(Element::from_support(&self.presentation, support))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ElementError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let support = self
            .support
            .iter()
            .map(|(e, c)| (e.clone(), c.neg()))
            .collect();
        Element::from_support(&self.presentation, support)
    }

    /// Left multiplication by a coefficient.
    pub fn scalar_mul(&self, c: &K) -> Self {
        if c.is_zero() {
            return Element::zero(&self.presentation);
        }
        let support = self
            .support
            .iter()
            .map(|(e, v)| (e.clone(), c.mul(v)))
            .collect();
        Element::from_support(&self.presentation, support)
    }

    /// Ring product, dispatching on the presentation regime.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, ElementError> {
        if !self.same_presentation(other) {
            return Err(ElementError::PresentationMismatch);
        }
        let p = &self.presentation;
        let mut out: BTreeMap<ExponentVector, K> = BTreeMap::new();
        if p.is_quasi_commutative() {
            for (u, a) in &self.support {
                for (v, b) in &other.support {
                    let (coef, exp) = monomial_product_parts(p, a, u, b, v)?;
                    merge_add(&mut out, exp, coef);
                }
            }
        } else {
            for (u, a) in &self.support {
                for (v, b) in &other.support {
                    let term = general_term_product(p, a, u, b, v)?;
                    for (e, c) in term {
                        merge_add(&mut out, e, c);
                    }
                }
            }
        }
        Ok(Element::from_support(p, out))
    }

    pub fn pow(&self, k: u64) -> Result<Self, ElementError> {
        let mut acc = Element::one(&self.presentation);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Total degree data: max Σ|u_i| over the support (None for 0), plus the
    /// exponents attaining it.
    pub fn degree_data(&self) -> DegreeData {
        let mut degree: Option<BigInt> = None;
        for e in self.support.keys() {
            let d = e.abs_degree();
            if degree.as_ref().is_none_or(|m| &d > m) {
                degree = Some(d);
            }
        }
        let top_exponents = match &degree {
            None => Vec::new(),
            Some(d) => self
                .support
                .keys()
                .filter(|e| &e.abs_degree() == d)
                .cloned()
                .collect(),
        };
        DegreeData {
            degree,
            top_exponents,
        }
    }

    /// The top-degree part of the element, transported to another
    /// presentation with identical shape (used for associated-graded symbols).
    pub fn top_symbol(&self, target: &Arc<Presentation<K>>) -> Result<Element<K>, ElementError> {
        if target.n() != self.presentation.n()
            || target.laurent_count() != self.presentation.laurent_count()
        {
            return Err(ElementError::PresentationMismatch);
        }
        let data = self.degree_data();
        let mut support = BTreeMap::new();
        if let Some(d) = data.degree {
            for (e, c) in &self.support {
                if e.abs_degree() == d {
                    support.insert(e.clone(), c.clone());
                }
            }
        }
        Ok(Element::from_support(target, support))
    }

    /// Transport into another presentation of identical shape term by term
    /// (used for scalar-extension maps composed by the caller).
    pub fn map_coefficients<L: Scalar>(
        &self,
        target: &Arc<Presentation<L>>,
        f: impl Fn(&K) -> L,
    ) -> Result<Element<L>, ElementError> {
        if target.n() != self.presentation.n() {
            return Err(ElementError::PresentationMismatch);
        }
        let mut support = BTreeMap::new();
        for (e, c) in &self.support {
            let mapped = f(c);
            if !mapped.is_zero() {
                support.insert(e.clone(), mapped);
            }
        }
        Ok(Element {
            presentation: Arc::clone(target),
            support,
        })
    }
}

/// Degree of an element and the exponents attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    /// None encodes deg(0) = −∞.
    pub degree: Option<BigInt>,
    pub top_exponents: Vec<ExponentVector>,
}

fn check_exponent<K: Scalar>(
    p: &Presentation<K>,
    u: &ExponentVector,
) -> Result<(), ElementError> {
    if u.dim() != p.n() {
        return Err(ElementError::DimensionMismatch {
            expected: p.n(),
            got: u.dim(),
        });
    }
    for (i, v) in u.entries().iter().enumerate() {
        if i >= p.laurent_count() && v.is_negative() {
            return Err(ElementError::IllegalExponent { index: i + 1 });
        }
    }
    Ok(())
}

fn merge_add<K: Scalar>(map: &mut BTreeMap<ExponentVector, K>, e: ExponentVector, c: K) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&e) {
        Some(existing) => {
            let sum = existing.add(&c);
            if sum.is_zero() {
                map.remove(&e);
            } else {
                *existing = sum;
            }
        }
        None => {
            map.insert(e, c);
        }
    }
}

/// σ^w(c) = σ₁^{w₁}(…σₙ^{wₙ}(c)…); the supported automorphisms commute, so
/// the composition order is immaterial.
fn sigma_multi_apply<K: Scalar>(
    p: &Presentation<K>,
    w: &[BigInt],
    c: &K,
) -> Result<K, ElementError> {
    let mut acc = c.clone();
    for (i, wi) in w.iter().enumerate() {
        if wi.is_zero() || p.sigma(i).is_identity() {
            continue;
        }
        acc = acc.apply_automorphism(p.sigma(i), wi)?;
    }
    Ok(acc)
}

/// The scalar c with x_j^{s}·x_i^{t} = c·x_i^{t}·x_j^{s} (j > i), derived
/// from x_i x_j = q_ji x_j x_i and the coefficient transport rules.
fn swap_factor<K: Scalar>(
    p: &Presentation<K>,
    i: usize,
    j: usize,
    s_positive: bool,
    t_positive: bool,
) -> Result<K, ElementError> {
    debug_assert!(j > i);
    let minus_one = BigInt::from(-1);
    let c = match (s_positive, t_positive) {
        (true, true) => p.q(i, j).clone(),
        (true, false) => p.q(j, i).apply_automorphism(p.sigma(i), &minus_one)?,
        (false, true) => p.q(j, i).apply_automorphism(p.sigma(j), &minus_one)?,
        (false, false) => p
            .q(i, j)
            .apply_automorphism(p.sigma(j), &minus_one)?
            .apply_automorphism(p.sigma(i), &minus_one)?,
    };
    Ok(c)
}

/// Exact q-factor Q(u,v) from transporting x^v across x^u letter by letter.
fn qc_transport<K: Scalar>(
    p: &Presentation<K>,
    u: &ExponentVector,
    v: &ExponentVector,
) -> Result<K, ElementError> {
    let n = p.n();
    if p.all_sigma_trivial() {
        // every letter pair (i < j) contributes q_ij^{sign}, which collapses
        // to the closed form Π_{i<j} q_ij^{u_j·v_i}
        let mut acc = p.one_coeff();
        for i in 0..n {
            let vi = v.entry(i);
            if vi.is_zero() {
                continue;
            }
            for j in i + 1..n {
                let uj = u.entry(j);
                if uj.is_zero() {
                    continue;
                }
                acc = acc.mul(&p.q(i, j).pow_int(&(uj * vi))?);
            }
        }
        return Ok(acc);
    }
    // Skew case: simulate the move letter by letter, pulling every produced
    // coefficient through the prefix with σ.
    let mut coef = p.one_coeff();
    let mut w: Vec<BigInt> = u.entries().to_vec();
    for i in 0..n {
        let vi = v.entry(i);
        if vi.is_zero() {
            continue;
        }
        let t_positive = vi.is_positive();
        let count = vi
            .abs()
            .to_u64()
            .ok_or(ElementError::ExponentTooLarge)?;
        let step = if t_positive { 1 } else { -1 };
        for _ in 0..count {
            // move one letter x_i^{±1} into place from the right
            let mut left = w.clone();
            for j in (i + 1..n).rev() {
                while !left[j].is_zero() {
                    let s_positive = left[j].is_positive();
                    left[j] -= BigInt::from(if s_positive { 1 } else { -1 });
                    let c_swap = swap_factor(p, i, j, s_positive, t_positive)?;
                    let transported = sigma_multi_apply(p, &left, &c_swap)?;
                    coef = coef.mul(&transported);
                }
            }
            w[i] += BigInt::from(step);
        }
    }
    Ok(coef)
}

/// Closed-form product of two monomials in a quasi-commutative presentation:
/// (λx^u)(μx^v) = λ·σ^u(μ)·Q(u,v)·x^{u+v}.
pub fn monomial_product_parts<K: Scalar>(
    p: &Presentation<K>,
    lambda: &K,
    u: &ExponentVector,
    mu: &K,
    v: &ExponentVector,
) -> Result<(K, ExponentVector), ElementError> {
    if !p.is_quasi_commutative() {
        return Err(ElementError::NotQuasiCommutative);
    }
    check_exponent(p, u)?;
    check_exponent(p, v)?;
    let sigma_mu = sigma_multi_apply(p, u.entries(), mu)?;
    let q_factor = qc_transport(p, u, v)?;
    let coef = lambda.mul(&sigma_mu).mul(&q_factor);
    Ok((coef, u.add(v)))
}

/// Single-term wrapper around [`monomial_product_parts`].
pub fn monomial_product<K: Scalar>(
    p: &Arc<Presentation<K>>,
    lambda: &K,
    u: &ExponentVector,
    mu: &K,
    v: &ExponentVector,
) -> Result<Element<K>, ElementError> {
    let (coef, exp) = monomial_product_parts(p, lambda, u, mu, v)?;
    Element::monomial(p, coef, exp)
}

/// Multiplicative inverse of the monomial λx^u in a quasi-commutative ring
/// whose first r generators are invertible; u must be supported there.
pub fn monomial_inverse<K: Scalar>(
    p: &Presentation<K>,
    lambda: &K,
    u: &ExponentVector,
) -> Result<(K, ExponentVector), ElementError> {
    if !p.is_quasi_commutative() {
        return Err(ElementError::NotQuasiCommutative);
    }
    check_exponent(p, u)?;
    for (i, e) in u.entries().iter().enumerate() {
        if i >= p.laurent_count() && !e.is_zero() {
            return Err(ElementError::NotInvertible {
                reason: format!("generator x{} is not invertible", i + 1),
            });
        }
    }
    if !lambda.is_unit() {
        return Err(ElementError::NotInvertible {
            reason: format!("coefficient {lambda} is not a unit"),
        });
    }
    let neg_u = u.neg();
    // solve (λ x^u)(μ x^{-u}) = λ σ^u(μ) Q(u,-u) = 1 for μ
    let q_factor = qc_transport(p, u, &neg_u)?;
    let inv = lambda.mul(&q_factor).inverse()?;
    let neg_entries: Vec<BigInt> = neg_u.entries().to_vec();
    let mu = sigma_multi_apply(p, &neg_entries, &inv)?;
    debug_assert!({
        let (c, e) = monomial_product_parts(p, lambda, u, &mu, &neg_u).unwrap();
        c.is_one() && e.is_zero()
    });
    Ok((mu, neg_u))
}

// ---- general (non-quasi-commutative) engine, r = 0 ----

/// x^u·c in normal form: peel generators from the right, applying σ and δ.
fn mono_times_coeff<K: Scalar>(
    p: &Presentation<K>,
    u: &ExponentVector,
    c: &K,
) -> Result<BTreeMap<ExponentVector, K>, ElementError> {
    let mut out = BTreeMap::new();
    if c.is_zero() {
        return Ok(out);
    }
    let top = u
        .entries()
        .iter()
        .rposition(|e| !e.is_zero());
    let i = match top {
        None => {
            out.insert(u.clone(), c.clone());
            return Ok(out);
        }
        Some(i) => i,
    };
    debug_assert!(u.entry(i).is_positive(), "general regime has r = 0");
    let u_prev = u.sub(&ExponentVector::unit(u.dim(), i));
    // x^u c = x^{u'} (x_i c) = x^{u'} σ_i(c) x_i + x^{u'} δ_i(c)
    let sigma_c = c.apply_automorphism(p.sigma(i), &BigInt::from(1))?;
    let main = mono_times_coeff(p, &u_prev, &sigma_c)?;
    let ei = ExponentVector::unit(u.dim(), i);
    for (e, v) in main {
        merge_add(&mut out, e.add(&ei), v);
    }
    if !p.delta(i).is_zero() {
        let delta_c = p.delta(i).apply(c)?;
        if !delta_c.is_zero() {
            let lower = mono_times_coeff(p, &u_prev, &delta_c)?;
            for (e, v) in lower {
                merge_add(&mut out, e, v);
            }
        }
    }
    Ok(out)
}

/// x^w·x_i in normal form: bubble x_i leftwards past the higher generators,
/// branching into the lower terms of each crossed relation.
fn term_times_gen<K: Scalar>(
    p: &Presentation<K>,
    w: &ExponentVector,
    i: usize,
) -> Result<BTreeMap<ExponentVector, K>, ElementError> {
    let n = p.n();
    let blocking = (i + 1..n).rev().find(|&j| !w.entry(j).is_zero());
    let mut out = BTreeMap::new();
    let j = match blocking {
        None => {
            out.insert(w.add(&ExponentVector::unit(n, i)), p.one_coeff());
            return Ok(out);
        }
        Some(j) => j,
    };
    let w_prev = w.sub(&ExponentVector::unit(n, j));
    // x^w x_i = x^{w'} (x_j x_i) = x^{w'} (q_ij x_i x_j + L_ji)
    let main = mono_times_coeff(p, &w_prev, p.q(i, j))?;
    let with_i = support_times_gen(p, &main, i)?;
    let with_ij = support_times_gen(p, &with_i, j)?;
    for (e, v) in with_ij {
        merge_add(&mut out, e, v);
    }
    if let Some(lt) = p.lower_term(j, i) {
        if !lt.constant.is_zero() {
            for (e, v) in mono_times_coeff(p, &w_prev, &lt.constant)? {
                merge_add(&mut out, e, v);
            }
        }
        for (k, d) in lt.linear.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let base = mono_times_coeff(p, &w_prev, d)?;
            for (e, v) in support_times_gen(p, &base, k)? {
                merge_add(&mut out, e, v);
            }
        }
    }
    Ok(out)
}

fn support_times_gen<K: Scalar>(
    p: &Presentation<K>,
    terms: &BTreeMap<ExponentVector, K>,
    i: usize,
) -> Result<BTreeMap<ExponentVector, K>, ElementError> {
    let mut out = BTreeMap::new();
    for (w, c) in terms {
        for (e, v) in term_times_gen(p, w, i)? {
            merge_add(&mut out, e, c.mul(&v));
        }
    }
    Ok(out)
}

/// (λx^u)·(μx^v) through the step-by-step rewriting engine, with the shape of
/// the result checked against the normal-form theorem: one term at u+v and
/// corrections of strictly smaller degree.
fn general_term_product<K: Scalar>(
    p: &Presentation<K>,
    lambda: &K,
    u: &ExponentVector,
    mu: &K,
    v: &ExponentVector,
) -> Result<BTreeMap<ExponentVector, K>, ElementError> {
    check_exponent(p, u)?;
    check_exponent(p, v)?;
    let mut cur = mono_times_coeff(p, u, mu)?;
    if !lambda.is_one() {
        cur = cur
            .into_iter()
            .map(|(e, c)| (e, lambda.mul(&c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
    }
    for i in 0..p.n() {
        let vi = v.entry(i);
        if vi.is_zero() {
            continue;
        }
        let count = vi.to_u64().ok_or(ElementError::ExponentTooLarge)?;
        for _ in 0..count {
            cur = support_times_gen(p, &cur, i)?;
        }
    }
    let total = u.add(v);
    let total_deg = total.abs_degree();
    if !lambda.is_zero() && !mu.is_zero() {
        assert!(
            cur.contains_key(&total),
            "leading term x^{total} vanished in a domain product"
        );
        for e in cur.keys() {
            assert!(
                *e == total || e.abs_degree() < total_deg,
                "correction term x^{e} at or above degree of x^{total}"
            );
        }
    }
    Ok(cur)
}

// ---- iterated skew polynomial evaluation ----

/// Multiply two elements through the iterated skew polynomial tower: peel the
/// top generator z_s, use f·g = Σ F_k·θ_s^k(G_l)·z_s^{k+l}, and recurse into
/// the subring. Independent of the closed-form transport path.
pub fn iterated_mul<K: Scalar>(
    p: &Arc<Presentation<K>>,
    form: &crate::presentation::IteratedForm<K>,
    f: &Element<K>,
    g: &Element<K>,
) -> Result<Element<K>, ElementError> {
    let same_p =
        Arc::ptr_eq(f.presentation(), p) || *f.presentation().as_ref() == *p.as_ref();
    if !f.same_presentation(g) || !same_p {
        return Err(ElementError::PresentationMismatch);
    }
    let to_terms = |e: &Element<K>| -> Vec<(Vec<BigInt>, K)> {
        e.support()
            .iter()
            .map(|(u, c)| (u.entries().to_vec(), c.clone()))
            .collect()
    };
    let terms = stage_mul(p, form, p.n(), &to_terms(f), &to_terms(g))?;
    let mut out: BTreeMap<ExponentVector, K> = BTreeMap::new();
    for (e, c) in terms {
        merge_add(&mut out, ExponentVector::new(e), c);
    }
    Ok(Element::from_support(p, out))
}

fn stage_mul<K: Scalar>(
    p: &Presentation<K>,
    form: &crate::presentation::IteratedForm<K>,
    stage: usize,
    f_terms: &[(Vec<BigInt>, K)],
    g_terms: &[(Vec<BigInt>, K)],
) -> Result<Vec<(Vec<BigInt>, K)>, ElementError> {
    if stage == 0 {
        let mut out = Vec::new();
        for (ue, a) in f_terms {
            for (ve, b) in g_terms {
                debug_assert!(ue.iter().all(Zero::is_zero) && ve.iter().all(Zero::is_zero));
                out.push((ue.clone(), a.mul(b)));
            }
        }
        return Ok(out);
    }
    let idx = stage - 1;
    let group = |terms: &[(Vec<BigInt>, K)]| -> BTreeMap<BigInt, Vec<(Vec<BigInt>, K)>> {
        let mut m: BTreeMap<BigInt, Vec<(Vec<BigInt>, K)>> = BTreeMap::new();
        for (e, c) in terms {
            let mut stripped = e.clone();
            let k = std::mem::replace(&mut stripped[idx], BigInt::zero());
            m.entry(k).or_default().push((stripped, c.clone()));
        }
        m
    };
    let fg = group(f_terms);
    let gg = group(g_terms);
    let mut out = Vec::new();
    for (k, fk) in &fg {
        for (l, gl) in &gg {
            let twisted = theta_power(p, form, idx, gl, k)?;
            let sub = stage_mul(p, form, stage - 1, fk, &twisted)?;
            let total = k + l;
            for (mut e, c) in sub {
                e[idx] = total.clone();
                out.push((e, c));
            }
        }
    }
    Ok(out)
}

/// θ_{idx+1}^k applied to terms of the subring (slots ≥ idx are zero):
/// coefficients move through σ_{idx+1}, and each z_i picks up the scalar
/// q_{i,idx+1}, with produced scalars transported to the front through the
/// earlier z-blocks.
fn theta_power<K: Scalar>(
    p: &Presentation<K>,
    form: &crate::presentation::IteratedForm<K>,
    idx: usize,
    terms: &[(Vec<BigInt>, K)],
    k: &BigInt,
) -> Result<Vec<(Vec<BigInt>, K)>, ElementError> {
    if k.is_zero() {
        return Ok(terms.to_vec());
    }
    let reps = k.abs().to_u64().ok_or(ElementError::ExponentTooLarge)?;
    let forward = k.is_positive();
    let mut cur = terms.to_vec();
    for _ in 0..reps {
        let mut next = Vec::with_capacity(cur.len());
        for (e, c) in &cur {
            next.push(theta_once(p, form, idx, e, c, forward)?);
        }
        cur = next;
    }
    Ok(cur)
}

fn theta_once<K: Scalar>(
    p: &Presentation<K>,
    form: &crate::presentation::IteratedForm<K>,
    idx: usize,
    e: &[BigInt],
    c: &K,
    forward: bool,
) -> Result<(Vec<BigInt>, K), ElementError> {
    let stage = &form.stages[idx];
    let dir = BigInt::from(if forward { 1 } else { -1 });
    let mut coef = c.apply_automorphism(&stage.sigma, &dir)?;
    for i in 0..idx {
        let a = &e[i];
        if a.is_zero() {
            continue;
        }
        // (q·z_i)^a = c_i·z_i^a, then transport c_i through z_1^{e_1}…z_{i-1}^{e_{i-1}}
        let q = if forward {
            stage.z_action[i].clone()
        } else {
            // θ^{-1}(z_i) = σ^{-1}(q^{-1})·z_i
            stage.z_action[i]
                .inverse()?
                .apply_automorphism(&stage.sigma, &BigInt::from(-1))?
        };
        let ci = scaled_gen_power(p, i, &q, a)?;
        let transported = sigma_multi_apply(p, &e[..i], &ci)?;
        coef = coef.mul(&transported);
    }
    Ok((e.to_vec(), coef))
}

/// The scalar c with (q·z_i)^a = c·z_i^a in the skew tower.
fn scaled_gen_power<K: Scalar>(
    p: &Presentation<K>,
    i: usize,
    q: &K,
    a: &BigInt,
) -> Result<K, ElementError> {
    let reps = a.abs().to_u64().ok_or(ElementError::ExponentTooLarge)?;
    let mut acc = q.one_like();
    if a.is_positive() {
        for beta in 0..reps {
            acc = acc.mul(&q.apply_automorphism(p.sigma(i), &BigInt::from(beta))?);
        }
    } else {
        let q_inv = q.inverse()?;
        for beta in 1..=reps {
            acc = acc.mul(&q_inv.apply_automorphism(p.sigma(i), &BigInt::from(-(beta as i64)))?);
        }
    }
    Ok(acc)
}

// ---- word-reduction oracle ----

/// Reduce a raw word to normal form by rewriting one adjacent pair at a time
/// (leftmost reducible pair first), branching on derivations and lower terms.
///
/// This path shares no code with the closed-form or engine products and
/// serves as their ground truth.
pub fn normalize_word<K: Scalar>(
    p: &Arc<Presentation<K>>,
    word: &Word<K>,
) -> Result<Element<K>, ElementError> {
    // validate letters
    for l in &word.0 {
        match l {
            Letter::Coeff(c) => {
                if c.mode() != *p.mode() {
                    return Err(ElementError::Coeff(CoeffError::ModeMismatch {
                        expected: p.mode().to_string(),
                        got: c.mode().to_string(),
                    }));
                }
            }
            Letter::Gen { index, inverse } => {
                if *index >= p.n() {
                    return Err(ElementError::DimensionMismatch {
                        expected: p.n(),
                        got: *index + 1,
                    });
                }
                if *inverse && *index >= p.laurent_count() {
                    return Err(ElementError::IllegalInverse {
                        index: *index + 1,
                        laurent: p.laurent_count(),
                    });
                }
            }
        }
    }
    let mut result = Element::zero(p);
    let mut work: Vec<Vec<Letter<K>>> = vec![word.0.clone()];
    while let Some(w) = work.pop() {
        match reduce_step(p, &w)? {
            None => {
                let term = collect_normal(p, &w)?;
                result = result.checked_add(&term)?;
            }
            Some(branches) => work.extend(branches),
        }
    }
    Ok(result)
}

/// Find the leftmost reducible adjacent pair and rewrite it. Returns None
/// when the word is in normal form.
fn reduce_step<K: Scalar>(
    p: &Presentation<K>,
    w: &[Letter<K>],
) -> Result<Option<Vec<Vec<Letter<K>>>>, ElementError> {
    use Letter::*;
    for pos in 0..w.len().saturating_sub(1) {
        let replace = |mid: Vec<Vec<Letter<K>>>| -> Vec<Vec<Letter<K>>> {
            mid.into_iter()
                .map(|m| {
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.extend(w[..pos].iter().cloned());
                    nw.extend(m);
                    nw.extend(w[pos + 2..].iter().cloned());
                    nw
                })
                .collect()
        };
        match (&w[pos], &w[pos + 1]) {
            (Coeff(a), Coeff(b)) => {
                return Ok(Some(replace(vec![vec![Coeff(a.mul(b))]])));
            }
            (Gen { index: i, inverse }, Coeff(c)) => {
                // x_i c = σ_i(c) x_i + δ_i(c); x_i^{-1} c = σ_i^{-1}(c) x_i^{-1}
                let power = BigInt::from(if *inverse { -1 } else { 1 });
                let sc = c.apply_automorphism(p.sigma(*i), &power)?;
                let mut branches = vec![vec![
                    Coeff(sc),
                    Gen {
                        index: *i,
                        inverse: *inverse,
                    },
                ]];
                if !*inverse && !p.delta(*i).is_zero() {
                    let dc = p.delta(*i).apply(c)?;
                    if !dc.is_zero() {
                        branches.push(vec![Coeff(dc)]);
                    }
                }
                return Ok(Some(replace(branches)));
            }
            (
                Gen {
                    index: j,
                    inverse: ji,
                },
                Gen {
                    index: i,
                    inverse: ii,
                },
            ) => {
                if j == i && ji != ii {
                    // x_i x_i^{-1} = 1 = x_i^{-1} x_i
                    return Ok(Some(replace(vec![vec![]])));
                }
                if j > i {
                    let c = swap_factor(p, *i, *j, !*ji, !*ii)?;
                    let mut branches = vec![vec![
                        Coeff(c),
                        Gen {
                            index: *i,
                            inverse: *ii,
                        },
                        Gen {
                            index: *j,
                            inverse: *ji,
                        },
                    ]];
                    if !*ji && !*ii {
                        if let Some(lt) = p.lower_term(*j, *i) {
                            if !lt.constant.is_zero() {
                                branches.push(vec![Coeff(lt.constant.clone())]);
                            }
                            for (k, d) in lt.linear.iter().enumerate() {
                                if !d.is_zero() {
                                    branches.push(vec![
                                        Coeff(d.clone()),
                                        Gen {
                                            index: k,
                                            inverse: false,
                                        },
                                    ]);
                                }
                            }
                        }
                    }
                    return Ok(Some(replace(branches)));
                }
            }
            (Coeff(_), Gen { .. }) => {}
        }
    }
    Ok(None)
}

fn collect_normal<K: Scalar>(
    p: &Arc<Presentation<K>>,
    w: &[Letter<K>],
) -> Result<Element<K>, ElementError> {
    let mut coef = p.one_coeff();
    let mut exps = vec![BigInt::zero(); p.n()];
    for l in w {
        match l {
            Letter::Coeff(c) => coef = coef.mul(c),
            Letter::Gen { index, inverse } => {
                exps[*index] += BigInt::from(if *inverse { -1 } else { 1 })
            }
        }
    }
    Element::monomial(p, coef, ExponentVector::new(exps))
}
