//! Truncated Mal'cev–Neumann / Hahn series over ℤⁿ.
//!
//! A full Hahn series has well-ordered support and is not finitely
//! representable, so a [`HahnSeries`] stores a finite support together with a
//! reliability bound: the coefficients are exact at every exponent strictly
//! below the bound and unknown from the bound upwards. `Exact` marks series
//! that are known everywhere (polynomial data). All arithmetic propagates the
//! tightest valid bound; nothing is ever approximate inside the stated
//! region.
//!
//! The ambient ring is a quasi-commutative torus presentation (r = n), so
//! every nonzero monomial is invertible and every nonzero series with known
//! leading term is a unit of the completion.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::coeffs::Scalar;
use crate::elements::{monomial_inverse, monomial_product_parts, Element, ElementError};
use crate::exponents::{ExponentVector, MonomialOrder, OrderError};
use crate::presentation::Presentation;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("completion requires a quasi-commutative torus presentation (r = n)")]
    NotATorus,
    #[error("order dimension {order_n} does not match presentation dimension {ring_n}")]
    OrderMismatch { order_n: usize, ring_n: usize },
    #[error("cannot invert the zero series")]
    ZeroSeries,
    #[error("leading term unknown: series has no support below its bound")]
    UnknownLeadingTerm,
    #[error("geometric inversion needs more than {cap} terms; bound unreachable")]
    BoundUnreachable { cap: u64 },
    #[error(transparent)]
    Element(#[from] ElementError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Exactness region of a truncated series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeriesBound {
    /// Known at every exponent (finite series, no tail).
    Exact,
    /// Known strictly below this exponent, unknown from it on.
    Below(ExponentVector),
}

/// A truncated Hahn series: finite support, every stored exponent strictly
/// below the bound.
#[derive(Clone, PartialEq, Debug)]
pub struct HahnSeries<K> {
    support: BTreeMap<ExponentVector, K>,
    bound: SeriesBound,
}

impl<K: Scalar> HahnSeries<K> {
    pub fn support(&self) -> &BTreeMap<ExponentVector, K> {
        &self.support
    }

    pub fn bound(&self) -> &SeriesBound {
        &self.bound
    }

    pub fn is_zero_on_known_region(&self) -> bool {
        self.support.is_empty()
    }
}

/// The completion of a quasi-commutative torus presentation with respect to
/// the least-exponent valuation of a monomial order.
#[derive(Clone, Debug)]
pub struct Completion<K> {
    presentation: Arc<Presentation<K>>,
    order: MonomialOrder,
}

impl<K: Scalar> Completion<K> {
    pub fn new(
        presentation: Arc<Presentation<K>>,
        order: MonomialOrder,
    ) -> Result<Self, SeriesError> {
        if presentation.laurent_count() != presentation.n() || !presentation.is_quasi_commutative()
        {
            return Err(SeriesError::NotATorus);
        }
        if order.n() != presentation.n() {
            return Err(SeriesError::OrderMismatch {
                order_n: order.n(),
                ring_n: presentation.n(),
            });
        }
        Ok(Completion {
            presentation,
            order,
        })
    }

    pub fn presentation(&self) -> &Arc<Presentation<K>> {
        &self.presentation
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn zero(&self) -> HahnSeries<K> {
        HahnSeries {
            support: BTreeMap::new(),
            bound: SeriesBound::Exact,
        }
    }

    pub fn one(&self) -> HahnSeries<K> {
        self.from_element(&Element::one(&self.presentation))
    }

    /// A polynomial element viewed as an everywhere-exact series.
    pub fn from_element(&self, f: &Element<K>) -> HahnSeries<K> {
        HahnSeries {
            support: f.support().clone(),
            bound: SeriesBound::Exact,
        }
    }

    pub fn monomial(&self, c: K, u: ExponentVector) -> Result<HahnSeries<K>, SeriesError> {
        let e = Element::monomial(&self.presentation, c, u)?;
        Ok(self.from_element(&e))
    }

    /// The polynomial carried by the known region.
    pub fn to_element(&self, f: &HahnSeries<K>) -> Element<K> {
        let mut acc = Element::zero(&self.presentation);
        for (e, c) in &f.support {
            let term = Element::monomial(&self.presentation, c.clone(), e.clone())
                .expect("series exponents are torus-legal");
            acc = acc.checked_add(&term).expect("same presentation");
        }
        acc
    }

    #[cfg(test)]
    pub(crate) fn bound_min_public(
        &self,
        a: &SeriesBound,
        b: &SeriesBound,
    ) -> Result<SeriesBound, SeriesError> {
        self.bound_min(a, b)
    }

    fn bound_min(&self, a: &SeriesBound, b: &SeriesBound) -> Result<SeriesBound, SeriesError> {
        Ok(match (a, b) {
            (SeriesBound::Exact, SeriesBound::Exact) => SeriesBound::Exact,
            (SeriesBound::Exact, SeriesBound::Below(v)) => SeriesBound::Below(v.clone()),
            (SeriesBound::Below(v), SeriesBound::Exact) => SeriesBound::Below(v.clone()),
            (SeriesBound::Below(u), SeriesBound::Below(v)) => {
                if self.order.compare(u, v)? == Ordering::Less {
                    SeriesBound::Below(u.clone())
                } else {
                    SeriesBound::Below(v.clone())
                }
            }
        })
    }

    fn prune(&self, f: &mut HahnSeries<K>) -> Result<(), SeriesError> {
        if let SeriesBound::Below(b) = &f.bound {
            let keys: Vec<ExponentVector> = f.support.keys().cloned().collect();
            for k in keys {
                if self.order.compare(&k, b)? != Ordering::Less {
                    f.support.remove(&k);
                }
            }
        }
        Ok(())
    }

    /// Truncate to a (possibly) smaller exactness region.
    pub fn restrict(
        &self,
        f: &HahnSeries<K>,
        bound: SeriesBound,
    ) -> Result<HahnSeries<K>, SeriesError> {
        let mut out = HahnSeries {
            support: f.support.clone(),
            bound: self.bound_min(&f.bound, &bound)?,
        };
        self.prune(&mut out)?;
        Ok(out)
    }

    /// Lower bound for ν(f): the least stored exponent, or the bound itself
    /// when nothing is stored (ν may be anything ≥ bound).
    fn nu_lower(&self, f: &HahnSeries<K>) -> Result<Option<ExponentVector>, SeriesError> {
        let mut min: Option<&ExponentVector> = None;
        for e in f.support.keys() {
            match min {
                None => min = Some(e),
                Some(m) => {
                    if self.order.compare(e, m)? == Ordering::Less {
                        min = Some(e);
                    }
                }
            }
        }
        match (min, &f.bound) {
            (Some(m), _) => Ok(Some(m.clone())),
            (None, SeriesBound::Below(b)) => Ok(Some(b.clone())),
            (None, SeriesBound::Exact) => Ok(None), // genuinely zero
        }
    }

    /// ν(f) when it is known exactly: the least support exponent, which by
    /// the invariant lies strictly below the bound. `Ok(None)` means f is
    /// exactly zero; an empty truncated series is an error.
    pub fn val(&self, f: &HahnSeries<K>) -> Result<Option<ExponentVector>, SeriesError> {
        let mut min: Option<&ExponentVector> = None;
        for e in f.support.keys() {
            match min {
                None => min = Some(e),
                Some(m) => {
                    if self.order.compare(e, m)? == Ordering::Less {
                        min = Some(e);
                    }
                }
            }
        }
        match (min, &f.bound) {
            (Some(m), _) => Ok(Some(m.clone())),
            (None, SeriesBound::Exact) => Ok(None),
            (None, SeriesBound::Below(_)) => Err(SeriesError::UnknownLeadingTerm),
        }
    }

    pub fn add(&self, f: &HahnSeries<K>, g: &HahnSeries<K>) -> Result<HahnSeries<K>, SeriesError> {
        let mut support = f.support.clone();
        for (e, c) in &g.support {
            match support.get_mut(e) {
                Some(existing) => {
                    let sum = existing.add(c);
                    if sum.is_zero() {
                        support.remove(e);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    support.insert(e.clone(), c.clone());
                }
            }
        }
        let mut out = HahnSeries {
            support,
            bound: self.bound_min(&f.bound, &g.bound)?,
        };
        self.prune(&mut out)?;
        Ok(out)
    }

    pub fn neg(&self, f: &HahnSeries<K>) -> HahnSeries<K> {
        HahnSeries {
            support: f
                .support
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
            bound: f.bound.clone(),
        }
    }

    pub fn sub(&self, f: &HahnSeries<K>, g: &HahnSeries<K>) -> Result<HahnSeries<K>, SeriesError> {
        self.add(f, &self.neg(g))
    }

    /// Convolution product through the torus relations. The result is exact
    /// below min(ν(f)+bound(g), ν(g)+bound(f)).
    pub fn mul(&self, f: &HahnSeries<K>, g: &HahnSeries<K>) -> Result<HahnSeries<K>, SeriesError> {
        let bound = {
            let fb = match (&g.bound, self.nu_lower(f)?) {
                (SeriesBound::Below(bg), Some(nf)) => SeriesBound::Below(bg.add(&nf)),
                _ => SeriesBound::Exact,
            };
            let gb = match (&f.bound, self.nu_lower(g)?) {
                (SeriesBound::Below(bf), Some(ng)) => SeriesBound::Below(bf.add(&ng)),
                _ => SeriesBound::Exact,
            };
            self.bound_min(&fb, &gb)?
        };
        let p = self.presentation.as_ref();
        let mut support: BTreeMap<ExponentVector, K> = BTreeMap::new();
        for (u, a) in &f.support {
            for (v, b) in &g.support {
                let (coef, exp) = monomial_product_parts(p, a, u, b, v)?;
                if coef.is_zero() {
                    continue;
                }
                match support.get_mut(&exp) {
                    Some(existing) => {
                        let sum = existing.add(&coef);
                        if sum.is_zero() {
                            support.remove(&exp);
                        } else {
                            *existing = sum;
                        }
                    }
                    None => {
                        support.insert(exp, coef);
                    }
                }
            }
        }
        let mut out = HahnSeries { support, bound };
        self.prune(&mut out)?;
        Ok(out)
    }

    /// Invert f in the completion: split off the leading monomial,
    /// f = c·x^m·(1 + h) with ν(h) > 0, and sum the geometric series to the
    /// requested bound. The result's recorded bound is what was actually
    /// achieved: the target when the multiples of ν(h) reach it, the honest
    /// smaller region otherwise.
    pub fn invert(
        &self,
        f: &HahnSeries<K>,
        target: &ExponentVector,
    ) -> Result<HahnSeries<K>, SeriesError> {
        const GEOMETRIC_CAP: u64 = 1 << 16;
        let nu = match self.val(f)? {
            Some(nu) => nu,
            None => return Err(SeriesError::ZeroSeries),
        };
        let lead = f.support.get(&nu).expect("valuation exponent stored").clone();
        let p = self.presentation.as_ref();
        let (inv_c, inv_e) = monomial_inverse(p, &lead, &nu)?;
        let lead_inv = self.monomial(inv_c, inv_e)?;
        // h = lead⁻¹·f − 1 has ν(h) > 0
        let mut h = self.mul(&lead_inv, f)?;
        h = self.sub(&h, &self.one())?;
        // the geometric part must be exact below target + (−m); geom_bound is
        // the exactness region of Σ(−h)^j in the (1+h)-normalised frame
        let shifted_target = target.add(&nu.neg());
        let (steps, geom_bound) = match self.val(&h) {
            Ok(Some(nu_h)) => {
                debug_assert!(self.order.is_positive(&nu_h)?);
                let steps = match smallest_reaching_multiple(&self.order, &nu_h, &shifted_target)?
                {
                    Some(k) => {
                        if k > GEOMETRIC_CAP {
                            return Err(SeriesError::BoundUnreachable { cap: GEOMETRIC_CAP });
                        }
                        // terms h^k with k·ν(h) ≥ target contribute nothing below it
                        k.saturating_sub(1)
                    }
                    // non-Archimedean direction: no multiple of ν(h) reaches
                    // the target; cap the sum and record the honest bound
                    None => GEOMETRIC_CAP.min(64),
                };
                let next = nu_h.scaled(&BigInt::from(steps + 1));
                (steps, SeriesBound::Below(next))
            }
            // f is exactly a monomial: the inverse is exact
            Ok(None) => (0, SeriesBound::Exact),
            // h vanishes on its known region but has an unknown tail; the
            // geometric sum is exact only where h is
            Err(SeriesError::UnknownLeadingTerm) => (0, h.bound.clone()),
            Err(e) => return Err(e),
        };
        let minus_h = self.neg(&h);
        let mut sum = self.one();
        let mut power = self.one();
        for _ in 0..steps {
            power = self.mul(&power, &minus_h)?;
            if power.support.is_empty() {
                break;
            }
            sum = self.add(&sum, &power)?;
        }
        let mut result = self.mul(&sum, &lead_inv)?;
        let achieved = match geom_bound {
            SeriesBound::Exact => result.bound.clone(),
            SeriesBound::Below(b) => {
                self.bound_min(&result.bound, &SeriesBound::Below(b.add(&nu.neg())))?
            }
        };
        result = self.restrict(&result, achieved)?;
        result = self.restrict(&result, SeriesBound::Below(target.clone()))?;
        // contract: f·result − 1 vanishes on the known region of the product
        let check = self.sub(&self.mul(f, &result)?, &self.one())?;
        assert!(
            check.support.is_empty(),
            "series inversion failed its product check"
        );
        Ok(result)
    }

    /// f ∈ mⁱ decided through the valuation: in the completion f factors as
    /// (unit)·x^{ν(f)}, so membership reduces to cone-power membership of
    /// ν(f). The zero series lies in every power.
    pub fn m_power_membership(&self, f: &HahnSeries<K>, i: u64) -> Result<bool, SeriesError> {
        match self.val(f)? {
            None => Ok(true),
            Some(nu) => Ok(self.order.cone_power_membership(&nu, i)?),
        }
    }

    /// A concrete factorization witness: exponents e₁..e_i of positive
    /// monomials with Σe_j = ν(f); multiplying the corresponding monomials
    /// reproduces (unit)·x^{ν(f)} exactly.
    pub fn m_power_witness(
        &self,
        f: &HahnSeries<K>,
        i: u64,
    ) -> Result<Vec<ExponentVector>, SeriesError> {
        let nu = self.val(f)?.ok_or(SeriesError::ZeroSeries)?;
        Ok(self.order.factor_into_positives(&nu, i)?)
    }

    /// Multiply the monomials x^{e_1}···x^{e_k} and check the product is a
    /// unit multiple of x^{sum}; returns the unit coefficient.
    pub fn verify_witness_product(
        &self,
        factors: &[ExponentVector],
        expected: &ExponentVector,
    ) -> Result<K, SeriesError> {
        let p = self.presentation.as_ref();
        let one = p.one_coeff();
        let mut coef = one.clone();
        let mut exp = ExponentVector::zero(p.n());
        for e in factors {
            let (c, x) = monomial_product_parts(p, &coef, &exp, &one, e)?;
            coef = c;
            exp = x;
        }
        assert_eq!(&exp, expected, "witness factors do not multiply back");
        assert!(coef.is_unit(), "witness product coefficient is not a unit");
        Ok(coef)
    }

    /// Probe ∩_{i ≤ depth} mⁱ over this completion.
    pub fn conjecture_check(&self, depth: u64) -> Result<ConjectureVerdict, SeriesError> {
        conjecture_check_order(&self.order, Some(self), depth)
    }
}

/// Verdict of the intersection diagnostic for the powers of the maximal
/// ideal of a completion.
#[derive(Clone, Debug)]
pub enum ConjectureVerdict {
    /// A single monomial exponent lying in mⁱ for every i ≤ depth, with a
    /// verified positive-cone factorization for each i.
    Witness {
        exponent: ExponentVector,
        min_positive: ExponentVector,
        factorizations: Vec<Vec<ExponentVector>>,
        products_verified: bool,
    },
    /// n = 1: values of mⁱ grow at least linearly, so the intersection is 0
    /// (checked up to the requested depth).
    IntersectionTrivial {
        depth: u64,
        min_positive: ExponentVector,
    },
    /// No minimal positive element (not reachable for rational matrix
    /// orders; kept for the dense-order convention).
    DenseOrder,
}

/// Order-level variant of the conjecture probe. When a completion is given,
/// every factorization is multiplied back through the ring arithmetic.
pub fn conjecture_check_order<K: Scalar>(
    order: &MonomialOrder,
    completion: Option<&Completion<K>>,
    depth: u64,
) -> Result<ConjectureVerdict, SeriesError> {
    assert!(depth >= 1, "depth must be at least 1");
    let m0 = match order.min_positive() {
        Some(m0) => m0.clone(),
        None => return Ok(ConjectureVerdict::DenseOrder),
    };
    let n = order.n();
    if n == 1 {
        return Ok(ConjectureVerdict::IntersectionTrivial {
            depth,
            min_positive: m0,
        });
    }
    // Pick a witness in a strictly shallower stratum than m0: the first
    // nonzero row w of the order matrix satisfies w·m0 = 0 (m0 lies in the
    // deepest kernel), so any g with w·g > 0 dominates every multiple of m0.
    let witness = first_row_witness(order);
    debug_assert!(order.is_positive(&witness)?);
    let mut factorizations = Vec::with_capacity(depth as usize);
    let mut products_verified = true;
    for i in 1..=depth {
        assert!(
            order.cone_power_membership(&witness, i)?,
            "witness left m^{i}"
        );
        let factors = order.factor_into_positives(&witness, i)?;
        if let Some(c) = completion {
            c.verify_witness_product(&factors, &witness)?;
        } else {
            products_verified = false;
        }
        factorizations.push(factors);
    }
    Ok(ConjectureVerdict::Witness {
        exponent: witness,
        min_positive: m0,
        factorizations,
        products_verified,
    })
}

/// An integer vector with positive first-row key: the integerized first
/// nonzero row of the order matrix.
fn first_row_witness(order: &MonomialOrder) -> ExponentVector {
    for row in order.matrix() {
        if row.iter().all(|v| v.is_zero()) {
            continue;
        }
        let mut lcm = BigInt::from(1);
        for v in row {
            lcm = num_integer::lcm(lcm, v.denom().clone());
        }
        let ints: Vec<BigInt> = row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
        return ExponentVector::new(ints);
    }
    unreachable!("validated orders have a nonzero row");
}

/// Smallest k ≥ 1 with k·step ≥ target under the order, or None when no
/// multiple reaches the target (the target is in a shallower stratum).
pub fn smallest_reaching_multiple(
    order: &MonomialOrder,
    step: &ExponentVector,
    target: &ExponentVector,
) -> Result<Option<u64>, SeriesError> {
    let s = order.key(step)?;
    let t = order.key(target)?;
    let p = match s.iter().position(|v| !v.is_zero()) {
        Some(p) => p,
        None => return Ok(None), // step is 0; cannot happen for ν(h) > 0
    };
    debug_assert!(s[p].is_positive(), "step must be positive");
    for (q, tv) in t.iter().enumerate().take(p) {
        match tv.cmp(&BigRational::zero()) {
            Ordering::Greater => return Ok(None),
            Ordering::Less => return Ok(Some(1)),
            Ordering::Equal => {
                let _ = q;
            }
        }
    }
    // shared prefix of zeros; compare at position p
    let ratio = &t[p] / &s[p];
    let mut k = ratio.ceil().to_integer().max(BigInt::from(1));
    loop {
        let ke = step.scaled(&k);
        if order.compare(&ke, target)? != Ordering::Less {
            break;
        }
        k += 1;
    }
    Ok(Some(k.to_u64().ok_or(SeriesError::BoundUnreachable {
        cap: u64::MAX,
    })?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{FieldMode, Rational};
    use crate::presentation::{default_torus, quantum_torus};

    fn rat(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn ev(e: &[i64]) -> ExponentVector {
        ExponentVector::from_i64(e)
    }

    fn completion_q2() -> Completion<Rational> {
        Completion::new(default_torus(2).into_arc(), MonomialOrder::lex(2)).unwrap()
    }

    #[test]
    fn commutative_slice_product() {
        // (1 + x1)(1 - x1) = 1 - x1^2 over a commutative torus slice
        let c = Completion::new(
            quantum_torus(FieldMode::Rational, 2, &[rat(1)])
                .unwrap()
                .into_arc(),
            MonomialOrder::lex(2),
        )
        .unwrap();
        let one = c.one();
        let x1 = c.monomial(rat(1), ev(&[1, 0])).unwrap();
        let f = c.add(&one, &x1).unwrap();
        let g = c.sub(&one, &x1).unwrap();
        let prod = c.mul(&f, &g).unwrap();
        let expected = c
            .sub(&one, &c.monomial(rat(1), ev(&[2, 0])).unwrap())
            .unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn torus_swap_factor() {
        let c = completion_q2();
        let x1 = c.monomial(rat(1), ev(&[1, 0])).unwrap();
        let x2 = c.monomial(rat(1), ev(&[0, 1])).unwrap();
        let a = c.mul(&x1, &x2).unwrap();
        let b = c.mul(&x2, &x1).unwrap();
        // x2·x1 = q12·x1·x2 with q12 = 2
        assert_eq!(b.support().get(&ev(&[1, 1])).unwrap(), &rat(2));
        assert_eq!(a.support().get(&ev(&[1, 1])).unwrap(), &rat(1));
    }

    #[test]
    fn bound_propagation_through_mul() {
        let c = completion_q2();
        // inputs exact below (2,0) with ν = 0 stay exact below (2,0)
        let one = c.one();
        let f = c
            .restrict(&one, SeriesBound::Below(ev(&[2, 0])))
            .unwrap();
        let g = c
            .restrict(
                &c.add(&one, &c.monomial(rat(1), ev(&[1, 0])).unwrap()).unwrap(),
                SeriesBound::Below(ev(&[2, 0])),
            )
            .unwrap();
        let prod = c.mul(&f, &g).unwrap();
        assert_eq!(prod.bound(), &SeriesBound::Below(ev(&[2, 0])));
    }

    #[test]
    fn geometric_inverse() {
        let c = completion_q2();
        let one = c.one();
        let x1 = c.monomial(rat(1), ev(&[1, 0])).unwrap();
        let f = c.sub(&one, &x1).unwrap();
        let inv = c.invert(&f, &ev(&[3, 0])).unwrap();
        // 1 + x1 + x1^2 below (3,0)
        assert_eq!(inv.support().len(), 3);
        for k in 0..3 {
            assert_eq!(inv.support().get(&ev(&[k, 0])).unwrap(), &rat(1));
        }
        assert_eq!(inv.bound(), &SeriesBound::Below(ev(&[3, 0])));
    }

    #[test]
    fn monomial_inverse_series() {
        let c = completion_q2();
        let x1 = c.monomial(rat(1), ev(&[1, 0])).unwrap();
        let inv = c.invert(&x1, &ev(&[3, 0])).unwrap();
        let prod = c.mul(&x1, &inv).unwrap();
        let diff = c.sub(&prod, &c.one()).unwrap();
        assert!(diff.support().is_empty());
        assert!(inv.support().contains_key(&ev(&[-1, 0])));
    }

    #[test]
    fn inversion_with_noncommutative_leading_term() {
        // (x2 + x1)^{-1} under lex: ν = (0,1); verified by product check
        let c = completion_q2();
        let f = c
            .add(
                &c.monomial(rat(1), ev(&[0, 1])).unwrap(),
                &c.monomial(rat(1), ev(&[1, 0])).unwrap(),
            )
            .unwrap();
        let inv = c.invert(&f, &ev(&[2, 0])).unwrap();
        let prod = c.mul(&f, &inv).unwrap();
        let diff = c.sub(&prod, &c.one()).unwrap();
        assert!(diff.support().is_empty(), "residual {diff:?}");
    }

    #[test]
    fn inversion_respects_unknown_tails() {
        // f = x1 known only below (2,0): the inverse cannot claim exactness
        // past (0,0) = (2,0) + 2*(-1,0)
        let c = completion_q2();
        let x1 = c.monomial(rat(1), ev(&[1, 0])).unwrap();
        let f = c.restrict(&x1, SeriesBound::Below(ev(&[2, 0]))).unwrap();
        let inv = c.invert(&f, &ev(&[5, 0])).unwrap();
        assert_eq!(inv.bound(), &SeriesBound::Below(ev(&[0, 0])));
        assert!(inv.support().contains_key(&ev(&[-1, 0])));
    }

    #[test]
    fn zero_and_unknown_inversion_errors() {
        let c = completion_q2();
        assert!(matches!(
            c.invert(&c.zero(), &ev(&[1, 0])),
            Err(SeriesError::ZeroSeries)
        ));
        let unknown = c
            .restrict(&c.zero(), SeriesBound::Below(ev(&[0, 5])))
            .unwrap();
        assert!(matches!(
            c.invert(&unknown, &ev(&[1, 0])),
            Err(SeriesError::UnknownLeadingTerm)
        ));
    }

    #[test]
    fn m_power_membership_examples() {
        let c = completion_q2();
        let x1 = c.monomial(rat(1), ev(&[1, 0])).unwrap();
        for i in [1u64, 5, 50] {
            assert!(c.m_power_membership(&x1, i).unwrap());
        }
        let unit = c
            .add(&c.one(), &c.monomial(rat(1), ev(&[1, 0])).unwrap())
            .unwrap();
        assert!(!c.m_power_membership(&unit, 1).unwrap());
        let x2sq = c.monomial(rat(1), ev(&[0, 2])).unwrap();
        assert!(c.m_power_membership(&x2sq, 2).unwrap());
        assert!(!c.m_power_membership(&x2sq, 3).unwrap());
        // monotone: membership in m^{i+1} implies membership in m^i
        for i in 1..6 {
            if c.m_power_membership(&x2sq, i + 1).unwrap() {
                assert!(c.m_power_membership(&x2sq, i).unwrap());
            }
        }
    }

    #[test]
    fn witness_products_are_units() {
        let c = completion_q2();
        let x1 = c.monomial(rat(1), ev(&[1, 0])).unwrap();
        for i in [1u64, 3, 10] {
            let w = c.m_power_witness(&x1, i).unwrap();
            assert_eq!(w.len(), i as usize);
            let unit = c.verify_witness_product(&w, &ev(&[1, 0])).unwrap();
            assert!(unit.is_unit());
        }
    }

    #[test]
    fn conjecture_lex2_yields_stable_witness() {
        let c = completion_q2();
        match c.conjecture_check(25).unwrap() {
            ConjectureVerdict::Witness {
                exponent,
                min_positive,
                factorizations,
                products_verified,
            } => {
                assert_eq!(exponent, ev(&[1, 0]));
                assert_eq!(min_positive, ev(&[0, 1]));
                assert_eq!(factorizations.len(), 25);
                assert!(products_verified);
                // the canonical factorization for i = 3
                assert_eq!(
                    factorizations[2],
                    vec![ev(&[1, -2]), ev(&[0, 1]), ev(&[0, 1])]
                );
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn conjecture_rank_one_trivial() {
        let torus1 = quantum_torus::<Rational>(FieldMode::Rational, 1, &[]).unwrap().into_arc();
        let c = Completion::new(torus1, MonomialOrder::lex(1)).unwrap();
        match c.conjecture_check(100).unwrap() {
            ConjectureVerdict::IntersectionTrivial { depth, .. } => assert_eq!(depth, 100),
            other => panic!("expected trivial intersection, got {other:?}"),
        }
    }

    #[test]
    fn conjecture_unimodular_witness() {
        use num_rational::BigRational;
        let rows = vec![
            vec![
                BigRational::from(BigInt::from(1)),
                BigRational::from(BigInt::from(1)),
            ],
            vec![
                BigRational::from(BigInt::from(0)),
                BigRational::from(BigInt::from(1)),
            ],
        ];
        let ord = MonomialOrder::from_matrix(rows).unwrap();
        let c = Completion::new(default_torus(2).into_arc(), ord).unwrap();
        match c.conjecture_check(50).unwrap() {
            ConjectureVerdict::Witness {
                exponent,
                products_verified,
                ..
            } => {
                assert_eq!(exponent, ev(&[1, 1]));
                assert!(products_verified);
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn series_ring_laws_below_tracked_bound() {
        use rand::Rng;
        use rand::SeedableRng;
        let c = completion_q2();
        let pool = [rat(1), rat(-1), rat(2), Rational::new(1, 2)];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31337);
        let random_series = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut s = c.zero();
            for _ in 0..rng.gen_range(0..4) {
                let e = ev(&[rng.gen_range(-2..=2), rng.gen_range(-2..=2)]);
                let coef = pool[rng.gen_range(0..pool.len())].clone();
                s = c.add(&s, &c.monomial(coef, e).unwrap()).unwrap();
            }
            if rng.gen_bool(0.5) {
                let b = ev(&[rng.gen_range(1..=3), rng.gen_range(-1..=1)]);
                s = c.restrict(&s, SeriesBound::Below(b)).unwrap();
            }
            s
        };
        for _ in 0..300 {
            let f = random_series(&mut rng);
            let g = random_series(&mut rng);
            let h = random_series(&mut rng);
            // associativity and distributivity agree on the common reliable region
            let lhs = c.mul(&c.mul(&f, &g).unwrap(), &h).unwrap();
            let rhs = c.mul(&f, &c.mul(&g, &h).unwrap()).unwrap();
            let common = c.bound_min_public(lhs.bound(), rhs.bound()).unwrap();
            let l = c.restrict(&lhs, common.clone()).unwrap();
            let r = c.restrict(&rhs, common.clone()).unwrap();
            assert_eq!(l.support(), r.support(), "associativity below {common:?}");
            let d_lhs = c.mul(&f, &c.add(&g, &h).unwrap()).unwrap();
            let d_rhs = c
                .add(&c.mul(&f, &g).unwrap(), &c.mul(&f, &h).unwrap())
                .unwrap();
            let common = c.bound_min_public(d_lhs.bound(), d_rhs.bound()).unwrap();
            let l = c.restrict(&d_lhs, common.clone()).unwrap();
            let r = c.restrict(&d_rhs, common).unwrap();
            assert_eq!(l.support(), r.support(), "distributivity");
        }
    }

    #[test]
    fn reaching_multiple_cases() {
        let ord = MonomialOrder::lex(2);
        // step (1,-1) reaches (3,0) at k = 4 (keys (3,-3) < (3,0) at k=3)
        assert_eq!(
            smallest_reaching_multiple(&ord, &ev(&[1, -1]), &ev(&[3, 0])).unwrap(),
            Some(4)
        );
        // step (0,1) never reaches (1,0)
        assert_eq!(
            smallest_reaching_multiple(&ord, &ev(&[0, 1]), &ev(&[1, 0])).unwrap(),
            None
        );
        // negative-direction target is reached immediately
        assert_eq!(
            smallest_reaching_multiple(&ord, &ev(&[0, 1]), &ev(&[-1, 0])).unwrap(),
            Some(1)
        );
    }
}
