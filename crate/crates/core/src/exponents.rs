//! Exponent lattices ℤⁿ, total monomial orders given by rational matrices,
//! positive cones and cone powers.
//!
//! A monomial order compares `g` and `h` by comparing the rational key
//! vectors `M·g` and `M·h` lexicographically. The matrix is required to be
//! injective on ℤⁿ (full column rank over ℚ), so distinct lattice points
//! never compare equal. Every order representable this way has a minimal
//! positive element; it is computed once at construction by restricting the
//! rows to successively deeper kernel sublattices.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice;

/// A point of ℤⁿ: the `u` in `x^u`, a Γ-value, or a series exponent.
///
/// Arbitrary-precision entries; which slots may be negative is a property of
/// the surrounding ring (checked there), not of the vector itself.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExponentVector(Vec<BigInt>);

impl ExponentVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        ExponentVector(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        ExponentVector(entries.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![BigInt::zero(); n])
    }

    /// Standard basis vector e_i (0-based index).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::one();
        ExponentVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn entry(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        ExponentVector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        ExponentVector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Sum of absolute values of the entries; the degree |u| of x^u, extended
    /// to Laurent exponents.
    pub fn abs_degree(&self) -> BigInt {
        self.0.iter().map(|v| v.abs()).sum()
    }

    /// True when every slot with index ≥ `laurent` (0-based) is nonnegative,
    /// i.e. the vector is a legal monomial exponent for a ring with `laurent`
    /// invertible generators.
    pub fn respects_laurent(&self, laurent: usize) -> bool {
        self.0.iter().skip(laurent).all(|v| !v.is_negative())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("dimension mismatch: order is on Z^{expected}, vector has length {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("order matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("order matrix rows have unequal lengths")]
    RaggedMatrix,
    #[error("order matrix is not injective on the lattice; kernel contains {kernel}")]
    NotInjective { kernel: ExponentVector },
    #[error("exponent is not a sum of {count} positive vectors")]
    NotInCone { count: u64 },
    #[error("order has no minimal positive element")]
    NoMinimalElement,
}

/// Classification of a monomial order matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    /// The identity matrix: plain lexicographic order.
    Lex,
    /// A square integer matrix with determinant ±1.
    Unimodular,
    /// Any other rational matrix injective on ℤⁿ.
    General,
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::Lex => write!(f, "lex"),
            OrderKind::Unimodular => write!(f, "unimodular"),
            OrderKind::General => write!(f, "general"),
        }
    }
}

/// A total order on ℤⁿ given by a rational matrix: `g < h` iff `M·g < M·h`
/// lexicographically over the rational rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    n: usize,
    matrix: Vec<Vec<BigRational>>,
    kind: OrderKind,
    min_positive: Option<ExponentVector>,
}

impl MonomialOrder {
    /// The lexicographic order on ℤⁿ.
    pub fn lex(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        MonomialOrder {
            n,
            matrix,
            kind: OrderKind::Lex,
            min_positive: Some(ExponentVector::unit(n, n - 1)),
        }
    }

    /// Build an order from a rational matrix, classifying it and rejecting
    /// matrices that are not injective on ℤⁿ (the returned error carries an
    /// integer kernel witness).
    pub fn from_matrix(matrix: Vec<Vec<BigRational>>) -> Result<Self, OrderError> {
        let k = matrix.len();
        if k == 0 {
            return Err(OrderError::EmptyMatrix);
        }
        let n = matrix[0].len();
        if n == 0 {
            return Err(OrderError::EmptyMatrix);
        }
        if matrix.iter().any(|r| r.len() != n) {
            return Err(OrderError::RaggedMatrix);
        }
        let int_rows: Vec<Vec<BigInt>> = matrix.iter().map(|r| integerize_row(r)).collect();
        let kernel = lattice::kernel_basis(&int_rows);
        if let Some(witness) = kernel.into_iter().next() {
            return Err(OrderError::NotInjective {
                kernel: ExponentVector::new(witness),
            });
        }
        let is_identity = k == n
            && matrix.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, v)| {
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            });
        let integral = k == n && matrix.iter().flatten().all(|v| v.denom().is_one());
        let kind = if is_identity {
            OrderKind::Lex
        } else if integral {
            let int_square: Vec<Vec<BigInt>> = matrix
                .iter()
                .map(|r| r.iter().map(|v| v.numer().clone()).collect())
                .collect();
            if lattice::det(&int_square).abs().is_one() {
                OrderKind::Unimodular
            } else {
                OrderKind::General
            }
        } else {
            OrderKind::General
        };
        let min_positive = match kind {
            OrderKind::Lex => Some(ExponentVector::unit(n, n - 1)),
            OrderKind::Unimodular => {
                let int_square: Vec<Vec<BigInt>> = matrix
                    .iter()
                    .map(|r| r.iter().map(|v| v.numer().clone()).collect())
                    .collect();
                let inv = lattice::inverse_unimodular(&int_square)
                    .expect("unimodular matrix has an integer inverse");
                // M⁻¹ applied to (0,…,0,1): the last column of M⁻¹.
                Some(ExponentVector::new(
                    inv.iter().map(|row| row[n - 1].clone()).collect(),
                ))
            }
            OrderKind::General => min_positive_general(&int_rows, n),
        };
        Ok(MonomialOrder {
            n,
            matrix,
            kind,
            min_positive,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn matrix(&self) -> &[Vec<BigRational>] {
        &self.matrix
    }

    fn check_dim(&self, v: &ExponentVector) -> Result<(), OrderError> {
        if v.dim() != self.n {
            return Err(OrderError::DimensionMismatch {
                expected: self.n,
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// The rational key vector M·g used for comparison.
    pub fn key(&self, g: &ExponentVector) -> Result<Vec<BigRational>, OrderError> {
        self.check_dim(g)?;
        Ok(self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(g.entries())
                    .map(|(m, e)| m * BigRational::from(e.clone()))
                    .sum()
            })
            .collect())
    }

    /// Total-order comparison of two exponents.
    pub fn compare(&self, u: &ExponentVector, v: &ExponentVector) -> Result<Ordering, OrderError> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        if u == v {
            return Ok(Ordering::Equal);
        }
        // Compare row keys one at a time; injectivity guarantees a difference.
        for row in &self.matrix {
            let mut acc = BigRational::zero();
            for (m, (a, b)) in row.iter().zip(u.entries().iter().zip(v.entries())) {
                acc += m * BigRational::from(a - b);
            }
            match acc.cmp(&BigRational::zero()) {
                Ordering::Equal => continue,
                ord => return Ok(ord),
            }
        }
        // Unreachable for validated orders.
        Ok(Ordering::Equal)
    }

    /// True when g > 0 in this order (g lies in the positive cone A).
    pub fn is_positive(&self, g: &ExponentVector) -> Result<bool, OrderError> {
        Ok(self.compare(g, &ExponentVector::zero(self.n))? == Ordering::Greater)
    }

    /// The minimal element of the positive cone, when one exists.
    ///
    /// Orders given by rational matrices always have one; the `Option` is
    /// kept for the dense-order convention of callers.
    pub fn min_positive(&self) -> Option<&ExponentVector> {
        self.min_positive.as_ref()
    }

    /// Membership of `g` in the i-fold cone power iA (sums of i positive
    /// vectors). With a minimal positive element m₀ this is exactly
    /// `g ≥ i·m₀`; for a dense cone it degenerates to `g ∈ A`.
    pub fn cone_power_membership(&self, g: &ExponentVector, i: u64) -> Result<bool, OrderError> {
        assert!(i >= 1, "cone power index must be >= 1");
        self.check_dim(g)?;
        match &self.min_positive {
            Some(m0) => {
                let threshold = m0.scaled(&BigInt::from(i));
                Ok(self.compare(g, &threshold)? != Ordering::Less)
            }
            None => self.is_positive(g),
        }
    }

    /// A concrete decomposition of `g` into i positive summands: i−1 copies
    /// of the minimal positive element and one remainder.
    pub fn factor_into_positives(
        &self,
        g: &ExponentVector,
        i: u64,
    ) -> Result<Vec<ExponentVector>, OrderError> {
        assert!(i >= 1, "cone power index must be >= 1");
        self.check_dim(g)?;
        let m0 = self
            .min_positive
            .as_ref()
            .ok_or(OrderError::NoMinimalElement)?;
        if !self.cone_power_membership(g, i)? {
            return Err(OrderError::NotInCone { count: i });
        }
        let mut parts = Vec::with_capacity(i as usize);
        let rest = m0.scaled(&BigInt::from(i - 1));
        parts.push(g.sub(&rest));
        for _ in 1..i {
            parts.push(m0.clone());
        }
        debug_assert!(parts.iter().all(|p| self.is_positive(p).unwrap()));
        debug_assert_eq!(
            parts
                .iter()
                .fold(ExponentVector::zero(self.n), |acc, p| acc.add(p)),
            *g
        );
        Ok(parts)
    }

    /// The positive cone A = {g : g > 0} of this order.
    pub fn positive_cone(&self) -> PositiveCone {
        PositiveCone {
            order: self.clone(),
        }
    }
}

/// The positive cone A = {g ∈ ℤⁿ : g > 0} of a monomial order.
#[derive(Clone, Debug)]
pub struct PositiveCone {
    order: MonomialOrder,
}

impl PositiveCone {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn contains(&self, g: &ExponentVector) -> Result<bool, OrderError> {
        self.order.is_positive(g)
    }

    pub fn power_contains(&self, g: &ExponentVector, i: u64) -> Result<bool, OrderError> {
        self.order.cone_power_membership(g, i)
    }

    pub fn factor(&self, g: &ExponentVector, i: u64) -> Result<Vec<ExponentVector>, OrderError> {
        self.order.factor_into_positives(g, i)
    }
}

/// Clear denominators of a rational row, keeping the direction.
fn integerize_row(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in row {
        lcm = num_integer::lcm(lcm, v.denom().clone());
    }
    row.iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect()
}

/// Minimal positive element for a general injective rational-matrix order.
///
/// Rows are applied to a shrinking sublattice: each effective row cuts the
/// current lattice down to its kernel, and positive elements of the deeper
/// lattice precede all positive elements outside it. The minimum therefore
/// lives in the last rank-1 lattice and is decided there by the first
/// effective row.
fn min_positive_general(int_rows: &[Vec<BigInt>], n: usize) -> Option<ExponentVector> {
    let mut basis: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut v = vec![BigInt::zero(); n];
            v[j] = BigInt::one();
            v
        })
        .collect();
    for row in int_rows {
        let phi: Vec<BigInt> = basis
            .iter()
            .map(|b| row.iter().zip(b.iter()).map(|(r, x)| r * x).sum())
            .collect();
        if phi.iter().all(|v| v.is_zero()) {
            continue;
        }
        if basis.len() == 1 {
            let b = basis.pop().expect("rank-1 basis");
            let v = ExponentVector::new(b);
            return Some(if phi[0].is_positive() { v } else { v.neg() });
        }
        // Restrict to the kernel of this row within the current lattice.
        let phi_in_basis = phi;
        let cols: Vec<Vec<BigInt>> = (0..basis.len())
            .map(|j| {
                let mut e = vec![BigInt::zero(); basis.len()];
                e[j] = BigInt::one();
                e
            })
            .collect();
        let (kernel_cols, _pivot) = reduce_combination(phi_in_basis, cols);
        basis = kernel_cols
            .into_iter()
            .map(|combo| {
                let mut acc = vec![BigInt::zero(); n];
                for (c, b) in combo.iter().zip(basis.iter()) {
                    for (dst, src) in acc.iter_mut().zip(b.iter()) {
                        *dst += c * src;
                    }
                }
                acc
            })
            .collect();
    }
    // Rank-deficient matrix: rejected before this point.
    None
}

/// Unimodular column reduction of a single row with combination tracking.
fn reduce_combination(
    phi: Vec<BigInt>,
    cols: Vec<Vec<BigInt>>,
) -> (Vec<Vec<BigInt>>, Option<Vec<BigInt>>) {
    crate::lattice::reduce_row(phi, cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> BigRational {
        BigRational::from(BigInt::from(v))
    }

    fn order_from(rows: &[&[i64]]) -> Result<MonomialOrder, OrderError> {
        MonomialOrder::from_matrix(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    fn ev(entries: &[i64]) -> ExponentVector {
        ExponentVector::from_i64(entries)
    }

    #[test]
    fn lex_compare_basics() {
        let ord = MonomialOrder::lex(2);
        assert_eq!(ord.compare(&ev(&[0, 1]), &ev(&[1, 0])).unwrap(), Ordering::Less);
        assert_eq!(
            ord.compare(&ev(&[0, 0]), &ev(&[0, 0])).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn swapped_matrix_reverses_lex() {
        let ord = order_from(&[&[0, 1], &[1, 0]]).unwrap();
        // keys: (0,1) -> (1,0), (1,0) -> (0,1), so (0,1) is now the bigger one
        assert_eq!(
            ord.compare(&ev(&[0, 1]), &ev(&[1, 0])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn translation_invariance_spot() {
        let ord = order_from(&[&[2, 3], &[0, 1]]).unwrap();
        let (u, v, w) = (ev(&[1, -4]), ev(&[-2, 3]), ev(&[5, 7]));
        assert_eq!(
            ord.compare(&u, &v).unwrap(),
            ord.compare(&u.add(&w), &v.add(&w)).unwrap()
        );
    }

    #[test]
    fn kind_classification() {
        assert_eq!(order_from(&[&[1, 0], &[0, 1]]).unwrap().kind(), OrderKind::Lex);
        assert_eq!(
            order_from(&[&[1, 1], &[0, 1]]).unwrap().kind(),
            OrderKind::Unimodular
        );
        assert_eq!(
            order_from(&[&[2, 3], &[0, 1]]).unwrap().kind(),
            OrderKind::General
        );
    }

    #[test]
    fn non_injective_matrix_rejected_with_witness() {
        let err = order_from(&[&[2, 3]]).unwrap_err();
        match err {
            OrderError::NotInjective { kernel } => {
                // kernel witness solves 2a + 3b = 0
                let a = kernel.entry(0);
                let b = kernel.entry(1);
                assert_eq!(a * 2 + b * 3, BigInt::zero());
                assert!(!kernel.is_zero());
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn min_positive_lex() {
        assert_eq!(
            MonomialOrder::lex(2).min_positive(),
            Some(&ev(&[0, 1]))
        );
        assert_eq!(MonomialOrder::lex(1).min_positive(), Some(&ev(&[1])));
    }

    #[test]
    fn min_positive_unimodular_matches_inverse_column() {
        let ord = order_from(&[&[1, 1], &[0, 1]]).unwrap();
        // inverse is [[1,-1],[0,1]]; last column is (-1, 1)
        assert_eq!(ord.min_positive(), Some(&ev(&[-1, 1])));
        assert!(ord.is_positive(&ev(&[-1, 1])).unwrap());
    }

    /// The weight order [[2,3],[0,1]] does have a minimal positive element:
    /// the kernel of the first row is generated by (3,-2), and the second
    /// row orients it to (-3,2) with key (0,2); no positive vector has a
    /// smaller key. A box scan certifies minimality.
    #[test]
    fn min_positive_weight_order_exists_and_is_minimal_in_box() {
        let ord = order_from(&[&[2, 3], &[0, 1]]).unwrap();
        let m0 = ord.min_positive().expect("general rational orders have a minimum").clone();
        assert_eq!(m0, ev(&[-3, 2]));
        assert!(ord.is_positive(&m0).unwrap());
        for x in -20..=20i64 {
            for y in -20..=20i64 {
                let g = ev(&[x, y]);
                if ord.is_positive(&g).unwrap() {
                    assert_ne!(
                        ord.compare(&g, &m0).unwrap(),
                        Ordering::Less,
                        "positive {g} compares below claimed minimum {m0}"
                    );
                }
            }
        }
    }

    #[test]
    fn general_path_agrees_with_unimodular_path() {
        for rows in [
            vec![vec![1i64, 1], vec![0, 1]],
            vec![vec![2, 1], vec![1, 1]],
            vec![vec![1, 0, 0], vec![2, 1, 0], vec![3, 0, 1]],
        ] {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let ord = order_from(&refs).unwrap();
            assert_eq!(ord.kind(), OrderKind::Unimodular);
            let int_rows: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            let via_filtration = min_positive_general(&int_rows, rows.len()).unwrap();
            assert_eq!(ord.min_positive(), Some(&via_filtration));
        }
    }

    #[test]
    fn cone_power_membership_lex_closed_form() {
        let ord = MonomialOrder::lex(2);
        for n in 1..=100u64 {
            assert!(ord.cone_power_membership(&ev(&[1, 0]), n).unwrap());
        }
        for n in 2..=10u64 {
            assert!(!ord
                .cone_power_membership(&ev(&[0, n as i64 - 1]), n)
                .unwrap());
        }
        assert!(!ord.cone_power_membership(&ev(&[0, 0]), 1).unwrap());
    }

    #[test]
    fn factor_into_positives_examples() {
        let ord = MonomialOrder::lex(2);
        assert_eq!(
            ord.factor_into_positives(&ev(&[1, 0]), 3).unwrap(),
            vec![ev(&[1, -2]), ev(&[0, 1]), ev(&[0, 1])]
        );
        assert_eq!(
            ord.factor_into_positives(&ev(&[0, 3]), 3).unwrap(),
            vec![ev(&[0, 1]), ev(&[0, 1]), ev(&[0, 1])]
        );
        assert!(matches!(
            ord.factor_into_positives(&ev(&[0, 2]), 3),
            Err(OrderError::NotInCone { count: 3 })
        ));
    }

    #[test]
    fn cone_additivity_spot() {
        let ord = order_from(&[&[2, 3], &[0, 1]]).unwrap();
        let mut positives = Vec::new();
        for x in -4..=4i64 {
            for y in -4..=4i64 {
                let g = ev(&[x, y]);
                if ord.is_positive(&g).unwrap() {
                    positives.push(g);
                }
            }
        }
        for a in &positives {
            for b in &positives {
                assert!(ord.is_positive(&a.add(b)).unwrap());
            }
        }
    }

    #[test]
    fn dimension_mismatch_reported() {
        let ord = MonomialOrder::lex(2);
        assert!(matches!(
            ord.compare(&ev(&[1]), &ev(&[0, 0])),
            Err(OrderError::DimensionMismatch { .. })
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn test_orders(n: usize) -> Vec<MonomialOrder> {
            let mut orders = vec![MonomialOrder::lex(n)];
            // a unimodular upper-triangular twist of lex
            let rows: Vec<Vec<BigRational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                BigRational::one()
                            } else if j == i + 1 {
                                BigRational::from(BigInt::from(1))
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            orders.push(MonomialOrder::from_matrix(rows).unwrap());
            if n == 2 {
                // the general weight order from the examples
                orders.push(
                    MonomialOrder::from_matrix(vec![
                        vec![BigRational::from(BigInt::from(2)), BigRational::from(BigInt::from(3))],
                        vec![BigRational::zero(), BigRational::one()],
                    ])
                    .unwrap(),
                );
            }
            orders
        }

        fn vec_strategy(n: usize) -> impl Strategy<Value = Vec<i64>> {
            proptest::collection::vec(-20i64..=20, n)
        }

        proptest! {
            #[test]
            fn order_laws(n in 1usize..=4, mut raw in proptest::collection::vec(-20i64..=20, 12)) {
                raw.truncate(3 * n);
                let u = ExponentVector::from_i64(&raw[0..n]);
                let v = ExponentVector::from_i64(&raw[n..2 * n]);
                let w = ExponentVector::from_i64(&raw[2 * n..3 * n]);
                for ord in test_orders(n) {
                    // trichotomy
                    let uv = ord.compare(&u, &v).unwrap();
                    prop_assert_eq!(uv == Ordering::Equal, u == v);
                    prop_assert_eq!(ord.compare(&v, &u).unwrap(), uv.reverse());
                    // transitivity
                    let vw = ord.compare(&v, &w).unwrap();
                    if uv != Ordering::Greater && vw != Ordering::Greater {
                        prop_assert_ne!(ord.compare(&u, &w).unwrap(), Ordering::Greater);
                    }
                    // translation invariance
                    prop_assert_eq!(
                        ord.compare(&u.add(&w), &v.add(&w)).unwrap(),
                        uv
                    );
                }
            }

            #[test]
            fn cone_additive(a in vec_strategy(2), b in vec_strategy(2)) {
                for ord in test_orders(2) {
                    let (a, b) = (ExponentVector::from_i64(&a), ExponentVector::from_i64(&b));
                    if ord.is_positive(&a).unwrap() && ord.is_positive(&b).unwrap() {
                        prop_assert!(ord.is_positive(&a.add(&b)).unwrap());
                    }
                }
            }

            #[test]
            fn factor_output_sums_and_is_positive(
                g in vec_strategy(2),
                i in 1u64..=5,
            ) {
                for ord in test_orders(2) {
                    let g = ExponentVector::from_i64(&g);
                    if let Ok(parts) = ord.factor_into_positives(&g, i) {
                        prop_assert_eq!(parts.len(), i as usize);
                        let mut sum = ExponentVector::zero(2);
                        for p in &parts {
                            prop_assert!(ord.is_positive(p).unwrap());
                            sum = sum.add(p);
                        }
                        prop_assert_eq!(sum, g);
                    }
                }
            }
        }
    }
}
