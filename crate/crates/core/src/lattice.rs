//! Fraction-free integer linear algebra over ℤ.
//!
//! Everything here works on dense `Vec<Vec<BigInt>>` matrices (rows of equal
//! length). Kernels are computed by unimodular column reduction, so the
//! returned vectors always form a basis of the full kernel lattice, not just
//! a ℚ-basis scaled to integers.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Reduce the integer row `phi` by unimodular column operations, applying the
/// same operations to the columns in `cols`. Returns the columns spanning
/// `ker phi` together with the pivot column (if `phi` was nonzero).
pub(crate) fn reduce_row(
    mut phi: Vec<BigInt>,
    mut cols: Vec<Vec<BigInt>>,
) -> (Vec<Vec<BigInt>>, Option<Vec<BigInt>>) {
    let d = phi.len();
    debug_assert_eq!(cols.len(), d);
    loop {
        let nonzero: Vec<usize> = (0..d).filter(|&j| !phi[j].is_zero()).collect();
        match nonzero.len() {
            0 => return (cols, None),
            1 => {
                let p = nonzero[0];
                let pivot = cols.remove(p);
                return (cols, Some(pivot));
            }
            _ => {
                // Pick the entry of least magnitude as pivot and reduce the rest.
                let p = *nonzero
                    .iter()
                    .min_by_key(|&&j| phi[j].abs())
                    .expect("nonempty");
                for &j in &nonzero {
                    if j == p {
                        continue;
                    }
                    let q = &phi[j] / &phi[p];
                    if !q.is_zero() {
                        phi[j] = &phi[j] - &q * &phi[p];
                        let pivot_col = cols[p].clone();
                        for (dst, src) in cols[j].iter_mut().zip(pivot_col.iter()) {
                            *dst -= &q * src;
                        }
                    }
                }
            }
        }
    }
}

/// Basis of the right kernel `{x ∈ ℤᶜ : A·x = 0}` of an integer matrix.
pub fn kernel_basis(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let c = match rows.first() {
        Some(r) => r.len(),
        None => return Vec::new(),
    };
    // Start from the standard basis of ℤᶜ and intersect with each row kernel.
    let mut basis: Vec<Vec<BigInt>> = (0..c)
        .map(|j| {
            let mut v = vec![BigInt::zero(); c];
            v[j] = BigInt::one();
            v
        })
        .collect();
    for row in rows {
        assert_eq!(row.len(), c, "ragged matrix");
        if basis.is_empty() {
            break;
        }
        let phi: Vec<BigInt> = basis
            .iter()
            .map(|b| row.iter().zip(b.iter()).map(|(r, x)| r * x).sum())
            .collect();
        if phi.iter().all(|v| v.is_zero()) {
            continue;
        }
        let (kept, _pivot) = reduce_row(phi, basis);
        basis = kept;
    }
    basis
}

/// Rank of an integer matrix over ℚ (equivalently over ℤ).
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    match rows.first() {
        Some(r) => r.len() - kernel_basis(rows).len(),
        None => 0,
    }
}

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub fn det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    for r in rows {
        assert_eq!(r.len(), n, "determinant of a non-square matrix");
    }
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Inverse of a unimodular integer matrix. Returns `None` when the matrix is
/// not square with determinant ±1.
pub fn inverse_unimodular(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return None;
    }
    let d = det(rows);
    if !(d.clone().abs()).is_one() {
        return None;
    }
    // Gauss-Jordan over ℚ; integrality of the result follows from det = ±1.
    let mut aug: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> =
                r.iter().map(|v| BigRational::from(v.clone())).collect();
            for j in 0..n {
                row.push(if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            row
        })
        .collect();
    for k in 0..n {
        let pivot_row = (k..n).find(|&i| !aug[i][k].is_zero())?;
        aug.swap(k, pivot_row);
        let pivot = aug[k][k].clone();
        for v in aug[k].iter_mut() {
            *v /= pivot.clone();
        }
        for i in 0..n {
            if i != k && !aug[i][k].is_zero() {
                let factor = aug[i][k].clone();
                let base = aug[k].clone();
                for (dst, src) in aug[i].iter_mut().zip(base.iter()) {
                    *dst -= &factor * src;
                }
            }
        }
    }
    let mut inv = Vec::with_capacity(n);
    for row in &aug {
        let mut out = Vec::with_capacity(n);
        for v in &row[n..] {
            if !v.denom().is_one() {
                return None;
            }
            out.push(v.numer().clone());
        }
        inv.push(out);
    }
    Some(inv)
}

/// gcd of all k×k minors of a k×n integer matrix (k ≤ n). Equals 1 exactly
/// when the matrix defines a surjection ℤⁿ → ℤᵏ.
pub fn minor_gcd(rows: &[Vec<BigInt>]) -> BigInt {
    let k = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    assert!(k <= n, "minor_gcd requires k <= n");
    let mut cols: Vec<usize> = (0..k).collect();
    let mut g = BigInt::zero();
    loop {
        let sub: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        g = g.gcd(&det(&sub));
        if g.is_one() {
            return g;
        }
        // next k-combination of 0..n
        let mut i = k;
        loop {
            if i == 0 {
                return g;
            }
            i -= 1;
            if cols[i] != i + n - k {
                cols[i] += 1;
                for j in i + 1..k {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}
