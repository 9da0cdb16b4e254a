//! Deterministic random generators shared by the unit and acceptance tests.
//!
//! Not part of the public API surface.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;

use crate::coeffs::Scalar;
use crate::elements::{normalize_word, Element, Word};
use crate::exponents::ExponentVector;
use crate::presentation::Presentation;

/// A random legal exponent: Laurent slots range over ±bound, the others over
/// 0..=bound.
pub fn random_exponent<R: Rng>(rng: &mut R, p_n: usize, laurent: usize, bound: i64) -> ExponentVector {
    let entries = (0..p_n)
        .map(|i| {
            if i < laurent {
                BigInt::from(rng.gen_range(-bound..=bound))
            } else {
                BigInt::from(rng.gen_range(0..=bound))
            }
        })
        .collect();
    ExponentVector::new(entries)
}

/// A random element with at most `max_terms` terms and per-slot exponents
/// bounded by `deg_bound`; coefficients are drawn from `pool` (nonzero).
pub fn random_element<K: Scalar, R: Rng>(
    rng: &mut R,
    p: &Arc<Presentation<K>>,
    max_terms: usize,
    deg_bound: i64,
    pool: &[K],
) -> Element<K> {
    let terms = rng.gen_range(0..=max_terms);
    let mut acc = Element::zero(p);
    for _ in 0..terms {
        let u = random_exponent(rng, p.n(), p.laurent_count(), deg_bound);
        let c = pool[rng.gen_range(0..pool.len())].clone();
        let m = Element::monomial(p, c, u).expect("random exponent is legal");
        acc = acc.checked_add(&m).expect("same presentation");
    }
    acc
}

/// A nonzero random element.
pub fn random_nonzero_element<K: Scalar, R: Rng>(
    rng: &mut R,
    p: &Arc<Presentation<K>>,
    max_terms: usize,
    deg_bound: i64,
    pool: &[K],
) -> Element<K> {
    loop {
        let f = random_element(rng, p, max_terms, deg_bound, pool);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random raw word: generator letters (inverse allowed on the Laurent
/// block) with occasional coefficient letters.
pub fn random_word<K: Scalar, R: Rng>(
    rng: &mut R,
    p: &Arc<Presentation<K>>,
    max_gens: usize,
    pool: &[K],
) -> Word<K> {
    let gens = rng.gen_range(0..=max_gens);
    let mut w = Word::new();
    for _ in 0..gens {
        if rng.gen_ratio(1, 4) {
            w = w.coeff(pool[rng.gen_range(0..pool.len())].clone());
        }
        let index = rng.gen_range(0..p.n());
        if index < p.laurent_count() && rng.gen_bool(0.4) {
            w = w.gen_inv(index);
        } else {
            w = w.gen(index);
        }
    }
    if rng.gen_ratio(1, 3) {
        w = w.coeff(pool[rng.gen_range(0..pool.len())].clone());
    }
    w
}

/// Reduce a word through the oracle; panics on illegal words (the generators
/// above only produce legal ones).
pub fn word_element<K: Scalar>(p: &Arc<Presentation<K>>, w: &Word<K>) -> Element<K> {
    normalize_word(p, w).expect("random words are legal")
}
