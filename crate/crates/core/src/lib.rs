//! Exact computer algebra for skew PBW extensions and skew quantum polynomial
//! rings.
//!
//! The crate is organised around a small set of interlocking pieces:
//!
//! * [`exponents`]: exponent lattices ℤⁿ, matrix monomial orders, positive
//!   cones and cone powers;
//! * [`coeffs`]: exact coefficient scalars (ℚ, 𝔽ₚ, ℚ(t₁..tₘ), ℤ), ring
//!   automorphisms, derivations and genericity of multiparameter systems;
//! * [`presentation`]: declaration and validation of a skew PBW / skew
//!   quantum ring, iterated skew polynomial form, associated graded ring,
//!   scalar extension ℤ → ℚ;
//! * [`elements`]: normal-form arithmetic, the adjacent-transposition
//!   rewriting engine and an independent word-reduction oracle;
//! * [`valuation`]: the leading-exponent valuation, valuation-ring
//!   classification, comparison of valuations and Archimedean power bounds;
//! * [`completion`]: truncated Hahn series over ℤⁿ, series inversion,
//!   powers of the maximal ideal and the intersection diagnostic;
//! * [`frontend`]: presentation/expression parsing, deterministic printing
//!   and the `skewpbw` command line interface.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! throughout, no floating point anywhere.
//!
//! The core is generic over the scalar type through the [`coeffs::Scalar`]
//! trait; the concrete instantiations used by the CLI are re-exported below
//! as type aliases.

pub mod coeffs;
pub mod completion;
pub mod elements;
pub mod exponents;
pub mod frontend;
pub mod lattice;
pub mod presentation;
#[doc(hidden)]
pub mod testkit;
pub mod valuation;

pub use coeffs::{Automorphism, Derivation, FieldMode, Fp, Integer, RatFunc, Rational, Scalar};
pub use elements::Element;
pub use exponents::{ExponentVector, MonomialOrder, PositiveCone};
pub use presentation::Presentation;

/// Ring element with rational coefficients.
pub type RatElement = Element<Rational>;
/// Ring element with prime-field coefficients.
pub type FpElement = Element<Fp>;
/// Ring element with multivariate rational-function coefficients.
pub type RatFuncElement = Element<RatFunc>;
/// Ring element with integer coefficients (ℤ mode, no division).
pub type IntElement = Element<Integer>;

/// Presentation over ℚ.
pub type RatPresentation = Presentation<Rational>;
/// Presentation over a prime field.
pub type FpPresentation = Presentation<Fp>;
/// Presentation over ℚ(t₁..tₘ).
pub type RatFuncPresentation = Presentation<RatFunc>;
/// Presentation over ℤ.
pub type IntPresentation = Presentation<Integer>;

/// Truncated Hahn series with rational coefficients.
pub type RatSeries = completion::HahnSeries<Rational>;
