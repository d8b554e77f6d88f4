//! Exact computations on the Alexander invariant of a genus-g surface group.
//!
//! The surface group is presented as
//! `pi = < x_1, ..., x_2g | [x_1, x_{g+1}] ... [x_g, x_2g] >` with the symplectic
//! basis `a_i = x_i`, `b_i = x_{g+i}`. The crate covers:
//!
//! * [`words`]: free-group words, the surface relator and substitution endomorphisms.
//! * [`laurent`]: the group algebra `QH`, its augmentation ideal `J` and J-adic valuations.
//! * [`fox`]: Fox calculus and the Alexander invariant `A = H_1(pi^(2); Q)` with its
//!   J-adic filtration.
//! * [`symrep`]: weights, the Weyl dimension formula for `sp(2g)` and highest weight
//!   vectors in `Sym^n(H) (x) Lambda^2 H`.
//! * [`magnus`]: truncated Magnus expansions, lower central series depth and Johnson
//!   homomorphisms.
//! * [`mapclass`]: separating Dehn twists and their action on `A`.
//! * [`checks`]: registered checks, JSON reports and the `verify-all` suite.
//!
//! All arithmetic is exact: coefficients are arbitrary-precision rationals.

pub mod checks;
pub mod error;
pub mod fox;
pub mod laurent;
pub mod linalg;
pub mod magnus;
pub mod mapclass;
pub mod symrep;
pub mod words;

pub use error::{Error, Result};
pub use fox::AlexVector;
pub use laurent::LaurentPoly;
pub use magnus::TruncatedSeries;
pub use symrep::{DominantWeight, TensorElement};
pub use words::{EndoImages, FreeWord, Letter};

/// Arbitrary-precision rational used for every coefficient in the crate.
pub type Rational = num_rational::BigRational;
