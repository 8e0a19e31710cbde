//! Exact computations with finite-dimensional Hopf algebroids given by
//! structure constants over an exact field (the rationals or a prime field).
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar`] — the [`Scalar`](scalar::Scalar) field trait with the two
//!   concrete scalar types, [`Rat`] and [`Fp`](scalar::Fp);
//! * [`linalg`] — dense exact matrices, RREF, kernels, affine solving and
//!   canonical subspaces;
//! * [`algebra`] — unital associative algebras by structure constants;
//! * [`tensor`] — balanced tensor products `A ⊗_B A` as explicit quotients
//!   of the full tensor square, with descent checks for maps;
//! * [`coring`] — corings over a noncommutative base and their comodules;
//! * [`bialgebroid`] — left/right bialgebroids, the four dual algebras,
//!   their actions and the `σ`/`χ` anti-isomorphisms;
//! * [`hopfalgebroid`] — the antipode axioms, derived identities, the
//!   translation map and antipode bijectivity;
//! * [`integrals`] — the six integral spaces, the Maschke / dual Maschke /
//!   Frobenius / quasi-Frobenius decision procedures and the fundamental
//!   isomorphisms;
//! * [`constructions`] — the built-in example catalog (Lu algebroids over a
//!   chosen base algebra, Hopf algebras embedded as base-field algebroids);
//! * [`report`], [`json`] — report data structures and the JSON document
//!   schema used by the command line front end.

pub mod algebra;
pub mod bialgebroid;
pub mod constructions;
pub mod coring;
pub mod hopfalgebroid;
pub mod integrals;
pub mod json;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod tensor;

#[cfg(test)]
pub(crate) mod fixtures;

pub use scalar::{Fp, Scalar};

/// Arbitrary-precision rational scalar.
pub type Rat = num_rational::BigRational;

/// Matrix over the rationals.
pub type MatQ = linalg::Mat<Rat>;
/// Matrix over a prime field.
pub type MatFp = linalg::Mat<Fp>;

/// Algebra over the rationals.
pub type AlgebraQ = algebra::FinAlgebra<Rat>;
/// Algebra over a prime field.
pub type AlgebraFp = algebra::FinAlgebra<Fp>;
