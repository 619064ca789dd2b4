//! Exact symbolic-numeric verification of left-invariant contact structures
//! and uniform-lattice existence on low-dimensional solvable Lie groups.
//!
//! The crate carries a catalog of five-dimensional unimodular solvable
//! contact Lie algebras (plus Heisenberg, special-affine, and weighted
//! double-Heisenberg families), exterior calculus over their duals, exact
//! polynomial and matrix decompositions, lattice-existence certificates with
//! their verifiers, reciprocal-integer obstructions for the non-lattice
//! entries, and the symplectic-collar identities `L_X Omega = Omega` on
//! `(catalog group) x interval`.
//!
//! Everything structural is computed in exact arithmetic (arbitrary-precision
//! rationals, real quadratic fields, quarter-turn trigonometry); floating
//! point appears only in explicitly tolerance-controlled layers (root
//! approximation, simultaneous eigenbases, matrix exponentials) and every
//! tolerance is stated at the call site.
//!
//! Start with the runnable examples (`cargo run --example catalog_tour`) or
//! the batch CLI (`cargo run -- all`).

pub mod algebra;
pub mod boundary;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod exterior;
pub mod lattice;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
pub use scalar::{Scalar, ScalarField};
