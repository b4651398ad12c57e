//! Construction and verification of optimal weight-3 conflict-avoiding codes
//! of prime length, driven by solvability of the twisted diagonal equation
//! g^2 X^ell + g Y^ell + 1 = 0 over finite fields.
//!
//! The crate is organized bottom-up:
//!
//! * [`nt`] - exact elementary number theory (factorization, totient,
//!   Moebius, multiplicative orders, Ramanujan sums with oracles);
//! * [`field`] - arithmetic in F_p and F_{p^k} with full dlog tables, and
//!   the power-residue / <-1,2> subgroup structure;
//! * [`charsum`] - multiplicative characters and Jacobi sums, with the
//!   character-sum point-count formulas;
//! * [`diagonal`] - brute-force point counting, solvability search, and the
//!   bound sheets;
//! * [`cac`] - the conflict-avoiding-code data model, verifier, and the
//!   optimal builder for prime lengths;
//! * [`scan`] - per-prime solvability verdicts over ranges, and Fibonacci
//!   primitive roots;
//! * [`selftest`] - the embedded reference-witness check suite.
//!
//! Data-parallel sweeps run on rayon when the default `parallel` feature is
//! enabled and degrade to sequential loops without it; see [`exec`].

pub mod cac;
pub mod charsum;
pub mod diagonal;
pub mod error;
pub mod exec;
pub mod field;
pub mod nt;
pub mod scan;
pub mod selftest;
pub mod tables;

pub use error::{Error, Result};
