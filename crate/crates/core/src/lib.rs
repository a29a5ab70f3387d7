//! Exact convex-polytope calculus with an algebraic back end.
//!
//! The crate builds parametric rational polytopes, computes their volume
//! polynomials symbolically, constructs the Khovanskii-Pukhlikov ring
//! (differential operators modulo the annihilator of the volume polynomial),
//! and verifies the projective-bundle structure of push-pull (Cayley sum)
//! polytope families, Grossberg-Karshon cubes and the FFLV / Bott-Samelson
//! polytope tower. All arithmetic is exact; no floating point is used in any
//! computational path.

pub mod error;
pub mod linalg;
pub mod mpoly;
pub mod rat;

pub mod polytope;

pub mod khp;
pub mod pushpull;

pub mod fflv;
pub mod tower;
pub mod weyl;

pub mod gallery;
pub mod sample;

pub use error::Error;
pub use mpoly::MPoly;
pub use rat::Rat;
