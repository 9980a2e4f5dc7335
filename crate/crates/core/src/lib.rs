//! Exact engine for hyper-Kähler-with-torsion (HKT) structures on Lie algebras.
//!
//! Everything is computed over ℚ(√2) with no rounding. Basis indices in the
//! public API are 1-based, matching the usual `e_1 … e_n` notation; internal
//! storage is 0-based.

#![no_std]
// index loops read closer to the formulas than iterator chains
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod catalog;
pub mod constructions;
pub mod error;
pub mod forms;
pub mod geometry;
pub mod lie;
pub mod linalg;
pub mod scalar;

pub use error::Error;
pub use forms::KForm;
pub use lie::LieAlgebra;
pub use linalg::{linear_solve, span_closure, ClosureRule, LinearSolution, Matrix};
pub use scalar::Scalar;
