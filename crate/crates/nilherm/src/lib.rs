//! Exact-arithmetic toolkit for 2-step nilpotent Lie algebras carrying
//! invariant complex structures and Hermitian metrics.
//!
//! Everything is computed over arbitrary-precision rationals: structure
//! constants, Nijenhuis tensors, the nilpotency step of a complex structure,
//! Bismut torsion forms, pluriclosed criteria, and the HKT condition. The
//! crate also implements the explicit constructions for this class of
//! algebras: Heisenberg and free 2-step algebras with their complex
//! structures, the complex 2-step and 3-step data assemblies (with exact
//! extraction and round trips), symmetric-pair nilalgebras, and naturally
//! reductive algebras built from representations of compact Lie algebras.
//!
//! Start with [`lie::LieAlgebra`] and [`lie::parse_salamon`], put a
//! [`complex::ComplexStructure`] on it, and wrap both with a Gram matrix in a
//! [`hermitian::MetricComplexTriple`] to reach the metric machinery. The
//! `examples/` directory has one runnable program per capability; the
//! `nilherm` binary exposes the same functionality as subcommands
//! (`parse`, `construct`, `analyze`, `check`, `verify`).

pub mod complex;
pub mod construct;
pub mod error;
pub mod hermitian;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod rational;
pub mod sample;
pub mod verify;

pub use error::{Error, Result};
