//! Exact commutative algebra for cubes of modules over polynomial rings.
//!
//! The crate is layered bottom-up: [`arith`] supplies fields and sparse
//! polynomials, [`groebner`] the Buchberger engine for ideals and submodules,
//! [`modcalc`] finitely presented modules and free complexes, [`cube`] the
//! power-set diagrams with their total complexes and admissibility checks,
//! [`koszul`] regular sequences and Koszul cubes, and [`resolve`] the
//! construction of epimorphisms from sums of typical cubes. [`cli`] holds the
//! JSON document formats and the job runner behind the `koszul-lab` binary.

pub mod arith;
pub mod cli;
pub mod cube;
pub mod error;
pub mod groebner;
pub mod koszul;
pub mod modcalc;
pub mod resolve;

pub use error::{Error, Result};
