//! Matrices over the polynomial ring, finitely presented modules and bounded
//! free complexes.
//!
//! A module is always a cokernel `A^n / N`; subquotients such as homology are
//! presented on generators of the numerator, and every equality question is
//! reduced to equality of submodules of a fixed free module.

mod complex;
mod matrix;
mod module;

pub use complex::Complex;
pub use matrix::{FreeMap, Matrix};
pub use module::{
    fitting_ideal, is_injective, is_injective_between, is_surjective_onto, is_well_defined, kernel,
    lift_through_surjection, min_annihilating_power, preimage, FPModule,
};
