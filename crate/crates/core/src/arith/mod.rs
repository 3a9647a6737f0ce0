//! Exact coefficient fields and sparse multivariate polynomials.

mod field;
mod monomial;
mod parse;
mod poly;
mod ring;

pub use field::{Field, FieldKind, Fp, Rational};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use poly::{Poly, PolyOp};
pub use ring::{Ring, RingExt, RingRef};

pub(crate) use poly::same_ring;
