//! Sparse multivariate polynomials, Gröbner bases and quotient rings.

mod groebner;
mod monomial;
mod multipoly;
mod parse;
mod quotient;

pub use groebner::{groebner_basis, reduce, Budget, Meter, DEFAULT_BUDGET};
pub use monomial::{Monomial, MonomialOrder};
pub use multipoly::MultiPoly;
pub use parse::parse_poly;
pub use quotient::{degree_then_order, Ideal, QuotientRing};
