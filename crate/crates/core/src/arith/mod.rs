//! Exact scalars: ℚ, ℚ[t] and ℚ(t).

pub mod field;
pub mod ratfunc;
pub mod rational;
pub mod unipoly;

pub use field::{Domain, Field, FieldTag, Ring};
pub use ratfunc::RatFunc;
pub use rational::{parse_rational, rat, ratio, Rational};
pub use unipoly::UniPoly;
pub use num_traits::{One, Zero};
