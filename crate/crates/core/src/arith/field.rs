use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rational;
use crate::error::Result;

/// Commutative ring with unit, used by-value.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Integral domain with exact division, the ground for fraction-free elimination.
pub trait Domain: Ring {
    /// `self / d`, where `d` is known to divide `self`.
    fn exact_div(&self, d: &Self) -> Self;
}

/// Which exact field a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldTag {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Q(t)")]
    RationalFunctions,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => f.write_str("Q"),
            FieldTag::RationalFunctions => f.write_str("Q(t)"),
        }
    }
}

/// Exact coefficient field: the rationals or rational functions in the parameter `t`.
pub trait Field: Ring + fmt::Display + Send + Sync + 'static {
    /// Ring of integral elements used for fraction-free elimination.
    type Integral: Domain;

    const TAG: FieldTag;

    fn inv(&self) -> Result<Self>;

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    fn from_rational(r: Rational) -> Self;

    /// The family parameter `t`, when the field has one.
    fn parameter() -> Option<Self>;

    /// Multiplies a vector by a common denominator so every entry is integral.
    fn clear_denominators(v: &[Self]) -> Vec<Self::Integral>;

    fn from_integral(x: Self::Integral) -> Self;

    /// Rescales a nonzero vector to its canonical representative: integral
    /// entries with content one and a normalized last nonzero entry.
    fn normalize_vector(v: &mut [Self]);

    /// Splits off a sign for display: `(negative, text of the absolute value)`.
    /// The text is `None` when the absolute value is one.
    fn display_parts(&self) -> (bool, Option<String>);
}
