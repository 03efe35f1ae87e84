use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{Domain, Field};
use super::rational::{rat, Rational};
use crate::error::{Error, Result};

/// Dense univariate polynomial over ℚ in the family parameter `t`.
///
/// Coefficients are indexed by degree; the leading coefficient is nonzero
/// unless the polynomial is zero (empty vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The parameter `t`.
    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `t - a`.
    pub fn linear(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), rat(1)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * at + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// `p(t + a)`, the Taylor shift.
    pub fn shift(&self, a: &Rational) -> Self {
        let lin = Self::new(vec![a.clone(), rat(1)]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc * lin.clone() + Self::constant(c.clone()))
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.leading().ok_or(Error::DivisionByZero)?.clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(other);
        (self.clone() * other.clone()).div_rem(&g).unwrap().0.monic()
    }

    /// Gcd of the rational coefficients, so that `self / content` has
    /// coprime integer coefficients.
    pub fn content(&self) -> Rational {
        let num = self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        Rational::new(num, den)
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for UniPoly {
    fn one() -> Self {
        Self::from_ints(&[1])
    }
}

impl Add for UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: UniPoly) -> UniPoly {
        self + (-rhs)
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Domain for UniPoly {
    fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d).expect("exact division by zero");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

/// Writes a polynomial in `var` with descending degrees, e.g. `t^2 - 1/2*t + 3`.
pub(crate) fn write_univariate(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[Rational],
    var: &str,
) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = c.display_parts();
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        let mono = match deg {
            0 => None,
            1 => Some(var.to_string()),
            d => Some(format!("{var}^{d}")),
        };
        match (mag, mono) {
            (Some(m), Some(x)) => write!(f, "{m}*{x}")?,
            (Some(m), None) => f.write_str(&m)?,
            (None, Some(x)) => f.write_str(&x)?,
            (None, None) => f.write_str("1")?,
        }
    }
    Ok(())
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_univariate(f, &self.coeffs, "t")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::ratio;

    #[test]
    fn division_and_gcd() {
        let p = UniPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let q = UniPoly::from_ints(&[-1, 1]); // t - 1
        let (quo, rem) = p.div_rem(&q).unwrap();
        assert_eq!(quo, UniPoly::from_ints(&[1, 1]));
        assert!(rem.is_zero());
        assert_eq!(p.gcd(&UniPoly::from_ints(&[2, 2])), UniPoly::from_ints(&[1, 1]));
        assert_eq!(UniPoly::zero().gcd(&UniPoly::zero()), UniPoly::zero());
    }

    #[test]
    fn display_is_descending() {
        let p = UniPoly::new(vec![rat(3), ratio(-1, 2), rat(1)]);
        assert_eq!(p.to_string(), "t^2 - 1/2*t + 3");
        assert_eq!(UniPoly::from_ints(&[0, -1]).to_string(), "-t");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }

    #[test]
    fn shift_and_eval_agree() {
        let p = UniPoly::from_ints(&[1, -2, 0, 5]);
        let a = ratio(3, 7);
        let s = p.shift(&a);
        for x in [-2, 0, 1, 4] {
            assert_eq!(s.eval(&rat(x)), p.eval(&(rat(x) + &a)));
        }
    }

    #[test]
    fn content_of_rational_poly() {
        let p = UniPoly::new(vec![ratio(2, 3), ratio(4, 9)]);
        assert_eq!(p.content(), ratio(2, 9));
    }
}
