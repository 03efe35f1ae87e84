use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{Field, FieldTag};
use super::rational::Rational;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Element of ℚ(t): `num / den` with `den` monic and coprime to `num`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div_poly(&g);
        let den = den.exact_div_poly(&g);
        let lc = den.leading().unwrap().recip();
        Ok(RatFunc { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn t() -> Self {
        Self::from_poly(UniPoly::t())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    /// Value at `t = at`; a vanishing denominator is a pole.
    pub fn eval(&self, at: &Rational) -> Result<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole { at: at.to_string() });
        }
        Ok(self.num.eval(at) / d)
    }
}

trait ExactDivPoly {
    fn exact_div_poly(&self, d: &UniPoly) -> UniPoly;
}

impl ExactDivPoly for UniPoly {
    fn exact_div_poly(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).expect("gcd is nonzero").0
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: UniPoly::zero(), den: UniPoly::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
}

impl Add for RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(self.num + rhs.num, self.den).unwrap();
        }
        let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        RatFunc::new(num, self.den * rhs.den).unwrap()
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(self.num * rhs.num);
        }
        RatFunc::new(self.num * rhs.num, self.den * rhs.den).unwrap()
    }
}

impl Field for RatFunc {
    type Integral = UniPoly;

    const TAG: FieldTag = FieldTag::RationalFunctions;

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    fn from_rational(r: Rational) -> Self {
        Self::from_poly(UniPoly::constant(r))
    }

    fn parameter() -> Option<Self> {
        Some(Self::t())
    }

    fn clear_denominators(v: &[Self]) -> Vec<UniPoly> {
        let l = v.iter().fold(UniPoly::one(), |acc, x| acc.lcm(&x.den));
        v.iter()
            .map(|x| x.num.clone() * l.exact_div_poly(&x.den))
            .collect()
    }

    fn from_integral(x: UniPoly) -> Self {
        Self::from_poly(x)
    }

    fn normalize_vector(v: &mut [Self]) {
        let polys = Self::clear_denominators(v);
        let g = polys.iter().fold(UniPoly::zero(), |acc, p| acc.gcd(p));
        if g.is_zero() {
            return;
        }
        let reduced: Vec<UniPoly> = polys.iter().map(|p| p.exact_div_poly(&g)).collect();
        let last = reduced.iter().rev().find(|p| !p.is_zero()).unwrap();
        let scale = last.leading().unwrap().recip();
        for (slot, p) in v.iter_mut().zip(reduced) {
            *slot = Self::from_poly(p.scale(&scale));
        }
    }

    fn display_parts(&self) -> (bool, Option<String>) {
        if self.den.is_one() && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
            let lc = self.num.leading().unwrap();
            let neg = *lc < Rational::zero();
            let abs = if neg { -self.num.clone() } else { self.num.clone() };
            return (neg, (!abs.is_one()).then(|| abs.to_string()));
        }
        (false, Some(format!("({self})")))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap = |p: &UniPoly| {
                if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                    format!("({p})")
                } else {
                    p.to_string()
                }
            };
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}
