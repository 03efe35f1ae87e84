use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Domain, Field, FieldTag};
use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-5/7"` and similar fraction strings.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |p: &str| {
        p.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

impl Domain for BigInt {
    fn exact_div(&self, d: &Self) -> Self {
        debug_assert!((self % d).is_zero());
        self / d
    }
}

impl Field for Rational {
    type Integral = BigInt;

    const TAG: FieldTag = FieldTag::Rationals;

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn from_rational(r: Rational) -> Self {
        r
    }

    fn parameter() -> Option<Self> {
        None
    }

    fn clear_denominators(v: &[Self]) -> Vec<BigInt> {
        let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
    }

    fn from_integral(x: BigInt) -> Self {
        Rational::from_integer(x)
    }

    fn normalize_vector(v: &mut [Self]) {
        let ints = Self::clear_denominators(v);
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return;
        }
        let flip = ints.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        for (slot, x) in v.iter_mut().zip(ints) {
            let q = x / &g;
            *slot = Rational::from_integer(if flip { -q } else { q });
        }
    }

    fn display_parts(&self) -> (bool, Option<String>) {
        let a = self.abs();
        (self.is_negative(), (!a.is_one()).then(|| a.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops_on_fractions() {
        assert_eq!(ratio(1, 2) + ratio(1, 3), ratio(5, 6));
        assert_eq!(ratio(6, -4), ratio(-3, 2));
        assert_eq!(ratio(-3, 2).denom(), &BigInt::from(2));
        assert_eq!(rat(0).inv(), Err(Error::DivisionByZero));
        assert_eq!(ratio(2, 3).div(&ratio(4, 9)).unwrap(), ratio(3, 2));
    }

    #[test]
    fn parses_fraction_strings() {
        assert_eq!(parse_rational(" -5/7 ").unwrap(), ratio(-5, 7));
        assert_eq!(parse_rational("12").unwrap(), rat(12));
        assert_eq!(parse_rational("4/6").unwrap().to_string(), "2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn normalization_gives_primitive_integer_vector() {
        let mut v = vec![ratio(2, 3), rat(0), ratio(-1, 3)];
        Rational::normalize_vector(&mut v);
        assert_eq!(v, vec![rat(-2), rat(0), rat(1)]);
    }
}
