use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{Monomial, MonomialOrder};
use crate::arith::{rat, Field};

/// Sparse polynomial in a fixed number of variables over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Terms sorted by descending `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &F)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some(low) = m.lower(i) {
                let e = m.exponents()[i] as i64;
                out.add_term(low, c.clone() * F::from_rational(rat(e)));
            }
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        self.terms.iter().fold(F::zero(), |acc, (m, c)| {
            let v = m
                .exponents()
                .iter()
                .zip(point)
                .fold(c.clone(), |v, (&e, x)| (0..e).fold(v, |v, _| v * x.clone()));
            acc + v
        })
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the
    /// images' ring.
    pub fn substitute(&self, images: &[MultiPoly<F>]) -> MultiPoly<F> {
        let target = images.first().map_or(0, |p| p.nvars);
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (&e, img) in m.exponents().iter().zip(images) {
                if e > 0 {
                    t = &t * &img.pow(e);
                }
            }
            out = out + t;
        }
        out
    }

    pub fn map_coeffs<G: Field>(&self, mut f: impl FnMut(&F) -> G) -> MultiPoly<G> {
        MultiPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<MultiPoly<G>, E> {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Canonical text: descending `order`, explicit `^`, `*` between factors.
    pub fn to_text(&self, names: &[String], order: MonomialOrder) -> String {
        Text { poly: self, names, order }.to_string()
    }
}

struct Text<'a, F> {
    poly: &'a MultiPoly<F>,
    names: &'a [String],
    order: MonomialOrder,
}

impl<F: Field> fmt::Display for Text<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.poly.sorted_terms(self.order).into_iter().enumerate() {
            let (neg, mag) = c.display_parts();
            match (idx == 0, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            match (mag, m.is_one()) {
                (Some(s), true) => f.write_str(&s)?,
                (None, true) => f.write_str("1")?,
                (Some(s), false) => {
                    write!(f, "{s}*")?;
                    m.write(f, self.names)?;
                }
                (None, false) => m.write(f, self.names)?,
            }
        }
        Ok(())
    }
}

impl<F: Field> Add for MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn add(mut self, rhs: MultiPoly<F>) -> MultiPoly<F> {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<F: Field> Sub for MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn sub(mut self, rhs: MultiPoly<F>) -> MultiPoly<F> {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<F: Field> Neg for MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn neg(self) -> MultiPoly<F> {
        MultiPoly { nvars: self.nvars, terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<'a, F: Field> Add<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn add(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        self.clone() + rhs.clone()
    }
}

impl<'a, F: Field> Sub<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn sub(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, F: Field> Mul<&'a MultiPoly<F>> for &'a MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn mul(self, rhs: &MultiPoly<F>) -> MultiPoly<F> {
        let mut out = MultiPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x.clone() * y.clone());
            }
        }
        out
    }
}

impl<F: Field> Mul for MultiPoly<F> {
    type Output = MultiPoly<F>;

    fn mul(self, rhs: MultiPoly<F>) -> MultiPoly<F> {
        &self * &rhs
    }
}

impl<F: Field> MultiPoly<F> {
    /// Rewrites the polynomial in a ring with `nvars` variables, sending
    /// variable `i` to variable `map[i]`.
    pub fn reembed(&self, nvars: usize, map: &[usize]) -> MultiPoly<F> {
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, One, RatFunc, Rational};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn canonical_text_descends() {
        let x = MultiPoly::<Rational>::var(2, 0);
        let y = MultiPoly::<Rational>::var(2, 1);
        let f = &(&y * &y) - &(&(&x * &x) * &x).scale(&rat(4));
        assert_eq!(f.to_text(&names(&["X", "Y"]), MonomialOrder::Grevlex), "-4*X^3 + Y^2");
        assert_eq!(f.to_text(&names(&["X", "Y"]), MonomialOrder::Lex), "-4*X^3 + Y^2");
        let g = MultiPoly::<Rational>::one(2) - x.clone();
        assert_eq!(g.to_text(&names(&["X", "Y"]), MonomialOrder::Grevlex), "-X + 1");
    }

    #[test]
    fn parametric_coefficients_display() {
        let x = MultiPoly::<RatFunc>::var(1, 0);
        let t2 = RatFunc::t() * RatFunc::t();
        let p = x.scale(&(t2.clone() * RatFunc::from_rational(rat(4)))) + MultiPoly::constant(1, t2 + RatFunc::one());
        assert_eq!(p.to_text(&names(&["X"]), MonomialOrder::Grevlex), "4*t^2*X + (t^2 + 1)");
    }

    #[test]
    fn derivative_and_substitution() {
        let x = MultiPoly::<Rational>::var(1, 0);
        let p = x.pow(3).scale(&rat(2)) + x.clone();
        assert_eq!(p.derivative(0), x.pow(2).scale(&rat(6)) + MultiPoly::one(1));
        let shifted = p.substitute(&[x.clone() + MultiPoly::one(1)]);
        assert_eq!(shifted.eval(&[rat(1)]), p.eval(&[rat(2)]));
    }
}
