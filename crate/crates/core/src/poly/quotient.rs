use std::cmp::Ordering;

use super::groebner::{groebner_basis, reduce, Budget, Meter};
use super::monomial::{Monomial, MonomialOrder};
use super::multipoly::MultiPoly;
use super::parse::parse_poly;
use crate::arith::{Field, FieldTag};
use crate::error::{Error, Result};

/// Polynomial ideal with an optional cached reduced Gröbner basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Ideal<F> {
    generators: Vec<MultiPoly<F>>,
    order: MonomialOrder,
    groebner: Option<Vec<MultiPoly<F>>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(generators: Vec<MultiPoly<F>>, order: MonomialOrder) -> Self {
        Ideal { generators, order, groebner: None }
    }

    pub fn generators(&self) -> &[MultiPoly<F>] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// The cached basis, if [`Ideal::groebner`] has run.
    pub fn basis(&self) -> Option<&[MultiPoly<F>]> {
        self.groebner.as_deref()
    }

    /// Computes and caches the reduced basis with respect to `order`.
    pub fn groebner(mut self, order: MonomialOrder, budget: Budget) -> Result<Self> {
        if self.generators.iter().any(MultiPoly::is_zero) {
            return Err(Error::Invalid("ideal generators must be nonzero".into()));
        }
        if self.order != order || self.groebner.is_none() {
            self.groebner = Some(groebner_basis(&self.generators, order, budget)?);
            self.order = order;
        }
        Ok(self)
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.groebner
            .as_ref()
            .is_some_and(|b| b.iter().any(|g| g.leading_monomial(self.order).is_some_and(Monomial::is_one)))
    }
}

/// Affine algebra `K[x_1..x_n] / I` with unique normal forms.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRing<F> {
    names: Vec<String>,
    ideal: Ideal<F>,
}

impl<F: Field> QuotientRing<F> {
    pub fn new(
        names: Vec<String>,
        generators: Vec<MultiPoly<F>>,
        order: MonomialOrder,
        budget: Budget,
    ) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != names.len()) {
            return Err(Error::RingMismatch(format!(
                "generator in {} variables for a ring in {}",
                g.nvars(),
                names.len()
            )));
        }
        let generators: Vec<_> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        let ideal = Ideal::new(generators, order).groebner(order, budget)?;
        Ok(QuotientRing { names, ideal })
    }

    /// Polynomial ring with no relations.
    pub fn free(names: Vec<String>) -> Self {
        QuotientRing { names, ideal: Ideal { generators: Vec::new(), order: MonomialOrder::Grevlex, groebner: Some(Vec::new()) } }
    }

    /// Builds a ring from generator text in the canonical polynomial syntax.
    pub fn parse(names: &[&str], generators: &[&str], order: MonomialOrder, budget: Budget) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let gens = generators
            .iter()
            .map(|g| parse_poly(g, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, gens, order, budget)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.ideal.order
    }

    pub fn field(&self) -> FieldTag {
        F::TAG
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn generators(&self) -> &[MultiPoly<F>] {
        &self.ideal.generators
    }

    pub fn groebner_basis(&self) -> &[MultiPoly<F>] {
        self.ideal.basis().expect("quotient rings always cache a basis")
    }

    pub fn is_zero_ring(&self) -> bool {
        self.ideal.is_unit()
    }

    pub fn var(&self, i: usize) -> MultiPoly<F> {
        MultiPoly::var(self.nvars(), i)
    }

    pub fn parse_element(&self, text: &str) -> Result<MultiPoly<F>> {
        parse_poly(text, &self.names)
    }

    pub fn to_text(&self, p: &MultiPoly<F>) -> String {
        p.to_text(&self.names, self.order())
    }

    /// Unique remainder modulo the ideal.
    pub fn normal_form(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        self.check(p).expect("polynomial from a different ring");
        reduce(p, self.groebner_basis(), self.order(), &mut Meter::unlimited()).expect("unlimited meter")
    }

    /// [`QuotientRing::normal_form`] with reduction steps charged to `meter`.
    pub fn normal_form_metered(&self, p: &MultiPoly<F>, meter: &mut Meter) -> Result<MultiPoly<F>> {
        self.check(p)?;
        reduce(p, self.groebner_basis(), self.order(), meter)
    }

    pub fn contains(&self, p: &MultiPoly<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    fn check(&self, p: &MultiPoly<F>) -> Result<()> {
        if p.nvars() == self.nvars() {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} variables, expected {}", p.nvars(), self.nvars())))
        }
    }

    /// Standard monomials of total degree at most `bound`, by ascending
    /// degree and, within a degree, descending term order.
    pub fn staircase_basis(&self, bound: u32) -> Vec<Monomial> {
        let order = self.order();
        let leads: Vec<&Monomial> =
            self.groebner_basis().iter().map(|g| g.leading_monomial(order).unwrap()).collect();
        let mut out = Vec::new();
        for d in 0..=bound {
            let mut slice: Vec<Monomial> = Monomial::of_degree(self.nvars(), d)
                .into_iter()
                .filter(|m| !leads.iter().any(|l| l.divides(m)))
                .collect();
            slice.sort_by(|a, b| order.cmp(b, a));
            out.extend(slice);
        }
        out
    }

    /// Canonical text of the relations, one entry per basis element.
    pub fn ideal_text(&self) -> Vec<String> {
        self.groebner_basis().iter().map(|g| self.to_text(g)).collect()
    }
}

/// Column key used to lay out unknowns monotonically in the degree bound.
pub fn degree_then_order(order: MonomialOrder, a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| order.cmp(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Rational};

    fn ring(names: &[&str], gens: &[&str], order: MonomialOrder) -> QuotientRing<Rational> {
        QuotientRing::parse(names, gens, order, Budget::default()).unwrap()
    }

    fn texts(r: &QuotientRing<Rational>, ms: &[Monomial]) -> Vec<String> {
        ms.iter().map(|m| r.to_text(&MultiPoly::term(m.clone(), rat(1)))).collect()
    }

    #[test]
    fn cusp_staircase_under_both_orders() {
        // grevlex: X^3 leads, so every monomial of degree <= 2 survives
        let r = ring(&["X", "Y"], &["Y^2 - 4*X^3"], MonomialOrder::Grevlex);
        assert_eq!(texts(&r, &r.staircase_basis(2)), ["1", "X", "Y", "X^2", "X*Y", "Y^2"]);
        assert_eq!(r.to_text(&r.normal_form(&r.parse_element("Y^2").unwrap())), "Y^2");
        assert_eq!(r.to_text(&r.normal_form(&r.parse_element("X^3").unwrap())), "1/4*Y^2");
        // lex with Y ranked first: Y^2 leads
        let s = ring(&["Y", "X"], &["Y^2 - 4*X^3"], MonomialOrder::Lex);
        assert_eq!(texts(&s, &s.staircase_basis(2)), ["1", "Y", "X", "Y*X", "X^2"]);
        assert_eq!(s.to_text(&s.normal_form(&s.parse_element("Y^2").unwrap())), "4*X^3");
    }

    #[test]
    fn laurent_and_free_staircases() {
        let r = ring(&["x", "y"], &["x*y - 1"], MonomialOrder::Grevlex);
        assert_eq!(texts(&r, &r.staircase_basis(2)), ["1", "x", "y", "x^2", "y^2"]);
        let f = QuotientRing::<Rational>::free(vec!["x".into()]);
        assert_eq!(texts(&f, &f.staircase_basis(3)), ["1", "x", "x^2", "x^3"]);
    }

    #[test]
    fn membership_and_zero() {
        let r = ring(&["X", "Y"], &["X^2 - Y", "Y^2 - X"], MonomialOrder::Lex);
        assert!(r.contains(&r.parse_element("X^4 - X").unwrap()));
        assert!(r.normal_form(&MultiPoly::zero(2)).is_zero());
        assert!(!r.contains(&r.parse_element("X").unwrap()));
    }

    #[test]
    fn unit_ideal_is_detected() {
        let r = ring(&["x", "u"], &["x", "u*x - 1"], MonomialOrder::Grevlex);
        assert!(r.is_zero_ring());
    }

    #[test]
    fn mismatched_arity_is_rejected() {
        let r = ring(&["x"], &["x^2"], MonomialOrder::Grevlex);
        let p = MultiPoly::<Rational>::var(2, 1);
        assert!(matches!(r.normal_form_metered(&p, &mut Meter::unlimited()), Err(Error::RingMismatch(_))));
    }
}
