use std::sync::Arc;

use super::derivation::Derivation;
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, QuotientRing};

/// Algebra map `source → target` given by the images of the source variables.
#[derive(Debug, Clone)]
pub struct RingMap<F> {
    source: Arc<QuotientRing<F>>,
    target: Arc<QuotientRing<F>>,
    images: Vec<MultiPoly<F>>,
}

impl<F: Field> RingMap<F> {
    /// Checks that every relation of the source maps to zero in the target.
    pub fn new(source: Arc<QuotientRing<F>>, target: Arc<QuotientRing<F>>, images: Vec<MultiPoly<F>>) -> Result<Self> {
        if images.len() != source.nvars() || images.iter().any(|p| p.nvars() != target.nvars()) {
            return Err(Error::RingMismatch("images do not match the source and target variables".into()));
        }
        let images: Vec<_> = images.iter().map(|p| target.normal_form(p)).collect();
        for (k, f) in source.groebner_basis().iter().enumerate() {
            let image = target.normal_form(&f.substitute(&images));
            if !image.is_zero() {
                return Err(Error::IllDefinedMap { generator: k, image: target.to_text(&image) });
            }
        }
        Ok(RingMap { source, target, images })
    }

    pub fn parse(source: Arc<QuotientRing<F>>, target: Arc<QuotientRing<F>>, images: &[&str]) -> Result<Self> {
        let polys = images.iter().map(|s| target.parse_element(s)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, polys)
    }

    pub fn source(&self) -> &Arc<QuotientRing<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QuotientRing<F>> {
        &self.target
    }

    pub fn images(&self) -> &[MultiPoly<F>] {
        &self.images
    }

    pub fn apply(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        self.target.normal_form(&p.substitute(&self.images))
    }

    /// Verifies that `inverse` undoes `self` on the variables of both rings.
    pub fn check_inverse(&self, inverse: &RingMap<F>) -> Result<()> {
        for i in 0..self.target.nvars() {
            let v = self.target.var(i);
            if self.apply(&inverse.apply(&v)) != self.target.normal_form(&v) {
                return Err(Error::InverseCheckFailed { variable: self.target.names()[i].clone() });
            }
        }
        for i in 0..self.source.nvars() {
            let v = self.source.var(i);
            if inverse.apply(&self.apply(&v)) != self.source.normal_form(&v) {
                return Err(Error::InverseCheckFailed { variable: self.source.names()[i].clone() });
            }
        }
        Ok(())
    }
}

/// Transports `d` along an isomorphism: `φ ∘ D ∘ φ⁻¹`, a derivation of the target.
pub fn pushforward<F: Field>(phi: &RingMap<F>, inverse: &RingMap<F>, d: &Derivation<F>) -> Result<Derivation<F>> {
    phi.check_inverse(inverse)?;
    let target = phi.target();
    let coeffs = (0..target.nvars())
        .map(|k| phi.apply(&d.apply(&inverse.apply(&target.var(k)))))
        .collect();
    Derivation::new(target.clone(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::derivations::bracket;

    fn line() -> Arc<QuotientRing<Rational>> {
        Arc::new(QuotientRing::free(vec!["x".into()]))
    }

    fn iso(f: &str, g: &str) -> (RingMap<Rational>, RingMap<Rational>) {
        let r = line();
        (RingMap::parse(r.clone(), r.clone(), &[f]).unwrap(), RingMap::parse(r.clone(), r, &[g]).unwrap())
    }

    fn field(s: &str) -> Derivation<Rational> {
        Derivation::parse(line(), &[s]).unwrap()
    }

    #[test]
    fn translations_and_scalings() {
        let (phi, psi) = iso("x + 1", "x - 1");
        assert_eq!(pushforward(&phi, &psi, &field("1")).unwrap(), field("1"));
        // conjugation: phi(D(psi(x))) = phi(x) = x + 1
        assert_eq!(pushforward(&phi, &psi, &field("x")).unwrap(), field("x + 1"));
        assert_eq!(pushforward(&psi, &phi, &field("x")).unwrap(), field("x - 1"));
        let (phi, psi) = iso("2*x", "1/2*x");
        assert_eq!(pushforward(&phi, &psi, &field("x")).unwrap(), field("x"));
    }

    #[test]
    fn wrong_inverse_is_rejected() {
        let (phi, _) = iso("x + 1", "x - 1");
        let (bad, _) = iso("x + 2", "x");
        assert!(matches!(pushforward(&phi, &bad, &field("x")), Err(Error::InverseCheckFailed { .. })));
    }

    #[test]
    fn bracket_is_preserved() {
        let (phi, psi) = iso("3*x - 2", "1/3*x + 2/3");
        let (a, b) = (field("x^2 + 1"), field("x^3 - x"));
        let lhs = pushforward(&phi, &psi, &bracket(&a, &b).unwrap()).unwrap();
        let rhs = bracket(&pushforward(&phi, &psi, &a).unwrap(), &pushforward(&phi, &psi, &b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ill_defined_maps_are_rejected() {
        let cusp = Arc::new(
            QuotientRing::<Rational>::parse(&["X", "Y"], &["Y^2 - 4*X^3"], Default::default(), Default::default()).unwrap(),
        );
        let s = Arc::new(QuotientRing::free(vec!["s".into()]));
        assert!(RingMap::parse(cusp.clone(), s.clone(), &["s^2", "2*s^3"]).is_ok());
        assert!(matches!(RingMap::parse(cusp, s, &["s^2", "s^3"]), Err(Error::IllDefinedMap { .. })));
    }
}
