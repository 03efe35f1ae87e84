use crate::arith::{rat, Field, RatFunc, Rational, UniPoly, Zero};
use crate::error::{Error, Result};
use crate::poly::{parse_poly, Budget, MonomialOrder, MultiPoly, QuotientRing};

/// Affine Weierstrass cubics `Y² = 4(X − e1)(X − e2)(X − e3)` with branch
/// points polynomial in the parameter and summing to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassFamily {
    branch: [UniPoly; 3],
}

impl WeierstrassFamily {
    pub fn new(e1: UniPoly, e2: UniPoly, e3: UniPoly) -> Result<Self> {
        let sum = e1.clone() + e2.clone() + e3.clone();
        if !sum.is_zero() {
            return Err(Error::BranchSum { sum: sum.to_string() });
        }
        Ok(WeierstrassFamily { branch: [e1, e2, e3] })
    }

    /// Branch points given as polynomials in `t`, e.g. `"t"`, `"-t"`, `"0"`.
    pub fn parse(branch: [&str; 3]) -> Result<Self> {
        let [a, b, c] = branch.map(parse_unipoly);
        Self::new(a?, b?, c?)
    }

    pub fn branch_points(&self) -> &[UniPoly; 3] {
        &self.branch
    }

    /// The relation over a field containing the branch points.
    pub fn relation<F: Field>(&self, lift: impl Fn(&UniPoly) -> F) -> MultiPoly<F> {
        let x = MultiPoly::<F>::var(2, 0);
        let y = MultiPoly::<F>::var(2, 1);
        let cubic = self
            .branch
            .iter()
            .fold(MultiPoly::constant(2, F::from_rational(rat(4))), |acc, e| acc * (x.clone() - MultiPoly::constant(2, lift(e))));
        y.clone() * y - cubic
    }

    /// `ℚ(t)[X, Y]/(f)`, the generic fiber.
    pub fn ring(&self, order: MonomialOrder, budget: Budget) -> Result<QuotientRing<RatFunc>> {
        let f = self.relation(|e| RatFunc::from_poly(e.clone()));
        QuotientRing::new(vec!["X".into(), "Y".into()], vec![f], order, budget)
    }

    /// The fiber over `t = t0`.
    pub fn fiber(&self, t0: &Rational, order: MonomialOrder, budget: Budget) -> Result<QuotientRing<Rational>> {
        let f = self.relation(|e| e.eval(t0));
        QuotientRing::new(vec!["X".into(), "Y".into()], vec![f], order, budget)
    }

    /// `16 (e1 − e2)² (e1 − e3)² (e2 − e3)²`.
    pub fn discriminant(&self) -> UniPoly {
        let [a, b, c] = &self.branch;
        let sq = |p: UniPoly| p.clone() * p;
        UniPoly::constant(rat(16)) * sq(a.clone() - b.clone()) * sq(a.clone() - c.clone()) * sq(b.clone() - c.clone())
    }
}

pub fn discriminant(family: &WeierstrassFamily) -> UniPoly {
    family.discriminant()
}

/// Parses a polynomial in `t` with rational coefficients.
pub fn parse_unipoly(text: &str) -> Result<UniPoly> {
    let p = parse_poly::<RatFunc>(text, &[])?;
    let c = p.as_constant().unwrap_or_else(RatFunc::zero);
    if !c.is_polynomial() {
        return Err(Error::Parse(format!("`{text}` is not a polynomial in t")));
    }
    Ok(c.num().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::smoothness_check;

    #[test]
    fn expansion_and_discriminant() {
        let w = WeierstrassFamily::parse(["1", "-1", "0"]).unwrap();
        let r = w.fiber(&rat(0), MonomialOrder::Grevlex, Budget::default()).unwrap();
        assert_eq!(r.to_text(&r.generators()[0]), "-4*X^3 + Y^2 + 4*X");
        assert_eq!(w.discriminant(), UniPoly::constant(rat(64)));
        let d = WeierstrassFamily::parse(["t", "-t", "0"]).unwrap().discriminant();
        assert_eq!(d, UniPoly::from_ints(&[0, 0, 0, 0, 0, 0, 64]));
        assert!(WeierstrassFamily::parse(["0", "0", "0"]).unwrap().discriminant().is_zero());
    }

    #[test]
    fn branch_sum_is_enforced() {
        assert!(matches!(WeierstrassFamily::parse(["t", "t", "0"]), Err(Error::BranchSum { .. })));
    }

    #[test]
    fn generic_fiber_is_smooth() {
        let w = WeierstrassFamily::parse(["t", "-t", "0"]).unwrap();
        let r = w.ring(MonomialOrder::Grevlex, Budget::default()).unwrap();
        assert!(smoothness_check(&r).unwrap());
        let cusp = w.fiber(&rat(0), MonomialOrder::Grevlex, Budget::default()).unwrap();
        assert!(!smoothness_check(&cusp).unwrap());
    }

    #[test]
    fn parses_parameter_polynomials() {
        assert_eq!(parse_unipoly("t^2 - 1/2").unwrap(), UniPoly::new(vec![crate::arith::ratio(-1, 2), rat(0), rat(1)]));
        assert!(parse_unipoly("1/t").is_err());
    }
}
