use super::derivation::Derivation;
use super::solver::DerivationBasis;
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, ExactMatrix};
use crate::poly::QuotientRing;

/// Fields in a solved slice that vanish at a point.
#[derive(Debug, Clone)]
pub struct VanishingSubalgebra<F> {
    pub sub_basis: Vec<Derivation<F>>,
    pub codimension: usize,
}

/// Rank of the Jacobian of the relations at `point`.
pub fn jacobian_rank<F: Field>(ring: &QuotientRing<F>, point: &[F]) -> usize {
    let gens = ring.groebner_basis();
    let rows = gens
        .iter()
        .map(|f| (0..ring.nvars()).map(|i| f.derivative(i).eval(point)).collect())
        .collect();
    ExactMatrix::from_rows(ring.nvars(), rows).expect("rectangular").rank()
}

/// Checks that `point` lies on the curve cut out by the ring and is smooth there.
pub fn check_curve_point<F: Field>(ring: &QuotientRing<F>, point: &[F]) -> Result<()> {
    let text = || format!("({})", point.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    if point.len() != ring.nvars() || ring.groebner_basis().iter().any(|f| !f.eval(point).is_zero()) {
        return Err(Error::PointNotOnVariety { point: text() });
    }
    if jacobian_rank(ring, point) + 1 != ring.nvars() {
        return Err(Error::SingularPoint { point: text() });
    }
    Ok(())
}

/// Elements of the span of `basis` whose coefficients all vanish at `point`.
pub fn vanishing_subalgebra<F: Field>(basis: &DerivationBasis<F>, point: &[F]) -> Result<VanishingSubalgebra<F>> {
    let ring = basis.ring();
    check_curve_point(ring, point)?;
    let n = ring.nvars();
    let rows = (0..n)
        .map(|i| basis.basis().iter().map(|d| d.coeffs()[i].eval(point)).collect())
        .collect();
    let eval = ExactMatrix::from_rows(basis.len(), rows)?;
    let sub_basis: Vec<Derivation<F>> = nullspace(&eval)
        .into_iter()
        .map(|v| {
            v.iter()
                .zip(basis.basis())
                .filter(|(c, _)| !c.is_zero())
                .fold(Derivation::zero(ring.clone()), |acc, (c, d)| acc.add(&d.scale(c)).expect("same ring"))
        })
        .collect();
    Ok(VanishingSubalgebra { codimension: basis.len() - sub_basis.len(), sub_basis })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::{rat, Rational};
    use crate::derivations::derivation_basis;
    use crate::poly::Budget;

    fn line_basis() -> DerivationBasis<Rational> {
        derivation_basis(&Arc::new(QuotientRing::free(vec!["x".into()])), 3, Budget::default()).unwrap()
    }

    #[test]
    fn vanishing_at_origin() {
        let v = vanishing_subalgebra(&line_basis(), &[rat(0)]).unwrap();
        assert_eq!(v.codimension, 1);
        let texts: Vec<_> = v.sub_basis.iter().map(|d| d.to_text()[0].clone()).collect();
        assert_eq!(texts, ["x", "x^2", "x^3"]);
    }

    #[test]
    fn vanishing_at_one() {
        let v = vanishing_subalgebra(&line_basis(), &[rat(1)]).unwrap();
        assert_eq!(v.codimension, 1);
        let texts: Vec<_> = v.sub_basis.iter().map(|d| d.to_text()[0].clone()).collect();
        assert_eq!(texts, ["x - 1", "x^2 - 1", "x^3 - 1"]);
    }

    #[test]
    fn off_curve_and_singular_points() {
        let cusp = Arc::new(
            QuotientRing::<Rational>::parse(&["X", "Y"], &["Y^2 - 4*X^3"], Default::default(), Budget::default()).unwrap(),
        );
        let b = derivation_basis(&cusp, 2, Budget::default()).unwrap();
        assert!(matches!(vanishing_subalgebra(&b, &[rat(1), rat(0)]), Err(Error::PointNotOnVariety { .. })));
        assert!(matches!(vanishing_subalgebra(&b, &[rat(0), rat(0)]), Err(Error::SingularPoint { .. })));
        assert!(vanishing_subalgebra(&b, &[rat(1), rat(2)]).is_ok());
    }
}
