use serde::Serialize;

use super::solver::DerivationBasis;
use crate::arith::{RatFunc, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::liealg::StructureConstants;

/// How the Lie algebra over `ℚ[t]` is presented.
#[derive(Debug, Clone)]
pub enum Presentation {
    /// Free module on named generators with a bracket table over `ℚ[t]`.
    FreeBasis { labels: Vec<String>, table: StructureConstants<UniPoly> },
    /// Derivations of a family of rings, solved over `ℚ(t)`.
    DerModule(DerivationBasis<RatFunc>),
}

/// A Lie algebra over `A = ℚ[t]` with the augmentation `a ↦ a(t0)`.
#[derive(Debug, Clone)]
pub struct DeformationFamily {
    presentation: Presentation,
    augmentation: Rational,
}

impl DeformationFamily {
    /// Free presentation; Jacobi is checked identically in `t`.
    pub fn free(labels: Vec<String>, table: StructureConstants<UniPoly>, augmentation: Rational) -> Result<Self> {
        if labels.len() != table.dim() {
            return Err(Error::Invalid(format!("{} labels for a {}-dimensional table", labels.len(), table.dim())));
        }
        if !table.is_complete() {
            return Err(Error::Invalid("a free family needs every bracket defined".into()));
        }
        if let Some((i, j, k)) = table.jacobi_violation() {
            return Err(Error::Jacobi { i, j, k });
        }
        Ok(DeformationFamily { presentation: Presentation::FreeBasis { labels, table }, augmentation })
    }

    pub fn der_module(basis: DerivationBasis<RatFunc>, augmentation: Rational) -> Self {
        DeformationFamily { presentation: Presentation::DerModule(basis), augmentation }
    }

    /// `𝔤 ⊗ ℚ[t]` with the bracket of `𝔤` extended bilinearly.
    pub fn current_algebra(labels: Vec<String>, table: &StructureConstants<Rational>, augmentation: Rational) -> Result<Self> {
        Self::free(labels, table.constant_family(), augmentation)
    }

    /// `𝔤 ⊗ ℚ[t]` with bracket `scale(t) · [,]`.
    pub fn scaled(
        labels: Vec<String>,
        table: &StructureConstants<Rational>,
        scale: &UniPoly,
        augmentation: Rational,
    ) -> Result<Self> {
        Self::free(labels, table.constant_family().scale(scale), augmentation)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn augmentation(&self) -> &Rational {
        &self.augmentation
    }

    pub fn with_augmentation(&self, t0: Rational) -> Self {
        DeformationFamily { presentation: self.presentation.clone(), augmentation: t0 }
    }

    fn table(&self) -> Result<&StructureConstants<UniPoly>> {
        match &self.presentation {
            Presentation::FreeBasis { table, .. } => Ok(table),
            Presentation::DerModule(_) => {
                Err(Error::Invalid("operation needs a free presentation; a derivation module need not be free".into()))
            }
        }
    }

    /// Bracket table of the fiber at `t0`.
    pub fn specialize(&self, t0: &Rational) -> Result<StructureConstants<Rational>> {
        Ok(self.table()?.evaluate(t0))
    }

    /// `𝔤 ⊗_A ℚ` along the augmentation: the quotient by
    /// `span{a·x − ε(a)·x}`, realized by evaluating the table.
    pub fn fiber_ideal_quotient(&self) -> Result<StructureConstants<Rational>> {
        self.specialize(&self.augmentation)
    }
}

/// Verdict of the product-type test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductTypeVerdict {
    pub applicable: bool,
    pub is_product_type: bool,
    /// First pair `(i, j)` whose reduced bracket differs from the reference.
    pub witness: Option<(usize, usize)>,
    pub explanation: String,
}

/// Checks that the family reduces to `reference` along the augmentation.
/// Bilinearity over `ℚ[t]` holds by construction of a free presentation.
pub fn product_type_check(family: &DeformationFamily, reference: &StructureConstants<Rational>) -> ProductTypeVerdict {
    let Presentation::FreeBasis { table, .. } = family.presentation() else {
        return ProductTypeVerdict {
            applicable: false,
            is_product_type: false,
            witness: None,
            explanation: "derivation-module presentation is not known to be free; product type is undefined".into(),
        };
    };
    if table.dim() != reference.dim() {
        return ProductTypeVerdict {
            applicable: true,
            is_product_type: false,
            witness: None,
            explanation: format!("family has rank {}, reference has dimension {}", table.dim(), reference.dim()),
        };
    }
    let fiber = table.evaluate(family.augmentation());
    for j in 0..table.dim() {
        for i in 0..j {
            if fiber.bracket(i, j) != reference.bracket(i, j) {
                return ProductTypeVerdict {
                    applicable: true,
                    is_product_type: false,
                    witness: Some((i, j)),
                    explanation: format!("bracket ({i}, {j}) at t = {} differs from the reference", family.augmentation()),
                };
            }
        }
    }
    ProductTypeVerdict {
        applicable: true,
        is_product_type: true,
        witness: None,
        explanation: format!("bracket at t = {} reproduces the reference", family.augmentation()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn sl2() -> StructureConstants<Rational> {
        StructureConstants::from_entries(
            3,
            vec![((0, 1), vec![(2, rat(1))]), ((2, 0), vec![(0, rat(2))]), ((2, 1), vec![(1, rat(-2))])],
        )
        .unwrap()
    }

    fn labels() -> Vec<String> {
        vec!["e".into(), "f".into(), "h".into()]
    }

    #[test]
    fn current_algebra_is_product_type() {
        let fam = DeformationFamily::current_algebra(labels(), &sl2(), rat(0)).unwrap();
        assert!(product_type_check(&fam, &sl2()).is_product_type);
        assert_eq!(fam.fiber_ideal_quotient().unwrap(), sl2());
        assert_eq!(fam.specialize(&rat(7)).unwrap(), sl2());
    }

    #[test]
    fn scaled_family_fibers() {
        let t_minus_1 = UniPoly::from_ints(&[-1, 1]);
        let fam = DeformationFamily::scaled(labels(), &sl2(), &t_minus_1, rat(0)).unwrap();
        assert!(fam.specialize(&rat(1)).unwrap().is_abelian());
        let negated = sl2().scale(&rat(-1));
        assert_eq!(fam.specialize(&rat(0)).unwrap(), negated);
        let v = product_type_check(&fam, &sl2());
        assert!(!v.is_product_type);
        assert_eq!(v.witness, Some((0, 1)));
        assert!(product_type_check(&fam, &negated).is_product_type);
    }

    #[test]
    fn entry_evaluation() {
        // [x, y] = (t^2 + 1) z and [x, z] = t y over a 3-dim basis
        let table = StructureConstants::from_entries(
            3,
            vec![((0, 1), vec![(2, UniPoly::from_ints(&[1, 0, 1]))]), ((0, 2), vec![(1, UniPoly::t())])],
        )
        .unwrap();
        let q = table.evaluate(&rat(0));
        assert_eq!(q.bracket(0, 1), Some(vec![(2, rat(1))]));
        assert_eq!(q.bracket(0, 2), Some(vec![]));
    }

    #[test]
    fn jacobi_violation_rejected_at_construction() {
        let bad = StructureConstants::from_entries(
            3,
            vec![((0, 1), vec![(0, UniPoly::t())]), ((0, 2), vec![(1, UniPoly::from_ints(&[1]))])],
        )
        .unwrap();
        assert!(matches!(DeformationFamily::free(labels(), bad, rat(0)), Err(Error::Jacobi { .. })));
    }
}
