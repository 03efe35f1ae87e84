use std::sync::Arc;

use serde::Serialize;

use super::derivation::{CoordinateIndex, Derivation};
use super::solver::{derivation_basis, DerivationBasis};
use crate::arith::{RatFunc, Rational};
use crate::error::{Error, Result};
use crate::linalg::SparseEliminator;
use crate::poly::{Budget, MultiPoly, QuotientRing};

/// Polynomial with coefficients evaluated at `t = t0`.
pub fn evaluate_poly(p: &MultiPoly<RatFunc>, t0: &Rational) -> Result<MultiPoly<Rational>> {
    p.try_map_coeffs(|c| c.eval(t0))
}

/// The fiber `B ⊗ ℚ` at `t = t0`, built by substituting into the original
/// generators and recomputing the Gröbner basis over ℚ.
pub fn fiber_ring(ring: &QuotientRing<RatFunc>, t0: &Rational, budget: Budget) -> Result<QuotientRing<Rational>> {
    let gens = ring
        .generators()
        .iter()
        .map(|g| evaluate_poly(g, t0))
        .collect::<Result<Vec<_>>>()?;
    if gens.iter().any(MultiPoly::is_zero) {
        return Err(Error::Invalid(format!("a relation vanishes identically at t = {t0}")));
    }
    QuotientRing::new(ring.names().to_vec(), gens, ring.order(), budget)
}

impl Derivation<RatFunc> {
    /// Evaluates every coefficient at `t0` and re-checks tangency on the fiber.
    pub fn specialize(&self, t0: &Rational, fiber: &Arc<QuotientRing<Rational>>) -> Result<Derivation<Rational>> {
        let coeffs = self
            .coeffs()
            .iter()
            .map(|g| evaluate_poly(g, t0))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(fiber.clone(), coeffs)
    }
}

impl DerivationBasis<RatFunc> {
    /// Specialized images, reduced to an independent spanning subset in
    /// basis order. The result is not flagged complete: it is an image, not a
    /// solve on the fiber.
    pub fn specialize(&self, t0: &Rational, fiber: &Arc<QuotientRing<Rational>>) -> Result<DerivationBasis<Rational>> {
        let mut index = CoordinateIndex::new();
        let mut elim = SparseEliminator::new();
        let mut kept = Vec::new();
        for d in self.basis() {
            let s = d.specialize(t0, fiber)?;
            if elim.insert(s.coordinates(&mut index)) {
                kept.push(s);
            }
        }
        Ok(DerivationBasis::from_parts(fiber.clone(), self.degree_bound(), kept, false))
    }
}

/// Comparison of the fiber's own derivations with the specialized family ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseChangeReport {
    pub t0: String,
    pub degree_bound: u32,
    /// Dimension of the solved fiber slice.
    pub dim_lhs: usize,
    /// Dimension of the span of the specialized family slice.
    pub dim_rhs: usize,
    pub rhs_in_lhs: bool,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Solves on the fiber at `t0` and on the family, specializes the latter and
/// compares. A mismatch is a finding, not an error.
pub fn base_change_check(
    family: &Arc<QuotientRing<RatFunc>>,
    t0: &Rational,
    degree_bound: u32,
    budget: Budget,
) -> Result<BaseChangeReport> {
    let generic = derivation_basis(family, degree_bound, budget)?;
    base_change_with(&generic, t0, budget)
}

/// [`base_change_check`] reusing an already solved family slice.
pub fn base_change_with(
    generic: &DerivationBasis<RatFunc>,
    t0: &Rational,
    budget: Budget,
) -> Result<BaseChangeReport> {
    let fiber = Arc::new(fiber_ring(generic.ring(), t0, budget)?);
    let lhs = derivation_basis(&fiber, generic.degree_bound(), budget)?;
    let rhs = generic.specialize(t0, &fiber)?;
    let rhs_in_lhs = lhs.contains_span_of(rhs.basis());
    Ok(BaseChangeReport {
        t0: t0.to_string(),
        degree_bound: generic.degree_bound(),
        dim_lhs: lhs.len(),
        dim_rhs: rhs.len(),
        rhs_in_lhs,
        matches: rhs_in_lhs && lhs.len() == rhs.len(),
    })
}
