use std::collections::BTreeMap;
use std::sync::Arc;

use super::derivation::{bracket, CoordinateIndex, Derivation};
use crate::arith::Field;
use crate::error::Result;
use crate::linalg::{nullspace, ExactMatrix, SparseEliminator};
use crate::poly::{Budget, Monomial, MultiPoly, QuotientRing};

/// Degree-truncated slice of the derivation module.
#[derive(Debug, Clone)]
pub struct DerivationBasis<F> {
    ring: Arc<QuotientRing<F>>,
    degree_bound: u32,
    basis: Vec<Derivation<F>>,
    complete: bool,
}

impl<F: Field> DerivationBasis<F> {
    pub(crate) fn from_parts(
        ring: Arc<QuotientRing<F>>,
        degree_bound: u32,
        basis: Vec<Derivation<F>>,
        complete: bool,
    ) -> Self {
        DerivationBasis { ring, degree_bound, basis, complete }
    }

    pub fn ring(&self) -> &Arc<QuotientRing<F>> {
        &self.ring
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn basis(&self) -> &[Derivation<F>] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// True when the solver ran to the stated bound, so every tangent field
    /// with coefficients of degree at most the bound lies in the span.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// True when `d` lies in the span of the basis.
    pub fn spans(&self, d: &Derivation<F>) -> bool {
        let mut index = CoordinateIndex::new();
        let mut elim = SparseEliminator::new();
        for b in &self.basis {
            elim.insert(b.coordinates(&mut index));
        }
        elim.contains(d.coordinates(&mut index))
    }

    /// True when every element of `other` lies in the span of `self`.
    pub fn contains_span_of(&self, other: &[Derivation<F>]) -> bool {
        let mut index = CoordinateIndex::new();
        let mut elim = SparseEliminator::new();
        for b in &self.basis {
            elim.insert(b.coordinates(&mut index));
        }
        other.iter().all(|d| elim.contains(d.coordinates(&mut index)))
    }

    /// All pairwise brackets `[b_i, b_j]` for `i < j`.
    pub fn brackets(&self) -> Vec<((usize, usize), Derivation<F>)> {
        let mut out = Vec::new();
        for j in 0..self.basis.len() {
            for i in 0..j {
                out.push(((i, j), bracket(&self.basis[i], &self.basis[j]).expect("same ring")));
            }
        }
        out
    }
}

/// Solves for every tangent vector field whose coefficients have total
/// degree at most `degree_bound`.
///
/// Unknowns are the staircase coordinates of each coefficient, laid out by
/// ascending monomial degree so that the basis at bound `d` is a prefix of
/// the basis at bound `d + 1`.
pub fn derivation_basis<F: Field>(
    ring: &Arc<QuotientRing<F>>,
    degree_bound: u32,
    budget: Budget,
) -> Result<DerivationBasis<F>> {
    let mut meter = budget.meter();
    let n = ring.nvars();
    let stairs = ring.staircase_basis(degree_bound);
    let gens = ring.groebner_basis();
    let partials: Vec<Vec<MultiPoly<F>>> =
        gens.iter().map(|f| (0..n).map(|i| f.derivative(i)).collect()).collect();

    // column (m, i) holds the coefficient of m in g_i
    let mut columns: Vec<Vec<((usize, Monomial), F)>> = Vec::with_capacity(stairs.len() * n);
    let mut rows: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for m in &stairs {
        for i in 0..n {
            let mut col = Vec::new();
            for (j, parts) in partials.iter().enumerate() {
                if parts[i].is_zero() {
                    continue;
                }
                let image = ring.normal_form_metered(&parts[i].mul_term(m, &F::one()), &mut meter)?;
                for (mono, c) in image.terms() {
                    let key = (j, mono.clone());
                    let next = rows.len();
                    rows.entry(key.clone()).or_insert(next);
                    col.push((key, c.clone()));
                }
            }
            columns.push(col);
        }
    }
    let mut matrix = ExactMatrix::zeros(rows.len(), columns.len());
    for (c, col) in columns.iter().enumerate() {
        for (key, v) in col {
            matrix.set(rows[key], c, v.clone());
        }
    }
    meter.charge((rows.len() * columns.len()) as u64 / 64)?;
    let basis = nullspace(&matrix)
        .into_iter()
        .map(|v| {
            let mut coeffs = vec![MultiPoly::zero(n); n];
            for (c, x) in v.into_iter().enumerate() {
                if !x.is_zero() {
                    coeffs[c % n].add_term(stairs[c / n].clone(), x);
                }
            }
            Derivation::from_parts(ring.clone(), coeffs)
        })
        .collect();
    Ok(DerivationBasis { ring: ring.clone(), degree_bound, basis, complete: true })
}

/// Outcome of the rank-one freeness test.
#[derive(Debug, Clone)]
pub struct FreenessReport<F> {
    /// A generator `D0` with `span(b · D0) = basis` up to the bound, if one exists.
    pub generator: Option<Derivation<F>>,
    pub rank_one_free: bool,
}

/// Greedy test whether the bounded slice equals `B · D0` for one of its
/// own elements `D0`. Only decides the rank-one case up to the bound.
pub fn rank_one_freeness<F: Field>(basis: &DerivationBasis<F>) -> FreenessReport<F> {
    let ring = basis.ring();
    let stairs = ring.staircase_basis(basis.degree_bound());
    for d0 in basis.basis() {
        let multiples: Vec<Derivation<F>> = stairs
            .iter()
            .map(|m| d0.mul_element(&MultiPoly::term(m.clone(), F::one())))
            .filter(|d| d.degree().is_none_or(|e| e <= basis.degree_bound()))
            .collect();
        let span = DerivationBasis::from_parts(ring.clone(), basis.degree_bound(), multiples, false);
        if span.contains_span_of(basis.basis()) {
            return FreenessReport { generator: Some(d0.clone()), rank_one_free: true };
        }
    }
    FreenessReport { generator: None, rank_one_free: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::poly::MonomialOrder;

    fn ring(names: &[&str], gens: &[&str]) -> Arc<QuotientRing<Rational>> {
        Arc::new(QuotientRing::parse(names, gens, MonomialOrder::Grevlex, Budget::default()).unwrap())
    }

    fn texts(b: &DerivationBasis<Rational>) -> Vec<Vec<String>> {
        b.basis().iter().map(Derivation::to_text).collect()
    }

    #[test]
    fn all_fields_on_the_line() {
        let r = Arc::new(QuotientRing::free(vec!["x".into()]));
        let b = derivation_basis(&r, 3, Budget::default()).unwrap();
        assert_eq!(texts(&b), [["1"], ["x"], ["x^2"], ["x^3"]]);
        assert!(b.is_complete());
    }

    #[test]
    fn cusp_contains_euler_and_hamiltonian() {
        let r = ring(&["X", "Y"], &["Y^2 - 4*X^3"]);
        let b = derivation_basis(&r, 2, Budget::default()).unwrap();
        let euler = Derivation::parse(r.clone(), &["2*X", "3*Y"]).unwrap();
        let ham = Derivation::parse(r.clone(), &["Y", "6*X^2"]).unwrap();
        assert!(b.spans(&euler));
        assert!(b.spans(&ham));
        let dx = Derivation::from_parts(r.clone(), vec![r.parse_element("1").unwrap(), r.parse_element("0").unwrap()]);
        assert!(!b.spans(&dx));
    }

    #[test]
    fn laurent_bound_two_is_three_witt_fields() {
        let r = ring(&["x", "y"], &["x*y - 1"]);
        let b = derivation_basis(&r, 2, Budget::default()).unwrap();
        assert_eq!(b.len(), 3);
        for s in [["x", "-y"], ["x^2", "-1"], ["1", "-y^2"]] {
            assert!(b.spans(&Derivation::parse(r.clone(), &s).unwrap()), "{s:?}");
        }
    }

    #[test]
    fn bases_are_prefix_monotone() {
        let r = ring(&["X", "Y"], &["Y^2 - 4*X^3 + 4*X"]);
        let small = derivation_basis(&r, 2, Budget::default()).unwrap();
        let big = derivation_basis(&r, 3, Budget::default()).unwrap();
        assert_eq!(&big.basis()[..small.len()], small.basis());
    }

    #[test]
    fn laurent_module_is_free_cusp_is_not() {
        let l = derivation_basis(&ring(&["x", "y"], &["x*y - 1"]), 3, Budget::default()).unwrap();
        let f = rank_one_freeness(&l);
        // x is a unit, so any single Witt field generates
        assert!(f.rank_one_free);
        assert!(f.generator.is_some());
        let c = derivation_basis(&ring(&["X", "Y"], &["Y^2 - 4*X^3"]), 3, Budget::default()).unwrap();
        assert!(!rank_one_freeness(&c).rank_one_free);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let r = ring(&["X", "Y"], &["Y^2 - 4*X^3 + 4*X"]);
        assert!(derivation_basis(&r, 4, Budget::new(5)).is_err());
    }
}
