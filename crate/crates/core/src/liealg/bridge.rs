use super::graded::GradedLieAlgebra;
use super::table::{Combination, StructureConstants};
use crate::arith::{rat, Field};
use crate::derivations::{bracket, CoordinateIndex, Derivation, DerivationBasis};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, solve, ExactMatrix};

/// How to assign weights to a solved slice.
#[derive(Debug, Clone)]
pub enum Grading<F> {
    /// One weight per basis element, in basis order.
    Weights(Vec<i64>),
    /// Re-diagonalize the slice by `ad E`; the integer eigenvalues become weights.
    Euler(Derivation<F>),
    None,
}

/// Structure constants of a solved slice, with the fields they refer to.
#[derive(Debug, Clone)]
pub struct DerivedAlgebra<F> {
    pub algebra: GradedLieAlgebra<F>,
    /// The derivation behind each basis label.
    pub fields: Vec<Derivation<F>>,
    /// Pairs whose bracket left the solved span.
    pub undefined: Vec<(usize, usize)>,
}

/// Coordinates of derivations in the span of a fixed list.
struct Span<F> {
    index: CoordinateIndex,
    columns: Vec<crate::linalg::SparseVec<F>>,
}

impl<F: Field> Span<F> {
    fn new(fields: &[Derivation<F>]) -> Self {
        let mut index = CoordinateIndex::new();
        let columns = fields.iter().map(|d| d.coordinates(&mut index)).collect();
        Span { index, columns }
    }

    fn express(&mut self, d: &Derivation<F>) -> Option<Vec<F>> {
        let target = d.coordinates(&mut self.index);
        let rows = self.index_len();
        let mut m = ExactMatrix::zeros(rows, self.columns.len());
        for (j, col) in self.columns.iter().enumerate() {
            for (&r, v) in col {
                m.set(r, j, v.clone());
            }
        }
        let mut b = vec![F::zero(); rows];
        for (r, v) in target {
            b[r] = v;
        }
        solve(&m, &b)
    }

    fn index_len(&self) -> usize {
        self.index.len()
    }
}

fn combination<F: Field>(v: Vec<F>) -> Combination<F> {
    v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

fn combine<F: Field>(basis: &[Derivation<F>], v: &[F]) -> Derivation<F> {
    let ring = basis[0].ring().clone();
    v.iter()
        .zip(basis)
        .filter(|(c, _)| !c.is_zero())
        .fold(Derivation::zero(ring), |acc, (c, d)| acc.add(&d.scale(c)).expect("same ring"))
}

/// Scales `d` so that the leading coefficient of its first nonzero component is one.
fn make_monic<F: Field>(d: Derivation<F>) -> Derivation<F> {
    let order = d.ring().order();
    let lead = d.coeffs().iter().find_map(|g| g.leading_term(order).map(|(_, c)| c.clone()));
    match lead {
        Some(c) => d.scale(&c.inv().expect("nonzero")),
        None => d,
    }
}

/// Eigen-decomposition of `ad E` on the slice, by integer eigenvalue.
fn euler_eigenbasis<F: Field>(basis: &[Derivation<F>], euler: &Derivation<F>) -> Result<(Vec<Derivation<F>>, Vec<i64>)> {
    let n = basis.len();
    let mut span = Span::new(basis);
    let mut ad = ExactMatrix::zeros(n, n);
    for (j, d) in basis.iter().enumerate() {
        let v = span
            .express(&bracket(euler, d)?)
            .ok_or_else(|| Error::Invalid("the Euler field does not preserve the solved slice".into()))?;
        for (i, c) in v.into_iter().enumerate() {
            ad.set(i, j, c);
        }
    }
    let mut fields = Vec::new();
    let mut weights = Vec::new();
    let cap = 4 * n as i64 + 16;
    let mut lambda = 0i64;
    while fields.len() < n && lambda.abs() <= cap {
        let mut shifted = ad.clone();
        for i in 0..n {
            let v = shifted.get(i, i).clone() - F::from_rational(rat(lambda));
            shifted.set(i, i, v);
        }
        for v in nullspace(&shifted) {
            fields.push(make_monic(combine(basis, &v)));
            weights.push(lambda);
        }
        lambda = if lambda > 0 { -lambda } else { 1 - lambda };
    }
    if fields.len() < n {
        return Err(Error::Invalid("ad E is not diagonalizable with integer eigenvalues on the slice".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (weights[i], i));
    Ok((order.iter().map(|&i| fields[i].clone()).collect(), order.iter().map(|&i| weights[i]).collect()))
}

fn labels_for(weights: Option<&[i64]>, n: usize) -> Vec<String> {
    match weights {
        None => (0..n).map(|i| format!("d{i}")).collect(),
        Some(w) => (0..n)
            .map(|i| {
                let same = w.iter().filter(|&&x| x == w[i]).count();
                if same == 1 {
                    format!("l{}", w[i])
                } else {
                    let k = w[..i].iter().filter(|&&x| x == w[i]).count();
                    format!("l{}_{k}", w[i])
                }
            })
            .collect(),
    }
}

/// Structure constants of the solved slice in a basis fixed by `grading`.
/// Brackets that leave the span are recorded as undefined.
pub fn from_derivations<F: Field>(basis: &DerivationBasis<F>, grading: Grading<F>) -> Result<DerivedAlgebra<F>> {
    let (fields, weights) = match grading {
        Grading::Weights(w) => {
            if w.len() != basis.len() {
                return Err(Error::Invalid(format!("{} weights for {} basis fields", w.len(), basis.len())));
            }
            (basis.basis().to_vec(), Some(w))
        }
        Grading::Euler(_) if basis.is_empty() => (Vec::new(), Some(Vec::new())),
        Grading::Euler(e) => {
            let (f, w) = euler_eigenbasis(basis.basis(), &e)?;
            (f, Some(w))
        }
        Grading::None => (basis.basis().to_vec(), None),
    };
    from_fields(fields, weights)
}

/// Structure constants of the span of `fields`, which must be linearly
/// independent derivations of one ring.
pub fn from_fields<F: Field>(fields: Vec<Derivation<F>>, weights: Option<Vec<i64>>) -> Result<DerivedAlgebra<F>> {
    let n = fields.len();
    let mut span = Span::new(&fields);
    let mut table = StructureConstants::partial(n);
    let mut undefined = Vec::new();
    for j in 0..n {
        for i in 0..j {
            match span.express(&bracket(&fields[i], &fields[j])?) {
                Some(v) => table.define(i, j, combination(v)),
                None => undefined.push((i, j)),
            }
        }
    }
    let labels = labels_for(weights.as_deref(), n);
    let algebra = GradedLieAlgebra::new(labels, weights, table)?;
    Ok(DerivedAlgebra { algebra, fields, undefined })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::arith::Rational;
    use crate::derivations::derivation_basis;
    use crate::liealg::witt_range;
    use crate::poly::{Budget, QuotientRing};

    #[test]
    fn laurent_slice_is_a_witt_window() {
        let ring = Arc::new(
            QuotientRing::<Rational>::parse(&["x", "y"], &["x*y - 1"], Default::default(), Budget::default()).unwrap(),
        );
        let b = derivation_basis(&ring, 3, Budget::default()).unwrap();
        let e = Derivation::parse(ring, &["x", "-y"]).unwrap();
        let d = from_derivations(&b, Grading::Euler(e)).unwrap();
        assert_eq!(d.algebra.weights().unwrap(), &[-2, -1, 0, 1, 2]);
        assert_eq!(d.algebra.table(), witt_range(-2, 2).table());
        assert_eq!(d.fields[0].to_text(), ["y", "-y^3"]);
    }

    #[test]
    fn line_slice_is_one_sided() {
        let ring = Arc::new(QuotientRing::<Rational>::free(vec!["x".into()]));
        let b = derivation_basis(&ring, 3, Budget::default()).unwrap();
        let d = from_derivations(&b, Grading::Weights(vec![-1, 0, 1, 2])).unwrap();
        assert_eq!(d.algebra.table(), witt_range(-1, 2).table());
        assert_eq!(d.undefined, [(2, 3)]);
    }

    #[test]
    fn inconsistent_weights_are_rejected() {
        let ring = Arc::new(QuotientRing::<Rational>::free(vec!["x".into()]));
        let b = derivation_basis(&ring, 2, Budget::default()).unwrap();
        assert!(matches!(from_derivations(&b, Grading::Weights(vec![0, 0, 1])), Err(Error::Grading { .. })));
    }
}
