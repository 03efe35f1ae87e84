use super::table::{Combination, StructureConstants};
use crate::arith::{rat, Field, Rational};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;

/// Lie algebra on a finite (possibly truncated) basis, optionally graded by
/// integer weights. Brackets that leave the window are undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedLieAlgebra<F> {
    labels: Vec<String>,
    weights: Option<Vec<i64>>,
    table: StructureConstants<F>,
}

impl<F: Field> GradedLieAlgebra<F> {
    /// Validates weight additivity and the Jacobi identity on every triple
    /// whose brackets are all defined.
    pub fn new(labels: Vec<String>, weights: Option<Vec<i64>>, table: StructureConstants<F>) -> Result<Self> {
        if labels.len() != table.dim() || weights.as_ref().is_some_and(|w| w.len() != table.dim()) {
            return Err(Error::Invalid("labels, weights and table disagree on the dimension".into()));
        }
        if let Some(w) = &weights {
            for (&(i, j), v) in table.entries() {
                if v.iter().any(|(k, _)| w[*k] != w[i] + w[j]) {
                    return Err(Error::Grading { i, j });
                }
            }
        }
        if let Some((i, j, k)) = table.jacobi_violation() {
            return Err(Error::Jacobi { i, j, k });
        }
        Ok(GradedLieAlgebra { labels, weights, table })
    }

    /// Ungraded algebra with default labels `e0, e1, …`.
    pub fn ungraded(table: StructureConstants<F>) -> Result<Self> {
        let labels = (0..table.dim()).map(|i| format!("e{i}")).collect();
        Self::new(labels, None, table)
    }

    pub fn abelian(dim: usize, weights: Option<Vec<i64>>) -> Self {
        let labels = (0..dim).map(|i| format!("e{i}")).collect();
        Self::new(labels, weights, StructureConstants::abelian(dim)).expect("abelian tables are valid")
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> Option<&[i64]> {
        self.weights.as_deref()
    }

    pub fn weight(&self, i: usize) -> Option<i64> {
        self.weights.as_ref().map(|w| w[i])
    }

    pub fn table(&self) -> &StructureConstants<F> {
        &self.table
    }

    pub fn bracket(&self, i: usize, j: usize) -> Option<Combination<F>> {
        self.table.bracket(i, j)
    }

    /// Smallest and largest weight.
    pub fn weight_range(&self) -> Option<(i64, i64)> {
        let w = self.weights.as_ref()?;
        Some((*w.iter().min()?, *w.iter().max()?))
    }

    /// Index of the basis element of weight `w`, when weights are distinct.
    pub fn index_of_weight(&self, w: i64) -> Option<usize> {
        self.weights.as_ref()?.iter().position(|&x| x == w)
    }

    pub fn jacobi_check(&self) -> JacobiReport {
        let v = self.table.jacobi_violation();
        JacobiReport { ok: v.is_none(), first_violation: v }
    }
}

/// Outcome of an exhaustive Jacobi scan.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct JacobiReport {
    pub ok: bool,
    pub first_violation: Option<(usize, usize, usize)>,
}

pub fn jacobi_check<F: Field>(l: &GradedLieAlgebra<F>) -> JacobiReport {
    l.jacobi_check()
}

/// Witt basis `ℓ_lo, …, ℓ_hi` with `[ℓ_m, ℓ_n] = (n − m) ℓ_{m+n}` recorded
/// exactly when `m + n` stays in the range.
pub fn witt_range(lo: i64, hi: i64) -> GradedLieAlgebra<Rational> {
    assert!(lo <= hi);
    let weights: Vec<i64> = (lo..=hi).collect();
    let idx = |n: i64| (n - lo) as usize;
    let mut table = StructureConstants::partial(weights.len());
    for m in lo..=hi {
        for n in m + 1..=hi {
            if (lo..=hi).contains(&(m + n)) {
                table.define(idx(m), idx(n), vec![(idx(m + n), rat(n - m))]);
            }
        }
    }
    let labels = weights.iter().map(|n| format!("l{n}")).collect();
    GradedLieAlgebra::new(labels, Some(weights), table).expect("Witt constants satisfy Jacobi")
}

/// Symmetric Witt window `ℓ_{-N}, …, ℓ_N`.
pub fn witt_window(n: i64) -> GradedLieAlgebra<Rational> {
    assert!(n >= 1);
    witt_range(-n, n)
}

/// True when `map` (columns are images of the source basis in target
/// coordinates) is invertible and carries every defined source bracket to
/// the corresponding target bracket.
pub fn is_lie_isomorphism<F: Field>(
    source: &StructureConstants<F>,
    target: &StructureConstants<F>,
    map: &ExactMatrix<F>,
) -> bool {
    let n = source.dim();
    if target.dim() != n || map.rows() != n || map.cols() != n || map.rank() != n {
        return false;
    }
    let image = |i: usize| -> Combination<F> {
        (0..n).filter(|&r| !map.get(r, i).is_zero()).map(|r| (r, map.get(r, i).clone())).collect()
    };
    let apply = |v: &Combination<F>| -> Combination<F> {
        let mut acc: Vec<(usize, F)> = Vec::new();
        for (k, c) in v {
            for (r, m) in image(*k) {
                acc.push((r, m * c.clone()));
            }
        }
        let mut dense = vec![F::zero(); n];
        for (r, c) in acc {
            dense[r] = dense[r].clone() + c;
        }
        dense.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    };
    for j in 0..n {
        for i in 0..j {
            let Some(v) = source.bracket(i, j) else { continue };
            match target.bracket_combinations(&image(i), &image(j)) {
                Some(w) if w == apply(&v) => {}
                _ => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_constants() {
        let w = witt_window(3);
        let i = |n: i64| w.index_of_weight(n).unwrap();
        assert_eq!(w.bracket(i(1), i(2)), Some(vec![(i(3), rat(1))]));
        assert_eq!(w.bracket(i(0), i(2)), Some(vec![(i(2), rat(2))]));
        assert_eq!(w.bracket(i(2), i(2)), Some(vec![]));
        assert_eq!(w.bracket(i(2), i(3)), None);
        assert!(witt_window(5).jacobi_check().ok);
    }

    #[test]
    fn grading_is_enforced() {
        let mut t = StructureConstants::partial(2);
        t.define(0, 1, vec![(1, rat(1))]);
        let r = GradedLieAlgebra::new(vec!["a".into(), "b".into()], Some(vec![1, 2]), t);
        assert_eq!(r, Err(Error::Grading { i: 0, j: 1 }));
    }

    #[test]
    fn negation_is_an_isomorphism_onto_the_negated_table() {
        let w = witt_window(2);
        let neg = w.table().scale(&rat(-1));
        let n = w.dim();
        let mut minus_id = ExactMatrix::zeros(n, n);
        for i in 0..n {
            minus_id.set(i, i, rat(-1));
        }
        assert!(is_lie_isomorphism(w.table(), &neg, &minus_id));
        let mut id = ExactMatrix::zeros(n, n);
        for i in 0..n {
            id.set(i, i, rat(1));
        }
        assert!(!is_lie_isomorphism(w.table(), &neg, &id));
    }
}
