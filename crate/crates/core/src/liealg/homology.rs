//! Windowed second homology of filtered algebras whose brackets leave every
//! finite window, for which no weight grading localizes the complex.

use std::collections::BTreeMap;

use serde::Serialize;

use super::table::StructureConstants;
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::{SparseEliminator, SparseVec};

/// Basis with an exhaustive filtration by level; `[V(a), V(b)] ⊆ V(a + b + 1)`.
/// Brackets are recorded for every pair whose product is known to fit.
#[derive(Debug, Clone)]
pub struct FilteredLieAlgebra<F> {
    pub labels: Vec<String>,
    pub levels: Vec<u32>,
    pub table: StructureConstants<F>,
}

impl<F: Field> FilteredLieAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn top_level(&self) -> u32 {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    /// Indices of the window `V(level)`.
    pub fn window(&self, level: u32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.levels[i] <= level).collect()
    }
}

/// One windowed estimate `h(N, M)`: cycles supported on `V(N)` modulo
/// boundaries of chains supported on `V(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowedH2 {
    pub cycle_level: u32,
    pub boundary_level: u32,
    pub dim_cycles: usize,
    pub dim_boundaries: usize,
    pub dim_h: usize,
}

fn pair_key(n: usize, i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    a * n + b
}

/// `h(N, M)` for `N ≤ M`. Needs every bracket inside `V(M)` to be recorded.
pub fn windowed_h2<F: Field>(alg: &FilteredLieAlgebra<F>, n_level: u32, m_level: u32) -> Result<WindowedH2> {
    if n_level > m_level {
        return Err(Error::Invalid("cycle window exceeds the boundary window".into()));
    }
    let n = alg.dim();
    let bracket = |i: usize, j: usize| {
        alg.table.bracket(i, j).ok_or_else(|| Error::WindowClosure {
            what: format!("({}, {})", alg.labels[i], alg.labels[j]),
        })
    };

    let vn = alg.window(n_level);
    let mut d2 = SparseEliminator::new();
    let mut pairs = 0;
    for (a, &i) in vn.iter().enumerate() {
        for &j in &vn[a + 1..] {
            pairs += 1;
            d2.insert(bracket(i, j)?.into_iter().collect());
        }
    }
    let dim_cycles = pairs - d2.rank();

    // ∂(a∧b∧c) = −[a,b]∧c + [a,c]∧b − [b,c]∧a. Pairs outside Λ²V(N) are
    // keyed first so that projecting them away is a prefix truncation.
    let inside: Vec<bool> = (0..n).map(|i| alg.levels[i] <= n_level).collect();
    let remap = |i: usize, j: usize| -> usize {
        let k = pair_key(n, i, j);
        if inside[i] && inside[j] {
            n * n + k
        } else {
            k
        }
    };
    let vm = alg.window(m_level);
    let mut all = SparseEliminator::new();
    let mut outside = SparseEliminator::new();
    for (a, &x) in vm.iter().enumerate() {
        for (b, &y) in vm.iter().enumerate().skip(a + 1) {
            for &z in &vm[b + 1..] {
                let mut row: BTreeMap<usize, F> = BTreeMap::new();
                for (neg, p, q, r) in [(true, x, y, z), (false, x, z, y), (true, y, z, x)] {
                    for (k, c) in bracket(p, q)? {
                        if k == r {
                            continue;
                        }
                        let positive = (k < r) != neg;
                        let c = if positive { c } else { -c };
                        let e = row.entry(remap(k, r)).or_insert_with(F::zero);
                        *e = e.clone() + c;
                    }
                }
                let row: SparseVec<F> = row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                let out: SparseVec<F> = row.iter().filter(|(&k, _)| k < n * n).map(|(&k, c)| (k, c.clone())).collect();
                all.insert(row);
                outside.insert(out);
            }
        }
    }
    let dim_boundaries = all.rank() - outside.rank();
    Ok(WindowedH2 {
        cycle_level: n_level,
        boundary_level: m_level,
        dim_cycles,
        dim_boundaries,
        dim_h: dim_cycles - dim_boundaries,
    })
}

/// Windowed estimates over consecutive truncations `N₀ < N₁ < …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizedHomology {
    pub estimates: Vec<WindowedH2>,
    /// Every diagonal estimate `h(N, N)` and every cross estimate
    /// `h(N_i, N_{i+1})` agree.
    pub stabilized: bool,
    pub value: Option<usize>,
}

pub fn stabilized_h2<F: Field>(alg: &FilteredLieAlgebra<F>, truncations: &[u32]) -> Result<StabilizedHomology> {
    if truncations.len() < 2 || truncations.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("need at least two increasing truncations".into()));
    }
    let mut estimates = Vec::new();
    for (i, &n) in truncations.iter().enumerate() {
        estimates.push(windowed_h2(alg, n, n)?);
        if let Some(&next) = truncations.get(i + 1) {
            estimates.push(windowed_h2(alg, n, next)?);
        }
    }
    let first = estimates[0].dim_h;
    let stabilized = estimates.iter().all(|e| e.dim_h == first);
    Ok(StabilizedHomology { estimates, stabilized, value: stabilized.then_some(first) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Rational};

    /// Witt basis `ℓ_{-1-L}, …, ℓ_{L+1}` with level `max(|n| − 1, 0)`.
    fn witt_filtered(top: u32) -> FilteredLieAlgebra<Rational> {
        let hi = top as i64 + 1;
        let ns: Vec<i64> = (-hi..=hi).collect();
        let idx = |n: i64| (n + hi) as usize;
        let mut table = StructureConstants::partial(ns.len());
        for &m in &ns {
            for &k in &ns {
                if m < k && (-hi..=hi).contains(&(m + k)) {
                    table.define(idx(m), idx(k), vec![(idx(m + k), rat(k - m))]);
                }
            }
        }
        FilteredLieAlgebra {
            labels: ns.iter().map(|n| format!("l{n}")).collect(),
            levels: ns.iter().map(|n| (n.abs() - 1).max(0) as u32).collect(),
            table,
        }
    }

    #[test]
    fn witt_homology_is_one() {
        let alg = witt_filtered(7);
        let s = stabilized_h2(&alg, &[2, 3]).unwrap();
        assert!(s.stabilized, "{s:?}");
        assert_eq!(s.value, Some(1));
    }

    #[test]
    fn abelian_homology_is_all_pairs() {
        let alg = FilteredLieAlgebra::<Rational> {
            labels: vec!["a".into(), "b".into(), "c".into()],
            levels: vec![0, 0, 1],
            table: StructureConstants::abelian(3),
        };
        assert_eq!(windowed_h2(&alg, 0, 1).unwrap().dim_h, 1);
        assert_eq!(windowed_h2(&alg, 1, 1).unwrap().dim_h, 3);
    }

    #[test]
    fn missing_brackets_are_reported() {
        let alg = witt_filtered(3);
        assert!(matches!(windowed_h2(&alg, 2, 3), Err(Error::WindowClosure { .. })));
    }
}
