//! Exact linear algebra: fraction-free kernels over ℚ and ℚ(t), plus a
//! sparse incremental eliminator for the larger cohomology complexes.

use std::collections::BTreeMap;

use crate::arith::{Domain, Field, One, Zero};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Invalid(format!("row of length {} in a matrix with {cols} columns", r.len())));
        }
        let n = rows.len();
        Ok(ExactMatrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Fraction-free row echelon form over the integral ring, returning the
    /// echelon rows (as field elements) and their pivot columns.
    fn echelon(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        let mut a: Vec<Vec<F::Integral>> = (0..self.rows)
            .map(|i| F::clear_denominators(self.row(i)))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut prev = F::Integral::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (top, rest) = a.split_at_mut(r + 1);
            let piv_row = &top[r];
            for row in rest.iter_mut() {
                let lead = row[c].clone();
                for j in c + 1..self.cols {
                    let v = piv_row[c].clone() * row[j].clone() - lead.clone() * piv_row[j].clone();
                    row[j] = if v.is_zero() { v } else { v.exact_div(&prev) };
                }
                row[c] = F::Integral::zero();
            }
            prev = piv_row[c].clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        let rows = a.into_iter().map(|row| row.into_iter().map(F::from_integral).collect()).collect();
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Reduced row echelon form (nonzero rows only) and pivot columns.
    pub fn rref(&self) -> (Vec<Vec<F>>, Vec<usize>) {
        let (mut rows, pivots) = self.echelon();
        for k in (0..rows.len()).rev() {
            let c = pivots[k];
            let inv = rows[k][c].inv().expect("pivot is nonzero");
            for x in rows[k].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = x.clone() * inv.clone();
                }
            }
            let (above, from) = rows.split_at_mut(k);
            let piv = &from[0];
            for row in above.iter_mut() {
                let f = row[c].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    if !piv[j].is_zero() {
                        row[j] = row[j].clone() - f.clone() * piv[j].clone();
                    }
                }
            }
        }
        (rows, pivots)
    }
}

/// Basis of the right kernel: one vector per free column of the reduced
/// echelon form, in increasing column order. Each vector's last nonzero
/// entry sits at its free column, and vectors are normalized to integral
/// entries with content one.
pub fn nullspace<F: Field>(m: &ExactMatrix<F>) -> Vec<Vec<F>> {
    let (rows, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![F::zero(); m.cols];
            v[f] = F::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                if p < f && !row[f].is_zero() {
                    v[p] = -row[f].clone();
                }
            }
            F::normalize_vector(&mut v);
            v
        })
        .collect()
}

/// Solves `m · x = b`, returning the solution with free variables set to zero.
pub fn solve<F: Field>(m: &ExactMatrix<F>, b: &[F]) -> Option<Vec<F>> {
    let mut aug = ExactMatrix::zeros(m.rows, m.cols + 1);
    for (i, bi) in b.iter().enumerate().take(m.rows) {
        for j in 0..m.cols {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols, bi.clone());
    }
    let (rows, pivots) = aug.rref();
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![F::zero(); m.cols];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[m.cols].clone();
    }
    Some(x)
}

/// Sparse vector keyed by column.
pub type SparseVec<F> = BTreeMap<usize, F>;

/// Incremental Gaussian elimination on sparse rows; tracks the rank of
/// everything inserted so far.
#[derive(Debug, Clone)]
pub struct SparseEliminator<F> {
    pivots: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for SparseEliminator<F> {
    fn default() -> Self {
        SparseEliminator { pivots: BTreeMap::new() }
    }
}

impl<F: Field> SparseEliminator<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, mut row: SparseVec<F>) -> SparseVec<F> {
        let mut floor = 0;
        while let Some((&c, _)) = row.range(floor..).find(|&(c, _)| self.pivots.contains_key(c)) {
            let f = row.remove(&c).unwrap();
            for (&j, v) in self.pivots[&c].iter().skip(1) {
                let e = row.entry(j).or_insert_with(F::zero);
                *e = e.clone() - f.clone() * v.clone();
                if e.is_zero() {
                    row.remove(&j);
                }
            }
            floor = c + 1;
        }
        row
    }

    /// Inserts a row; true when it was independent of the earlier ones.
    pub fn insert(&mut self, row: SparseVec<F>) -> bool {
        let row = self.reduce(row);
        let Some((&c, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero lead");
        let row: SparseVec<F> = row.into_iter().map(|(j, v)| (j, v * inv.clone())).collect();
        self.pivots.insert(c, row);
        true
    }

    pub fn contains(&self, row: SparseVec<F>) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Rank of a list of sparse rows.
pub fn sparse_rank<F: Field>(rows: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut e = SparseEliminator::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, One, RatFunc, Rational};

    fn q(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(nullspace(&q(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).is_empty());
    }

    #[test]
    fn single_row_kernel() {
        assert_eq!(nullspace(&q(&[&[1, -1]])), vec![vec![rat(1), rat(1)]]);
    }

    #[test]
    fn parametric_kernel() {
        let t = RatFunc::t();
        let m = ExactMatrix::from_rows(
            2,
            vec![vec![t.clone(), RatFunc::one()], vec![t.clone() * t.clone(), t.clone()]],
        )
        .unwrap();
        let k = nullspace(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
        // (1, -t) up to scale; normalization makes the last entry monic
        assert_eq!(k[0], vec![-RatFunc::one(), t]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn bareiss_needs_exact_division() {
        // 3x3 of rank 2 with non-unit pivots
        let m = q(&[&[2, 3, 5], &[4, 7, 9], &[6, 10, 14]]);
        assert_eq!(m.rank(), 2);
        let k = nullspace(&m);
        assert_eq!(k, vec![vec![rat(-4), rat(1), rat(1)]]);
    }

    #[test]
    fn solve_and_inconsistency() {
        let m = q(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&m, &[rat(3), rat(1)]), Some(vec![rat(2), rat(1)]));
        let s = q(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&s, &[rat(1), rat(3)]), None);
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let rows: Vec<SparseVec<Rational>> = vec![
            [(0, rat(1)), (2, rat(2))].into_iter().collect(),
            [(1, rat(1)), (2, rat(1))].into_iter().collect(),
            [(0, rat(2)), (1, rat(1)), (2, rat(5))].into_iter().collect(),
        ];
        assert_eq!(sparse_rank(rows), 2);
        let mut e = SparseEliminator::<Rational>::new();
        assert!(e.insert([(3, rat(2))].into_iter().collect()));
        assert!(e.contains([(3, rat(-7))].into_iter().collect()));
    }
}
