use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::graded::{witt_range, GradedLieAlgebra};
use super::table::{Combination, StructureConstants};
use crate::arith::{Field, RatFunc, Rational, UniPoly};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, solve, sparse_rank, ExactMatrix, SparseEliminator, SparseVec};

/// Coefficient module of the cochain complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    Trivial,
    Adjoint,
}

impl std::fmt::Display for Coefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Coefficients::Trivial => "trivial",
            Coefficients::Adjoint => "adjoint",
        })
    }
}

/// Alternating 2-cochain, stored on pairs `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub enum Cochain2<F> {
    Trivial { weight: Option<i64>, values: BTreeMap<(usize, usize), F> },
    Adjoint { weight: Option<i64>, values: BTreeMap<(usize, usize), Combination<F>> },
}

impl<F: Field> Cochain2<F> {
    /// Scalar cochain from `(i, j) -> value` entries in either orientation.
    pub fn trivial(weight: Option<i64>, entries: impl IntoIterator<Item = ((usize, usize), F)>) -> Self {
        let mut values = BTreeMap::new();
        for ((i, j), v) in entries {
            if i == j || v.is_zero() {
                continue;
            }
            let (key, v) = if i < j { ((i, j), v) } else { ((j, i), -v) };
            values.insert(key, v);
        }
        Cochain2::Trivial { weight, values }
    }

    pub fn weight(&self) -> Option<i64> {
        match self {
            Cochain2::Trivial { weight, .. } | Cochain2::Adjoint { weight, .. } => *weight,
        }
    }

    pub fn coefficients(&self) -> Coefficients {
        match self {
            Cochain2::Trivial { .. } => Coefficients::Trivial,
            Cochain2::Adjoint { .. } => Coefficients::Adjoint,
        }
    }

    /// Sparse triples `(i, j, value)`; adjoint values are rendered as `k:c` sums.
    pub fn triples(&self) -> Vec<(usize, usize, String)> {
        match self {
            Cochain2::Trivial { values, .. } => values.iter().map(|(&(i, j), v)| (i, j, v.to_string())).collect(),
            Cochain2::Adjoint { values, .. } => values
                .iter()
                .map(|(&(i, j), v)| {
                    let s: Vec<String> = v.iter().map(|(k, c)| format!("{c}*e{k}")).collect();
                    (i, j, s.join(" + "))
                })
                .collect(),
        }
    }
}

/// Dimensions of one cohomology group.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyReport<F> {
    pub degree: u8,
    pub weight: Option<i64>,
    pub coefficients: Coefficients,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_h: usize,
    /// A cocycle that is not a coboundary, when the group is nonzero.
    pub generator: Option<Cochain2<F>>,
    /// Triples dropped because some needed bracket left the window.
    pub skipped_triples: usize,
}

/// Coordinate of a cochain: a basis pair, plus the value index for adjoint coefficients.
type Slot = (usize, usize, Option<usize>);

/// Weight-homogeneous slice `C¹ → C² → C³` of the Chevalley–Eilenberg complex.
#[derive(Debug, Clone)]
pub struct CochainComplex<F> {
    pub coefficients: Coefficients,
    pub weight: Option<i64>,
    c1: Vec<(usize, Option<usize>)>,
    c2: Vec<Slot>,
    c2_index: BTreeMap<Slot, usize>,
    pub d1: ExactMatrix<F>,
    pub d2: ExactMatrix<F>,
    pub skipped_triples: usize,
}

struct Builder<'a, F> {
    l: &'a GradedLieAlgebra<F>,
    weight: Option<i64>,
    coefficients: Coefficients,
}

impl<F: Field> Builder<'_, F> {
    /// Basis indices of the given weight, or all of them when ungraded.
    fn of_weight(&self, w: Option<i64>) -> Vec<usize> {
        match (self.l.weights(), w) {
            (Some(ws), Some(w)) => (0..ws.len()).filter(|&i| ws[i] == w).collect(),
            _ => (0..self.l.dim()).collect(),
        }
    }

    fn shift(&self, sum: i64) -> Option<i64> {
        self.weight.map(|w| sum - w)
    }

    fn wsum(&self, idx: &[usize]) -> i64 {
        idx.iter().map(|&i| self.l.weight(i).unwrap_or(0)).sum()
    }

    fn label(&self, idx: &[usize]) -> String {
        let names: Vec<&str> = idx.iter().map(|&i| self.l.labels()[i].as_str()).collect();
        format!("({})", names.join(", "))
    }

    fn graded(&self) -> bool {
        self.weight.is_some() && self.l.weights().is_some()
    }

    fn c1(&self) -> Vec<(usize, Option<usize>)> {
        match self.coefficients {
            Coefficients::Trivial => self.of_weight(self.weight).into_iter().map(|i| (i, None)).collect(),
            Coefficients::Adjoint => {
                let mut out = Vec::new();
                for i in 0..self.l.dim() {
                    for k in self.of_weight(self.shift(self.wsum(&[i]))) {
                        out.push((i, Some(k)));
                    }
                }
                out
            }
        }
    }

    fn c2(&self) -> Vec<Slot> {
        let mut out = Vec::new();
        for j in 0..self.l.dim() {
            for i in 0..j {
                let s = self.wsum(&[i, j]);
                match self.coefficients {
                    Coefficients::Trivial => {
                        if !self.graded() || Some(s) == self.weight {
                            out.push((i, j, None));
                        }
                    }
                    Coefficients::Adjoint => {
                        for k in self.of_weight(self.shift(s)) {
                            out.push((i, j, Some(k)));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn closure(&self, idx: &[usize]) -> Error {
        Error::WindowClosure { what: self.label(idx) }
    }
}

fn push<F: Field>(row: &mut SparseVec<F>, col: usize, c: F) {
    let e = row.entry(col).or_insert_with(F::zero);
    *e = e.clone() + c;
    if e.is_zero() {
        row.remove(&col);
    }
}

fn sign<F: Field>(positive: bool) -> F {
    if positive {
        F::one()
    } else {
        -F::one()
    }
}

fn dense<F: Field>(rows: usize, cols: usize, entries: Vec<SparseVec<F>>, by_row: bool) -> ExactMatrix<F> {
    let mut m = ExactMatrix::zeros(rows, cols);
    for (a, vec) in entries.into_iter().enumerate() {
        for (b, v) in vec {
            if by_row {
                m.set(a, b, v);
            } else {
                m.set(b, a, v);
            }
        }
    }
    m
}

impl<F: Field> CochainComplex<F> {
    /// Builds the weight-`weight` slice (or the full complex when `weight` is
    /// `None`). Trivial coefficients demand that every needed bracket be
    /// defined; adjoint coefficients drop the triples that leave the window.
    pub fn build(l: &GradedLieAlgebra<F>, weight: Option<i64>, coefficients: Coefficients) -> Result<Self> {
        if weight.is_some() && l.weights().is_none() {
            return Err(Error::Ungraded);
        }
        let b = Builder { l, weight, coefficients };
        let c1 = b.c1();
        let c1_index: BTreeMap<(usize, Option<usize>), usize> = c1.iter().enumerate().map(|(n, s)| (*s, n)).collect();
        let c2 = b.c2();
        let c2_index: BTreeMap<Slot, usize> = c2.iter().enumerate().map(|(n, s)| (*s, n)).collect();
        let slot = |i: usize, j: usize, k: Option<usize>| -> Option<(usize, bool)> {
            if i == j {
                return None;
            }
            let key = (i.min(j), i.max(j), k);
            c2_index.get(&key).map(|&c| (c, i < j))
        };

        // d1, column by column
        let mut d1_cols: Vec<SparseVec<F>> = vec![SparseVec::new(); c1.len()];
        for &(x, y, k_out) in &c2 {
            let row = c2_index[&(x, y, k_out)];
            let xy = l.bracket(x, y).ok_or_else(|| b.closure(&[x, y]))?;
            match coefficients {
                Coefficients::Trivial => {
                    for (m, c) in xy {
                        if let Some(&col) = c1_index.get(&(m, None)) {
                            push(&mut d1_cols[col], row, -c);
                        }
                    }
                }
                Coefficients::Adjoint => {
                    let k_out = k_out.unwrap();
                    // [x, f(y)] − [y, f(x)]
                    for (a, other, s) in [(x, y, true), (y, x, false)] {
                        for (&(i, k), &col) in c1_index.range((other, None)..) {
                            if i != other {
                                break;
                            }
                            let ak = l.bracket(a, k.unwrap()).ok_or_else(|| b.closure(&[a, k.unwrap()]))?;
                            for (kk, c) in ak {
                                if kk == k_out {
                                    push(&mut d1_cols[col], row, sign::<F>(s) * c);
                                }
                            }
                        }
                    }
                    // − f([x, y])
                    for (m, c) in xy {
                        if let Some(&col) = c1_index.get(&(m, Some(k_out))) {
                            push(&mut d1_cols[col], row, -c);
                        }
                    }
                }
            }
        }

        // d2, triple by triple
        let mut d2_rows: Vec<SparseVec<F>> = Vec::new();
        let mut skipped = 0;
        let n = l.dim();
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    let s = b.wsum(&[x, y, z]);
                    let outs: Vec<Option<usize>> = match coefficients {
                        Coefficients::Trivial => {
                            if b.graded() && Some(s) != weight {
                                continue;
                            }
                            vec![None]
                        }
                        Coefficients::Adjoint => {
                            let ks = b.of_weight(b.shift(s));
                            if ks.is_empty() {
                                continue;
                            }
                            ks.into_iter().map(Some).collect()
                        }
                    };
                    match triple_rows(l, &slot, (x, y, z), &outs, coefficients) {
                        Some(rows) => d2_rows.extend(rows),
                        None if coefficients == Coefficients::Trivial => return Err(b.closure(&[x, y, z])),
                        None => skipped += 1,
                    }
                }
            }
        }
        let d1 = dense(c2.len(), c1.len(), d1_cols, false);
        let d2 = dense(d2_rows.len(), c2.len(), d2_rows, true);
        Ok(CochainComplex { coefficients, weight, c1, c2, c2_index, d1, d2, skipped_triples: skipped })
    }

    pub fn dim_c1(&self) -> usize {
        self.c1.len()
    }

    pub fn dim_c2(&self) -> usize {
        self.c2.len()
    }

    /// Coordinates of a cochain in this complex.
    pub fn coordinates(&self, c: &Cochain2<F>) -> Result<Vec<F>> {
        let mut v = vec![F::zero(); self.c2.len()];
        let outside = || Error::Invalid("cochain is supported outside this complex".into());
        match c {
            Cochain2::Trivial { values, .. } => {
                for (&(i, j), x) in values {
                    let &col = self.c2_index.get(&(i, j, None)).ok_or_else(outside)?;
                    v[col] = x.clone();
                }
            }
            Cochain2::Adjoint { values, .. } => {
                for (&(i, j), comb) in values {
                    for (k, x) in comb {
                        let &col = self.c2_index.get(&(i, j, Some(*k))).ok_or_else(outside)?;
                        v[col] = x.clone();
                    }
                }
            }
        }
        Ok(v)
    }

    /// The cochain with the given coordinates.
    pub fn cochain(&self, v: &[F]) -> Cochain2<F> {
        match self.coefficients {
            Coefficients::Trivial => Cochain2::trivial(
                self.weight,
                self.c2.iter().zip(v).map(|(&(i, j, _), x)| ((i, j), x.clone())),
            ),
            Coefficients::Adjoint => {
                let mut values: BTreeMap<(usize, usize), Combination<F>> = BTreeMap::new();
                for (&(i, j, k), x) in self.c2.iter().zip(v) {
                    if !x.is_zero() {
                        values.entry((i, j)).or_default().push((k.unwrap(), x.clone()));
                    }
                }
                Cochain2::Adjoint { weight: self.weight, values }
            }
        }
    }

    pub fn is_cocycle(&self, v: &[F]) -> bool {
        self.d2.mul_vec(v).iter().all(|x| x.is_zero())
    }

    pub fn is_coboundary(&self, v: &[F]) -> bool {
        solve(&self.d1, v).is_some()
    }

    /// `d1 f` for a 1-cochain given in this complex's coordinates.
    pub fn coboundary(&self, f: &[F]) -> Vec<F> {
        self.d1.mul_vec(f)
    }

    /// True when `d2 ∘ d1` vanishes exactly.
    pub fn squares_to_zero(&self) -> bool {
        (0..self.c1.len()).all(|c| {
            let mut e = vec![F::zero(); self.c1.len()];
            e[c] = F::one();
            self.is_cocycle(&self.coboundary(&e))
        })
    }

    pub fn report(&self) -> CohomologyReport<F> {
        let r2 = self.d2.rank();
        let r1 = self.d1.rank();
        let z = self.c2.len() - r2;
        let mut generator = None;
        if z > r1 {
            let mut elim = SparseEliminator::new();
            for c in 0..self.c1.len() {
                let col: SparseVec<F> =
                    (0..self.c2.len()).filter(|&r| !self.d1.get(r, c).is_zero()).map(|r| (r, self.d1.get(r, c).clone())).collect();
                elim.insert(col);
            }
            for v in nullspace(&self.d2) {
                let sv: SparseVec<F> = v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                if !elim.contains(sv) {
                    generator = Some(self.cochain(&v));
                    break;
                }
            }
        }
        CohomologyReport {
            degree: 2,
            weight: self.weight,
            coefficients: self.coefficients,
            dim_cochains: self.c2.len(),
            dim_cocycles: z,
            dim_coboundaries: r1,
            dim_h: z - r1,
            generator,
            skipped_triples: self.skipped_triples,
        }
    }
}

/// Rows of `d2 c` at the triple, one per output slot; `None` if a needed
/// bracket is undefined.
fn triple_rows<F: Field>(
    l: &GradedLieAlgebra<F>,
    slot: &dyn Fn(usize, usize, Option<usize>) -> Option<(usize, bool)>,
    (x, y, z): (usize, usize, usize),
    outs: &[Option<usize>],
    coefficients: Coefficients,
) -> Option<Vec<SparseVec<F>>> {
    let terms = [(false, x, y, z), (true, x, z, y), (false, y, z, x)];
    let brackets: Vec<Combination<F>> =
        terms.iter().map(|&(_, p, q, _)| l.bracket(p, q)).collect::<Option<_>>()?;
    let mut rows = Vec::with_capacity(outs.len());
    for &out in outs {
        let mut row = SparseVec::new();
        // −c([x,y],z) + c([x,z],y) − c([y,z],x)
        for ((pos, _, _, r), br) in terms.iter().zip(&brackets) {
            for (k, c) in br {
                if let Some((col, up)) = slot(*k, *r, out) {
                    push(&mut row, col, sign::<F>(*pos == up) * c.clone());
                } else if *k != *r && coefficients == Coefficients::Trivial {
                    return None;
                }
            }
        }
        if coefficients == Coefficients::Adjoint {
            let out = out.unwrap();
            // x·c(y,z) − y·c(x,z) + z·c(x,y)
            for (pos, a, p, q) in [(true, x, y, z), (false, y, x, z), (true, z, x, y)] {
                for k in 0..l.dim() {
                    let Some((col, up)) = slot(p, q, Some(k)) else { continue };
                    for (kk, c) in l.bracket(a, k)? {
                        if kk == out {
                            push(&mut row, col, sign::<F>(pos == up) * c);
                        }
                    }
                }
            }
        }
        rows.push(row);
    }
    Some(rows)
}

/// `H¹` with trivial coefficients: the dual of `L / [L, L]` on the window.
pub fn ce_h1_trivial<F: Field>(l: &GradedLieAlgebra<F>) -> CohomologyReport<F> {
    let rank = sparse_rank(l.table().entries().map(|(_, v)| v.iter().cloned().collect::<SparseVec<F>>()));
    CohomologyReport {
        degree: 1,
        weight: None,
        coefficients: Coefficients::Trivial,
        dim_cochains: l.dim(),
        dim_cocycles: l.dim() - rank,
        dim_coboundaries: 0,
        dim_h: l.dim() - rank,
        generator: None,
        skipped_triples: 0,
    }
}

/// `H²` of the weight-`weight` slice, or of the full complex for `None`.
pub fn ce_h2<F: Field>(l: &GradedLieAlgebra<F>, weight: Option<i64>, coefficients: Coefficients) -> Result<CohomologyReport<F>> {
    Ok(CochainComplex::build(l, weight, coefficients)?.report())
}

pub fn verify_cocycle<F: Field>(l: &GradedLieAlgebra<F>, c: &Cochain2<F>) -> Result<bool> {
    let cx = CochainComplex::build(l, c.weight(), c.coefficients())?;
    Ok(cx.is_cocycle(&cx.coordinates(c)?))
}

pub fn is_coboundary<F: Field>(l: &GradedLieAlgebra<F>, c: &Cochain2<F>) -> Result<bool> {
    let cx = CochainComplex::build(l, c.weight(), c.coefficients())?;
    Ok(cx.is_coboundary(&cx.coordinates(c)?))
}

/// Witt window that is closed for the weight-`w` trivial complex: the
/// extreme weights add up to `w`.
pub fn witt_closed_window(n: i64, w: i64) -> GradedLieAlgebra<Rational> {
    if w >= 0 {
        witt_range(w - n, n)
    } else {
        witt_range(-n, n + w)
    }
}

/// `H²` over several windows with the agreement verdict.
#[derive(Debug, Clone)]
pub struct StabilizedH2 {
    pub windows: Vec<(i64, CohomologyReport<Rational>)>,
    /// All windows agree.
    pub stabilized: bool,
    pub value: Option<usize>,
}

pub fn witt_h2_stabilized(windows: &[i64], weight: i64, coefficients: Coefficients) -> Result<StabilizedH2> {
    let mut out = Vec::new();
    for &n in windows {
        let l = match coefficients {
            Coefficients::Trivial => witt_closed_window(n, weight),
            Coefficients::Adjoint => witt_range(-n, n),
        };
        out.push((n, ce_h2(&l, Some(weight), coefficients)?));
    }
    let dims: Vec<usize> = out.iter().map(|(_, r)| r.dim_h).collect();
    let stabilized = dims.len() >= 2 && dims.windows(2).all(|w| w[0] == w[1]);
    Ok(StabilizedH2 { windows: out, stabilized, value: stabilized.then(|| dims[0]) })
}

/// Fiberwise comparison of `H²` of a parametric table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberCohomology {
    pub t0: String,
    /// `dim H²` of the evaluated table.
    pub fiber_h2: usize,
    /// `dim H²` read off the parametric complex evaluated at `t0`.
    pub evaluated_h2: usize,
    pub agree: bool,
    /// The fiber differs from the generic dimension.
    pub jump: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyBaseChange {
    pub generic_h2: usize,
    pub fibers: Vec<FiberCohomology>,
    /// Points where fiber and evaluated complex agree.
    pub agreement_set: Vec<String>,
}

/// For each point, compares `H²` of the specialized table with the ranks of
/// the parametric complex evaluated there. Full complex, trivial coefficients.
pub fn cohomology_base_change_check(
    table: &StructureConstants<UniPoly>,
    points: &[Rational],
) -> Result<CohomologyBaseChange> {
    let generic = GradedLieAlgebra::ungraded(table.map(|p| RatFunc::from_poly(p.clone())))?;
    let cx = CochainComplex::build(&generic, None, Coefficients::Trivial)?;
    let generic_h2 = cx.report().dim_h;
    let mut fibers = Vec::new();
    for t0 in points {
        let eval = |m: &ExactMatrix<RatFunc>| -> Result<ExactMatrix<Rational>> {
            let rows = (0..m.rows())
                .map(|i| m.row(i).iter().map(|x| x.eval(t0)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            ExactMatrix::from_rows(m.cols(), rows)
        };
        let (d1, d2) = (eval(&cx.d1)?, eval(&cx.d2)?);
        let evaluated_h2 = cx.dim_c2() - d2.rank() - d1.rank();
        let fiber = GradedLieAlgebra::ungraded(table.evaluate(t0))?;
        let fiber_h2 = ce_h2(&fiber, None, Coefficients::Trivial)?.dim_h;
        fibers.push(FiberCohomology {
            t0: t0.to_string(),
            fiber_h2,
            evaluated_h2,
            agree: fiber_h2 == evaluated_h2,
            jump: fiber_h2 != generic_h2,
        });
    }
    let agreement_set = fibers.iter().filter(|f| f.agree).map(|f| f.t0.clone()).collect();
    Ok(CohomologyBaseChange { generic_h2, fibers, agreement_set })
}
