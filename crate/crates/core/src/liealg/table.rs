use std::collections::BTreeMap;

use crate::arith::{Rational, Ring, UniPoly};
use crate::error::{Error, Result};

/// Sparse linear combination of basis elements, sorted by index with no
/// zero coefficients.
pub type Combination<C> = Vec<(usize, C)>;

fn canonical<C: Ring>(mut v: Combination<C>) -> Combination<C> {
    v.sort_by_key(|(k, _)| *k);
    let mut out: Combination<C> = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == k => *acc = acc.clone() + c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

fn negate<C: Ring>(v: &Combination<C>) -> Combination<C> {
    v.iter().map(|(k, c)| (*k, -c.clone())).collect()
}

/// Bracket table on a finite basis, stored for `i < j` only.
///
/// A pair without an entry is undefined: in a truncated window that means
/// the true bracket leaves the window. An entry with no terms is a bracket
/// that is defined and zero.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants<C> {
    dim: usize,
    entries: BTreeMap<(usize, usize), Combination<C>>,
}

impl<C: Ring> StructureConstants<C> {
    /// Table with every bracket undefined.
    pub fn partial(dim: usize) -> Self {
        StructureConstants { dim, entries: BTreeMap::new() }
    }

    /// Table with every bracket defined and zero.
    pub fn abelian(dim: usize) -> Self {
        let mut t = Self::partial(dim);
        for j in 0..dim {
            for i in 0..j {
                t.entries.insert((i, j), Vec::new());
            }
        }
        t
    }

    /// Complete table from `(i, j) -> combination` entries; pairs not listed
    /// are zero. Both orientations of a pair may be given only if they are
    /// negatives of each other.
    pub fn from_entries(dim: usize, entries: Vec<((usize, usize), Combination<C>)>) -> Result<Self> {
        let mut seen: BTreeMap<(usize, usize), Combination<C>> = BTreeMap::new();
        for ((i, j), v) in entries {
            if i >= dim || j >= dim || v.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::Invalid(format!("index out of range in bracket ({i}, {j})")));
            }
            let v = canonical(v);
            if i == j {
                if !v.is_empty() {
                    return Err(Error::Antisymmetry { i, j });
                }
                continue;
            }
            let (key, v) = if i < j { ((i, j), v) } else { ((j, i), negate(&v)) };
            if let Some(prev) = seen.get(&key) {
                if *prev != v {
                    return Err(Error::Antisymmetry { i: key.0, j: key.1 });
                }
            }
            seen.insert(key, v);
        }
        let mut t = Self::abelian(dim);
        t.entries.extend(seen);
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Records `[e_i, e_j] = v` (and implicitly `[e_j, e_i] = -v`).
    pub fn define(&mut self, i: usize, j: usize, v: Combination<C>) {
        assert!(i != j && i < self.dim && j < self.dim);
        let v = canonical(v);
        if i < j {
            self.entries.insert((i, j), v);
        } else {
            self.entries.insert((j, i), negate(&v));
        }
    }

    pub fn is_defined(&self, i: usize, j: usize) -> bool {
        i == j || self.entries.contains_key(&(i.min(j), i.max(j)))
    }

    /// `[e_i, e_j]`, or `None` when undefined.
    pub fn bracket(&self, i: usize, j: usize) -> Option<Combination<C>> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Some(Vec::new()),
            std::cmp::Ordering::Less => self.entries.get(&(i, j)).cloned(),
            std::cmp::Ordering::Greater => self.entries.get(&(j, i)).map(negate),
        }
    }

    /// Defined brackets with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Combination<C>)> {
        self.entries.iter()
    }

    pub fn is_complete(&self) -> bool {
        self.entries.len() == self.dim * self.dim.saturating_sub(1) / 2
    }

    pub fn is_abelian(&self) -> bool {
        self.entries.values().all(Vec::is_empty)
    }

    /// Bracket of two combinations, or `None` if any needed entry is undefined.
    pub fn bracket_combinations(&self, x: &Combination<C>, y: &Combination<C>) -> Option<Combination<C>> {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in self.bracket(*i, *j)? {
                    acc.push((k, a.clone() * b.clone() * c));
                }
            }
        }
        Some(canonical(acc))
    }

    /// First triple violating Jacobi among those with every needed bracket defined.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    if let Some(sum) = self.jacobiator(i, j, k) {
                        if !sum.is_empty() {
                            return Some((i, j, k));
                        }
                    }
                }
            }
        }
        None
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]` when defined.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Option<Combination<C>> {
        let term = |a: usize, b: usize, c: usize| -> Option<Combination<C>> {
            let ab = self.bracket(a, b)?;
            self.bracket_combinations(&ab, &vec![(c, C::one())])
        };
        let mut acc = term(i, j, k)?;
        acc.extend(term(j, k, i)?);
        acc.extend(term(k, i, j)?);
        Some(canonical(acc))
    }

    pub fn map<D: Ring>(&self, mut f: impl FnMut(&C) -> D) -> StructureConstants<D> {
        StructureConstants {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (*k, canonical(v.iter().map(|(i, c)| (*i, f(c))).collect())))
                .collect(),
        }
    }

    pub fn try_map<D: Ring>(&self, mut f: impl FnMut(&C) -> Result<D>) -> Result<StructureConstants<D>> {
        let mut entries = BTreeMap::new();
        for (k, v) in &self.entries {
            let mut w = Vec::with_capacity(v.len());
            for (i, c) in v {
                w.push((*i, f(c)?));
            }
            entries.insert(*k, canonical(w));
        }
        Ok(StructureConstants { dim: self.dim, entries })
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.clone() * s.clone())
    }
}

impl StructureConstants<UniPoly> {
    /// Table at `t = t0`.
    pub fn evaluate(&self, t0: &Rational) -> StructureConstants<Rational> {
        self.map(|p| p.eval(t0))
    }
}

impl StructureConstants<Rational> {
    /// Constant family `table ⊗ ℚ[t]`.
    pub fn constant_family(&self) -> StructureConstants<UniPoly> {
        self.map(|c| UniPoly::constant(c.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn sl2() -> StructureConstants<Rational> {
        // basis e, f, h: [e,f] = h, [h,e] = 2e, [h,f] = -2f
        StructureConstants::from_entries(
            3,
            vec![((0, 1), vec![(2, rat(1))]), ((2, 0), vec![(0, rat(2))]), ((2, 1), vec![(1, rat(-2))])],
        )
        .unwrap()
    }

    #[test]
    fn stores_antisymmetrically() {
        let t = sl2();
        assert_eq!(t.bracket(0, 2), Some(vec![(0, rat(-2))]));
        assert_eq!(t.bracket(2, 0), Some(vec![(0, rat(2))]));
        assert_eq!(t.bracket(1, 1), Some(vec![]));
        assert!(t.is_complete());
        assert_eq!(t.jacobi_violation(), None);
    }

    #[test]
    fn rejects_non_negated_pair() {
        let r = StructureConstants::from_entries(
            4,
            vec![((1, 2), vec![(3, rat(1))]), ((2, 1), vec![(3, rat(1))])],
        );
        assert_eq!(r, Err(Error::Antisymmetry { i: 1, j: 2 }));
    }

    #[test]
    fn detects_jacobi_failure() {
        // [a,b] = a, [a,c] = b, [b,c] = 0 violates Jacobi on (a,b,c)
        let t = StructureConstants::from_entries(
            3,
            vec![((0, 1), vec![(0, rat(1))]), ((0, 2), vec![(1, rat(1))])],
        )
        .unwrap();
        assert_eq!(t.jacobi_violation(), Some((0, 1, 2)));
        assert_eq!(StructureConstants::<Rational>::abelian(4).jacobi_violation(), None);
    }

    #[test]
    fn undefined_brackets_skip_jacobi() {
        let mut t = StructureConstants::<Rational>::partial(3);
        t.define(0, 1, vec![(2, rat(1))]);
        assert!(!t.is_defined(0, 2));
        assert_eq!(t.jacobiator(0, 1, 2), None);
    }
}
