use std::collections::BTreeSet;

use super::monomial::{Monomial, MonomialOrder};
use super::multipoly::MultiPoly;
use crate::arith::Field;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 100_000;

/// Cap on reduction steps, so that runaway inputs end in a clean error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { limit: DEFAULT_BUDGET }
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }

    pub fn meter(self) -> Meter {
        Meter { used: 0, limit: self.limit }
    }
}

/// Running count of reduction steps against a [`Budget`].
#[derive(Debug)]
pub struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    pub fn unlimited() -> Self {
        Meter { used: 0, limit: u64::MAX }
    }

    pub fn charge(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// Full reduction of `p` by `basis`: no term of the result is divisible by
/// a leading monomial of the basis. Basis elements must be monic.
pub fn reduce<F: Field>(
    p: &MultiPoly<F>,
    basis: &[MultiPoly<F>],
    order: MonomialOrder,
    meter: &mut Meter,
) -> Result<MultiPoly<F>> {
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial(order).expect("nonzero basis element").clone())
        .collect();
    let mut rest = p.clone();
    let mut rem = MultiPoly::zero(p.nvars());
    while let Some((m, c)) = rest.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().position(|l| l.divides(&m)) {
            Some(k) => {
                meter.charge(1)?;
                let q = m.div(&leads[k]).unwrap();
                rest = rest - basis[k].mul_term(&q, &c);
            }
            None => {
                rest.add_term(m.clone(), -c.clone());
                rem.add_term(m, c);
            }
        }
    }
    Ok(rem)
}

fn monic<F: Field>(p: &MultiPoly<F>, order: MonomialOrder) -> Result<MultiPoly<F>> {
    let (_, lc) = p.leading_term(order).ok_or(Error::DivisionByZero)?;
    Ok(p.scale(&lc.inv()?))
}

fn s_poly<F: Field>(f: &MultiPoly<F>, g: &MultiPoly<F>, order: MonomialOrder) -> MultiPoly<F> {
    let lf = f.leading_monomial(order).unwrap();
    let lg = g.leading_monomial(order).unwrap();
    let l = lf.lcm(lg);
    let one = F::one();
    f.mul_term(&l.div(lf).unwrap(), &one) - g.mul_term(&l.div(lg).unwrap(), &one)
}

/// Reduced Gröbner basis of the ideal generated by `gens`, monic and sorted
/// by ascending leading monomial.
pub fn groebner_basis<F: Field>(
    gens: &[MultiPoly<F>],
    order: MonomialOrder,
    budget: Budget,
) -> Result<Vec<MultiPoly<F>>> {
    let mut meter = budget.meter();
    let mut basis: Vec<MultiPoly<F>> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        basis.push(monic(g, order)?);
    }
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((i, j));
        }
    }
    while let Some(&(i, j)) = pairs.iter().next() {
        pairs.remove(&(i, j));
        let li = basis[i].leading_monomial(order).unwrap().clone();
        let lj = basis[j].leading_monomial(order).unwrap().clone();
        if li.coprime(&lj) {
            continue;
        }
        // chain criterion: some k with LM_k | lcm and both (i,k), (j,k) already treated
        let l = li.lcm(&lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial(order).unwrap().divides(&l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        meter.charge(1)?;
        let h = reduce(&s_poly(&basis[i], &basis[j], order), &basis, order, &mut meter)?;
        if !h.is_zero() {
            let n = basis.len();
            basis.push(monic(&h, order)?);
            for k in 0..n {
                pairs.insert((k, n));
            }
        }
    }
    interreduce(basis, order, &mut meter)
}

fn interreduce<F: Field>(
    basis: Vec<MultiPoly<F>>,
    order: MonomialOrder,
    meter: &mut Meter,
) -> Result<Vec<MultiPoly<F>>> {
    // drop elements whose leading monomial is divisible by another's
    let leads: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial(order).unwrap().clone()).collect();
    let mut keep: Vec<MultiPoly<F>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = leads.iter().enumerate().any(|(j, l)| {
            j != i && l.divides(&leads[i]) && (l != &leads[i] || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<MultiPoly<F>> =
            keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        let r = reduce(&keep[i], &others, order, meter)?;
        out.push(monic(&r, order)?);
    }
    out.sort_by(|a, b| order.cmp(a.leading_monomial(order).unwrap(), b.leading_monomial(order).unwrap()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Rational};
    use crate::poly::parse_poly;

    fn p(s: &str, names: &[&str]) -> MultiPoly<Rational> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        parse_poly(s, &names).unwrap()
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let f = p("Y^2 - 4*X^3", &["X", "Y"]);
        let gb = groebner_basis(std::slice::from_ref(&f), MonomialOrder::Grevlex, Budget::default()).unwrap();
        // monic under grevlex, where X^3 leads
        assert_eq!(gb, vec![f.scale(&rat(-4).recip())]);
        assert_eq!(gb[0], p("X^3 - 1/4*Y^2", &["X", "Y"]));
    }

    #[test]
    fn two_generator_membership() {
        let v = ["X", "Y"];
        let gens = [p("X^2 - Y", &v), p("Y^2 - X", &v)];
        let gb = groebner_basis(&gens, MonomialOrder::Lex, Budget::default()).unwrap();
        let r = reduce(&p("X^4 - X", &v), &gb, MonomialOrder::Lex, &mut Meter::unlimited()).unwrap();
        assert!(r.is_zero());
        // independent oracle: the known reduced lex basis {X - Y^2, Y^4 - Y}
        assert_eq!(gb, vec![p("Y^4 - Y", &v), p("X - Y^2", &v)]);
    }

    #[test]
    fn idempotent_on_reduced_basis() {
        let v = ["x", "y", "z"];
        let gens = [p("x*y - z", &v), p("y*z - x", &v), p("x*z - y", &v)];
        let gb = groebner_basis(&gens, MonomialOrder::Grevlex, Budget::default()).unwrap();
        let again = groebner_basis(&gb, MonomialOrder::Grevlex, Budget::default()).unwrap();
        assert_eq!(gb, again);
    }

    #[test]
    fn budget_is_enforced() {
        let v = ["x", "y", "z"];
        let gens = [p("x*y - z", &v), p("y*z - x", &v), p("x*z - y", &v)];
        let r = groebner_basis(&gens, MonomialOrder::Grevlex, Budget::new(1));
        assert_eq!(r, Err(Error::BudgetExceeded { limit: 1 }));
    }
}
