use std::sync::Arc;

use super::zoo::{cusp_ring, line_ring, nodal_ring};
use crate::arith::{rat, ratio, Rational, Zero};
use serde::Serialize;

use crate::derivations::{derivation_basis, Derivation, DerivationBasis, RingMap};
use crate::liealg::{from_fields, DerivedAlgebra};
use crate::poly::Budget;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, QuotientRing};

/// Normalization `ℚ[X, Y]/(Y² − 4X³) → ℚ[s]`, `X ↦ s²`, `Y ↦ 2s³`, with
/// transport of vector fields in both directions.
#[derive(Debug, Clone)]
pub struct CuspNormalization {
    pub map: RingMap<Rational>,
}

/// Builds the cusp normalization; well-definedness is checked on construction.
pub fn normalize_cuspidal() -> CuspNormalization {
    let cusp = Arc::new(cusp_ring());
    let line = Arc::new(line_ring("s"));
    let map = RingMap::parse(cusp, line, &["s^2", "2*s^3"]).expect("s^2, 2s^3 satisfy the cusp relation");
    CuspNormalization { map }
}

fn s_power(k: u32) -> Monomial {
    Monomial::new(vec![k])
}

/// Exact quotient of a polynomial in `s` by `c·s^k`.
fn divide_by_monomial(p: &MultiPoly<Rational>, c: &Rational, k: u32) -> Option<MultiPoly<Rational>> {
    let mut out = MultiPoly::zero(1);
    for (m, v) in p.terms() {
        let e = m.exponents()[0].checked_sub(k)?;
        out.add_term(s_power(e), v.clone() / c.clone());
    }
    Some(out)
}

impl CuspNormalization {
    pub fn cusp(&self) -> &Arc<QuotientRing<Rational>> {
        self.map.source()
    }

    pub fn line(&self) -> &Arc<QuotientRing<Rational>> {
        self.map.target()
    }

    /// The field `c(s)∂_s` on the line that the cusp field `d` comes from.
    pub fn lift(&self, d: &Derivation<Rational>) -> Result<Derivation<Rational>> {
        let [gx, gy] = [0, 1].map(|i| self.map.apply(&d.coeffs()[i]));
        // d(X) = 2s·c and d(Y) = 6s²·c
        let c = divide_by_monomial(&gx, &rat(2), 1)
            .ok_or_else(|| Error::Invalid("the field does not lift to the normalization".into()))?;
        let check = c.mul_term(&s_power(2), &rat(6));
        if check != gy {
            return Err(Error::Invalid("the field does not lift to the normalization".into()));
        }
        Derivation::new(self.line().clone(), vec![c])
    }

    /// Writes a polynomial in `s` as an element of the cusp ring, when it lies
    /// in the subring `ℚ[s², s³]`.
    pub fn preimage(&self, p: &MultiPoly<Rational>) -> Option<MultiPoly<Rational>> {
        let mut out = MultiPoly::zero(2);
        for (m, c) in p.terms() {
            let k = m.exponents()[0];
            let (mono, scale) = match k {
                1 => return None,
                _ if k % 2 == 0 => (Monomial::new(vec![k / 2, 0]), rat(1)),
                _ => (Monomial::new(vec![(k - 3) / 2, 1]), ratio(1, 2)),
            };
            out.add_term(mono, c.clone() * scale);
        }
        Some(self.cusp().normal_form(&out))
    }

    /// Pushes `c(s)∂_s` down to the cusp; fails when the field does not
    /// preserve the image subring, as for `∂_s`.
    pub fn descend(&self, d: &Derivation<Rational>) -> Result<Derivation<Rational>> {
        let c = &d.coeffs()[0];
        let dx = c.mul_term(&s_power(1), &rat(2));
        let dy = c.mul_term(&s_power(2), &rat(6));
        let not_descending = || Error::Invalid(format!("{} does not preserve the cusp subring", d.to_text()[0]));
        let gx = self.preimage(&dx).ok_or_else(not_descending)?;
        let gy = self.preimage(&dy).ok_or_else(not_descending)?;
        Derivation::new(self.cusp().clone(), vec![gx, gy])
    }

    /// Rewrites a solved cusp slice in the basis `s^{n+1}∂_s` pushed down
    /// from the line, where the constants are those of the Witt algebra.
    pub fn witt_fields(&self, basis: &DerivationBasis<Rational>) -> Result<DerivedAlgebra<Rational>> {
        let lifted = basis.basis().iter().map(|d| self.lift(d)).collect::<Result<Vec<_>>>()?;
        let top = lifted.iter().filter_map(|d| d.degree()).max().unwrap_or(0);
        let mut fields = Vec::new();
        let mut weights = Vec::new();
        for n in 0..top as i64 {
            let line_field = Derivation::new(self.line().clone(), vec![MultiPoly::term(s_power(n as u32 + 1), rat(1))])?;
            let d = self.descend(&line_field)?;
            if basis.spans(&d) {
                fields.push(d);
                weights.push(n);
            }
        }
        if fields.len() != basis.len() {
            return Err(Error::Invalid("the slice is not spanned by pushed-down monomial fields".into()));
        }
        from_fields(fields, Some(weights))
    }
}

/// How the solved cusp slice at one bound sits inside the fields on the line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuspGap {
    pub cusp_bound: u32,
    pub cusp_dim: usize,
    /// Smallest line bound containing every lifted field.
    pub line_bound: u32,
    pub line_dim: usize,
    /// Every lifted field is a solved field on the line.
    pub lifts_embed: bool,
    /// `∂_s` is outside the lifted span and completes it to the line slice.
    pub missing_is_d_ds: bool,
}

pub fn cusp_gap(norm: &CuspNormalization, bound: u32, budget: Budget) -> Result<CuspGap> {
    let cusp = derivation_basis(norm.cusp(), bound, budget)?;
    let lifted = cusp.basis().iter().map(|d| norm.lift(d)).collect::<Result<Vec<_>>>()?;
    let line_bound = lifted.iter().filter_map(|d| d.degree()).max().unwrap_or(0);
    let line = derivation_basis(norm.line(), line_bound, budget)?;
    let lifts_embed = line.contains_span_of(&lifted);
    let lifted_basis = DerivationBasis::from_parts(norm.line().clone(), line_bound, lifted.clone(), false);
    let ds = Derivation::new(norm.line().clone(), vec![MultiPoly::one(1)])?;
    let mut extended = lifted;
    extended.push(ds.clone());
    let completes = DerivationBasis::from_parts(norm.line().clone(), line_bound, extended, false).contains_span_of(line.basis());
    Ok(CuspGap {
        cusp_bound: bound,
        cusp_dim: cusp.len(),
        line_bound,
        line_dim: line.len(),
        lifts_embed,
        missing_is_d_ds: !lifted_basis.spans(&ds) && completes,
    })
}

/// A verified parametrization of the nodal cubic by the line.
#[derive(Debug, Clone)]
pub struct NodalNormalization {
    pub e: Rational,
    pub map: RingMap<Rational>,
    /// Images of `X`, `Y` that were offered and failed the identity, with
    /// the nonzero residue of the relation.
    pub rejected: Vec<(Vec<String>, String)>,
    /// The singular point `(e, 0)`.
    pub node: (Rational, Rational),
    /// Parameters over the node, when `3e` is a rational square.
    pub node_preimages: Option<(Rational, Rational)>,
}

fn cubic_images(shift: Rational, linear: Rational) -> [MultiPoly<Rational>; 2] {
    let m = MultiPoly::<Rational>::var(1, 0);
    let c = |v: Rational| MultiPoly::constant(1, v);
    let m2 = m.clone() * m.clone();
    [m2.clone() + c(shift), c(rat(2)) * m.clone() * m2 + c(linear) * m]
}

/// Candidate from the literature, kept as the first attempt: `X = e + m²`,
/// `Y = 2m(m² + 3e)`.
pub fn nodal_candidate(e: &Rational) -> [MultiPoly<Rational>; 2] {
    cubic_images(e.clone(), rat(6) * e.clone())
}

/// Parametrization through the node: `X = m² − 2e`, `Y = 2m(m² − 3e)`.
pub fn nodal_parametrization(e: &Rational) -> [MultiPoly<Rational>; 2] {
    cubic_images(rat(-2) * e.clone(), rat(-6) * e.clone())
}

/// Checks that `images` send the nodal relation to zero in `ℚ[m]`.
pub fn check_parametrization(e: &Rational, images: &[MultiPoly<Rational>; 2]) -> Result<RingMap<Rational>> {
    let nodal = Arc::new(nodal_ring(e));
    let line = Arc::new(line_ring("m"));
    let residue = line.normal_form(&nodal.generators()[0].substitute(images));
    if !residue.is_zero() {
        return Err(Error::ParametrizationRejected { residue: line.to_text(&residue) });
    }
    RingMap::new(nodal, line, images.to_vec())
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r < &Rational::zero() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Tries the literature candidate, then the parametrization through the node;
/// returns the first one passing the symbolic identity.
pub fn normalize_nodal(e: &Rational) -> Result<NodalNormalization> {
    if e.is_zero() {
        return Err(Error::Invalid("e = 0 is the cuspidal cubic".into()));
    }
    let mut rejected = Vec::new();
    for images in [nodal_candidate(e), nodal_parametrization(e)] {
        match check_parametrization(e, &images) {
            Ok(map) => {
                let node_preimages = rational_sqrt(&(rat(3) * e.clone())).map(|r| (-r.clone(), r));
                return Ok(NodalNormalization {
                    e: e.clone(),
                    map,
                    rejected,
                    node: (e.clone(), rat(0)),
                    node_preimages,
                });
            }
            Err(Error::ParametrizationRejected { residue }) => {
                let line = line_ring("m");
                rejected.push((images.iter().map(|p| line.to_text(p)).collect(), residue))
            }
            Err(other) => return Err(other),
        }
    }
    let residue = rejected.last().map(|r| r.1.clone()).unwrap_or_default();
    Err(Error::ParametrizationRejected { residue })
}
