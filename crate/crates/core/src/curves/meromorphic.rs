//! Vector fields `f(x)∂_x` on the sphere minus finitely many rational points
//! and infinity, in a basis adapted to pole order.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{rat, One, RatFunc, Rational, UniPoly, Zero};
use crate::error::{Error, Result};
use crate::liealg::{stabilized_h2, FilteredLieAlgebra, StabilizedHomology, StructureConstants};

/// Truncation levels used when none are requested.
pub const DEFAULT_TRUNCATIONS: [u32; 2] = [2, 3];

#[derive(Debug, Clone, PartialEq)]
enum Element {
    /// `x^n ∂`
    Power(u32),
    /// `(x − points[k])^{-j} ∂`
    Pole(usize, u32),
}

fn level(e: &Element) -> u32 {
    match e {
        Element::Power(n) => n.saturating_sub(2),
        Element::Pole(_, j) => *j,
    }
}

fn as_function(e: &Element, points: &[Rational]) -> RatFunc {
    match e {
        Element::Power(n) => RatFunc::from_poly(UniPoly::t().pow(*n)),
        Element::Pole(k, j) => {
            let den = UniPoly::new(vec![-points[*k].clone(), rat(1)]).pow(*j);
            RatFunc::new(UniPoly::one(), den).expect("nonzero denominator")
        }
    }
}

fn derivative(r: &RatFunc) -> RatFunc {
    let (n, d) = (r.num(), r.den());
    RatFunc::new(n.derivative() * d.clone() - n.clone() * d.derivative(), d.clone() * d.clone()).expect("nonzero")
}

/// Taylor coefficients of `num/den` at `p`, orders `0..count`.
fn taylor(num: &UniPoly, den: &UniPoly, p: &Rational, count: usize) -> Vec<Rational> {
    let (n, d) = (num.shift(p), den.shift(p));
    let d0 = d.coeff(0);
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    for k in 0..count {
        let mut s = n.coeff(k);
        for i in 1..=k {
            s -= d.coeff(i) * out[k - i].clone();
        }
        out.push(s / d0.clone());
    }
    out
}

/// Coordinates of `r` in the basis: polynomial part, then principal parts at
/// each point. Fails if `r` has a pole elsewhere.
fn decompose(r: &RatFunc, points: &[Rational]) -> Result<(UniPoly, Vec<Vec<Rational>>)> {
    let mut rest = r.den().clone();
    let mut principal = Vec::with_capacity(points.len());
    for p in points {
        let lin = UniPoly::new(vec![-p.clone(), rat(1)]);
        let mut m = 0;
        loop {
            let (q, rem) = rest.div_rem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            rest = q;
            m += 1;
        }
        let cofactor = r.den().div_rem(&lin.pow(m))?.0;
        let t = taylor(r.num(), &cofactor, p, m as usize);
        // coefficient of (x − p)^{-j} is the Taylor coefficient of order m − j
        principal.push((1..=m as usize).map(|j| t[m as usize - j].clone()).collect());
    }
    if rest.degree() != Some(0) {
        return Err(Error::Invalid(format!("pole outside the punctures: {rest}")));
    }
    let poly = r.num().div_rem(r.den())?.0;
    Ok((poly, principal))
}

/// Pole-order filtered basis up to level `top`, with every bracket whose
/// product provably stays within `top` recorded.
pub fn meromorphic_window(points: &[Rational], top: u32) -> Result<FilteredLieAlgebra<Rational>> {
    let mut seen = BTreeSet::new();
    for p in points {
        if !seen.insert(p.clone()) {
            return Err(Error::CoincidentPoints { point: p.to_string() });
        }
    }
    let mut basis: Vec<Element> = (0..=top + 2).map(Element::Power).collect();
    for k in 0..points.len() {
        basis.extend((1..=top).map(|j| Element::Pole(k, j)));
    }
    let index = |e: &Element| basis.iter().position(|b| b == e);
    let functions: Vec<RatFunc> = basis.iter().map(|e| as_function(e, points)).collect();
    let derivs: Vec<RatFunc> = functions.iter().map(derivative).collect();
    let mut table = StructureConstants::partial(basis.len());
    for j in 0..basis.len() {
        for i in 0..j {
            if level(&basis[i]) + level(&basis[j]) + 1 > top {
                continue;
            }
            let f = functions[i].clone() * derivs[j].clone() - derivs[i].clone() * functions[j].clone();
            let (poly, principal) = decompose(&f, points)?;
            let mut comb = Vec::new();
            for (n, c) in poly.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    comb.push((index(&Element::Power(n as u32)).ok_or_else(|| overflow(top))?, c.clone()));
                }
            }
            for (k, cs) in principal.iter().enumerate() {
                for (jj, c) in cs.iter().enumerate() {
                    if !c.is_zero() {
                        comb.push((index(&Element::Pole(k, jj as u32 + 1)).ok_or_else(|| overflow(top))?, c.clone()));
                    }
                }
            }
            comb.sort_by_key(|(k, _)| *k);
            table.define(i, j, comb);
        }
    }
    let labels = basis
        .iter()
        .map(|e| match e {
            Element::Power(n) => format!("x^{n}"),
            Element::Pole(k, j) => {
                let p = &points[*k];
                if p.is_zero() {
                    format!("x^-{j}")
                } else {
                    format!("(x - {p})^-{j}")
                }
            }
        })
        .collect();
    Ok(FilteredLieAlgebra { labels, levels: basis.iter().map(level).collect(), table })
}

fn overflow(top: u32) -> Error {
    Error::WindowClosure { what: format!("bracket beyond level {top}") }
}

/// Windowed second (co)homology of the vector fields on the sphere minus
/// `points` and infinity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeromorphicH2 {
    /// Finite punctures; infinity is always removed.
    pub points: Vec<String>,
    pub truncations: Vec<u32>,
    pub homology: StabilizedHomology,
    /// The stabilized dimension, which is also that of `H²` with trivial
    /// coefficients; absent when the truncations disagree.
    pub dim_h2: Option<usize>,
}

pub fn meromorphic_h2(points: &[Rational], truncations: &[u32]) -> Result<MeromorphicH2> {
    let top = truncations.iter().copied().max().unwrap_or(0);
    let alg = meromorphic_window(points, 2 * top + 1)?;
    let homology = stabilized_h2(&alg, truncations)?;
    Ok(MeromorphicH2 {
        points: points.iter().map(ToString::to_string).collect(),
        truncations: truncations.to_vec(),
        dim_h2: homology.value,
        homology,
    })
}
