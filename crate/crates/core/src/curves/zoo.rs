use std::collections::BTreeSet;
use std::sync::Arc;

use crate::arith::{Field, Rational};
use crate::error::{Error, Result};
use crate::poly::{Budget, MonomialOrder, MultiPoly, QuotientRing};

fn plane(relation: &str, order: MonomialOrder) -> QuotientRing<Rational> {
    QuotientRing::parse(&["X", "Y"], &[relation], order, Budget::default()).expect("fixed relation")
}

/// `ℚ[X, Y]/(Y² − 4(X − e)²(X + 2e))`; singular at `(e, 0)`, a node when `e ≠ 0`.
pub fn nodal_ring(e: &Rational) -> QuotientRing<Rational> {
    let x = MultiPoly::<Rational>::var(2, 0);
    let y = MultiPoly::<Rational>::var(2, 1);
    let c = |v: Rational| MultiPoly::constant(2, v);
    let xe = x.clone() - c(e.clone());
    let f = y.clone() * y - c(crate::arith::rat(4)) * xe.clone() * xe * (x + c(e.clone() + e.clone()));
    QuotientRing::new(vec!["X".into(), "Y".into()], vec![f], MonomialOrder::Grevlex, Budget::default()).expect("principal")
}

/// `ℚ[X, Y]/(Y² − 4X³)`.
pub fn cusp_ring() -> QuotientRing<Rational> {
    cusp_ring_with(MonomialOrder::Grevlex)
}

pub fn cusp_ring_with(order: MonomialOrder) -> QuotientRing<Rational> {
    plane("Y^2 - 4*X^3", order)
}

/// `ℚ[u, v]/(v² − u³)`, the image of `u = s², v = s³`.
pub fn cusp_monomial_ring() -> QuotientRing<Rational> {
    QuotientRing::parse(&["u", "v"], &["v^2 - u^3"], MonomialOrder::Grevlex, Budget::default()).expect("fixed relation")
}

/// `ℚ[x, y]/(xy − 1)`, functions on the punctured line.
pub fn laurent_ring() -> QuotientRing<Rational> {
    QuotientRing::parse(&["x", "y"], &["x*y - 1"], MonomialOrder::Grevlex, Budget::default()).expect("fixed relation")
}

/// `ℚ[name]`.
pub fn line_ring(name: &str) -> QuotientRing<Rational> {
    QuotientRing::free(vec![name.into()])
}

/// Jacobian criterion for a plane curve `(f)`: smooth iff `1 ∈ (f, f_X, f_Y)`.
pub fn smoothness_check<F: Field>(ring: &QuotientRing<F>) -> Result<bool> {
    let gens = ring.groebner_basis();
    if ring.nvars() != 2 || gens.len() != 1 {
        return Err(Error::Invalid("smoothness is checked for plane curves with one relation".into()));
    }
    let f = &gens[0];
    let jac = QuotientRing::new(
        ring.names().to_vec(),
        vec![f.clone(), f.derivative(0), f.derivative(1)],
        ring.order(),
        Budget::default(),
    )?;
    Ok(jac.is_zero_ring())
}

/// A ring with finitely many functions inverted by Rabinowitsch variables
/// `u_i` subject to `u_i·h_i − 1`.
#[derive(Debug, Clone)]
pub struct MarkedAffineRing {
    pub ring: Arc<QuotientRing<Rational>>,
    /// Canonical text of each inverted function, in the base variables.
    pub inverted: Vec<String>,
    /// Names of the adjoined inverse variables, matching `inverted`.
    pub inverse_names: Vec<String>,
}

/// Adjoins inverses of `functions` to `base`. Rejects functions lying in the
/// ideal and localizations that collapse the ring.
pub fn localize(base: &QuotientRing<Rational>, functions: &[MultiPoly<Rational>], budget: Budget) -> Result<MarkedAffineRing> {
    let n = base.nvars();
    let k = functions.len();
    let mut names = base.names().to_vec();
    let inverse_names: Vec<String> = (1..=k).map(|i| format!("u{i}")).collect();
    if inverse_names.iter().any(|u| names.contains(u)) {
        return Err(Error::Invalid("base ring already uses the inverse variable names".into()));
    }
    names.extend(inverse_names.iter().cloned());
    let embed: Vec<usize> = (0..n).collect();
    let mut gens: Vec<MultiPoly<Rational>> = base.generators().iter().map(|g| g.reembed(n + k, &embed)).collect();
    for (i, h) in functions.iter().enumerate() {
        if base.contains(h) {
            return Err(Error::DegenerateLocalization { function: base.to_text(h) });
        }
        let u = MultiPoly::var(n + k, n + i);
        gens.push(u * h.reembed(n + k, &embed) - MultiPoly::one(n + k));
    }
    let ring = QuotientRing::new(names, gens, base.order(), budget)?;
    if ring.is_zero_ring() {
        let all: Vec<String> = functions.iter().map(|h| base.to_text(h)).collect();
        return Err(Error::DegenerateLocalization { function: all.join(", ") });
    }
    Ok(MarkedAffineRing {
        ring: Arc::new(ring),
        inverted: functions.iter().map(|h| base.to_text(h)).collect(),
        inverse_names,
    })
}

/// `ℚ[x, u_1..u_k]/(u_i(x − p_i) − 1)`: the line minus the given points.
pub fn punctured_p1_ring(points: &[Rational]) -> Result<MarkedAffineRing> {
    let mut seen = BTreeSet::new();
    for p in points {
        if !seen.insert(p.clone()) {
            return Err(Error::CoincidentPoints { point: p.to_string() });
        }
    }
    let base = line_ring("x");
    let x = MultiPoly::var(1, 0);
    let hs: Vec<_> = points.iter().map(|p| x.clone() - MultiPoly::constant(1, p.clone())).collect();
    localize(&base, &hs, Budget::default())
}

/// Arithmetic genus bookkeeping for a plane curve of degree `degree` with
/// `nodes` nodes and `cusps` cusps: `(d − 1)(d − 2)/2 − nodes − cusps`.
pub fn genus(degree: u32, nodes: u32, cusps: u32) -> i64 {
    let d = degree as i64;
    (d - 1) * (d - 2) / 2 - nodes as i64 - cusps as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::poly::Monomial;

    #[test]
    fn smoothness_of_the_cubics() {
        assert!(smoothness_check(&plane("Y^2 - 4*X^3 + 4*X", MonomialOrder::Grevlex)).unwrap());
        assert!(!smoothness_check(&cusp_ring()).unwrap());
        assert!(!smoothness_check(&nodal_ring(&rat(1))).unwrap());
        assert!(smoothness_check(&laurent_ring()).is_ok());
        assert!(smoothness_check(&line_ring("x")).is_err());
    }

    #[test]
    fn node_sits_at_the_double_root() {
        let r = nodal_ring(&rat(1));
        let f = &r.groebner_basis()[0];
        let at = |x: i64| [f.eval(&[rat(x), rat(0)]), f.derivative(0).eval(&[rat(x), rat(0)])];
        assert_eq!(at(1), [rat(0), rat(0)]);
        assert_eq!(at(-2)[0], rat(0));
        assert_ne!(at(-2)[1], rat(0));
    }

    #[test]
    fn punctured_line_relations() {
        let m = punctured_p1_ring(&[rat(0), rat(1)]).unwrap();
        let stairs = m.ring.staircase_basis(1);
        for i in 0..3 {
            assert!(stairs.contains(&Monomial::var(3, i)));
        }
        let names = m.ring.names().to_vec();
        let u1x = crate::poly::parse_poly::<Rational>("u1*x - 1", &names).unwrap();
        let u2x = crate::poly::parse_poly::<Rational>("u2*x - u2 - 1", &names).unwrap();
        assert!(m.ring.contains(&u1x) && m.ring.contains(&u2x));
        assert_eq!(m.inverted, ["x", "x - 1"]);
    }

    #[test]
    fn single_puncture_is_laurent() {
        let m = punctured_p1_ring(&[rat(0)]).unwrap();
        assert_eq!(m.ring.ideal_text(), ["x*u1 - 1"]);
        assert_eq!(laurent_ring().ideal_text(), ["x*y - 1"]);
    }

    #[test]
    fn bad_localizations_are_rejected() {
        assert!(matches!(punctured_p1_ring(&[rat(2), rat(2)]), Err(Error::CoincidentPoints { .. })));
        let cusp = cusp_ring();
        let f = cusp.groebner_basis()[0].clone();
        assert!(matches!(localize(&cusp, &[f], Budget::default()), Err(Error::DegenerateLocalization { .. })));
        // X is a zero divisor modulo X*Y: inverting it kills Y, not the ring,
        // but inverting X*Y collapses everything.
        let xy = QuotientRing::<Rational>::parse(&["X", "Y"], &["X*Y"], MonomialOrder::Grevlex, Budget::default()).unwrap();
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        assert!(localize(&xy, std::slice::from_ref(&x), Budget::default()).is_ok());
        assert!(matches!(localize(&xy, &[x, y], Budget::default()), Err(Error::DegenerateLocalization { .. })));
    }

    #[test]
    fn genus_of_singular_cubics() {
        assert_eq!(genus(3, 0, 0), 1);
        assert_eq!(genus(3, 1, 0), 0);
        assert_eq!(genus(3, 0, 1), 0);
    }
}
