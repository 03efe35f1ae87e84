#![allow(dead_code)]

use std::sync::Arc;

use fiberfield::arith::{rat, Rational};
use fiberfield::curves::{
    cusp_monomial_ring, cusp_ring, laurent_ring, line_ring, nodal_ring, punctured_p1_ring, WeierstrassFamily,
};
use fiberfield::poly::{Budget, MonomialOrder, QuotientRing};

/// Every curve ring the toolkit builds, by name.
pub fn zoo() -> Vec<(&'static str, Arc<QuotientRing<Rational>>)> {
    let smooth = WeierstrassFamily::parse(["t", "-t", "0"])
        .unwrap()
        .fiber(&rat(1), MonomialOrder::Grevlex, Budget::default())
        .unwrap();
    vec![
        ("line", Arc::new(line_ring("x"))),
        ("laurent", Arc::new(laurent_ring())),
        ("cusp", Arc::new(cusp_ring())),
        ("cusp_monomial", Arc::new(cusp_monomial_ring())),
        ("nodal", Arc::new(nodal_ring(&rat(1)))),
        ("smooth_cubic", Arc::new(smooth)),
        ("punctured_01", punctured_p1_ring(&[rat(0), rat(1)]).unwrap().ring),
    ]
}

/// Exact rational Gauss-Jordan rank, written independently of the library.
pub fn oracle_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != rat(0)) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && m[r][c] != rat(0) {
                let f = m[r][c].clone() / pivot.clone();
                let pivot_row = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(pivot_row) {
                    *x -= p * f.clone();
                }
            }
        }
        rank += 1;
    }
    rank
}
