use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::poly::{Monomial, MultiPoly, QuotientRing};

/// Vector field `Σ g_i ∂/∂x_i` tangent to the ideal, with every `g_i` in
/// normal form.
#[derive(Debug, Clone)]
pub struct Derivation<F> {
    ring: Arc<QuotientRing<F>>,
    coeffs: Vec<MultiPoly<F>>,
}

impl<F: Field> PartialEq for Derivation<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.coeffs == other.coeffs
    }
}

pub(crate) fn same_ring<F: Field>(a: &Arc<QuotientRing<F>>, b: &Arc<QuotientRing<F>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// `Σ g_i ∂p/∂x_i` without reduction.
pub(crate) fn apply_raw<F: Field>(coeffs: &[MultiPoly<F>], p: &MultiPoly<F>) -> MultiPoly<F> {
    let mut out = MultiPoly::zero(p.nvars());
    for (i, g) in coeffs.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let d = p.derivative(i);
        if !d.is_zero() {
            out = out + g * &d;
        }
    }
    out
}

impl<F: Field> Derivation<F> {
    /// Reduces the coefficients and checks tangency against every basis
    /// element of the ideal.
    pub fn new(ring: Arc<QuotientRing<F>>, coeffs: Vec<MultiPoly<F>>) -> Result<Self> {
        if coeffs.len() != ring.nvars() || coeffs.iter().any(|g| g.nvars() != ring.nvars()) {
            return Err(Error::RingMismatch(format!(
                "derivation with {} coefficients on a ring in {} variables",
                coeffs.len(),
                ring.nvars()
            )));
        }
        let coeffs: Vec<_> = coeffs.iter().map(|g| ring.normal_form(g)).collect();
        for (k, f) in ring.groebner_basis().iter().enumerate() {
            let image = ring.normal_form(&apply_raw(&coeffs, f));
            if !image.is_zero() {
                return Err(Error::NotTangent { generator: k, image: ring.to_text(&image) });
            }
        }
        Ok(Derivation { ring, coeffs })
    }

    /// Trusted constructor for coefficients already known to be reduced and tangent.
    pub(crate) fn from_parts(ring: Arc<QuotientRing<F>>, coeffs: Vec<MultiPoly<F>>) -> Self {
        Derivation { ring, coeffs }
    }

    pub fn zero(ring: Arc<QuotientRing<F>>) -> Self {
        let n = ring.nvars();
        Derivation { ring, coeffs: vec![MultiPoly::zero(n); n] }
    }

    /// Parses one coefficient per variable.
    pub fn parse(ring: Arc<QuotientRing<F>>, coeffs: &[&str]) -> Result<Self> {
        let polys = coeffs.iter().map(|c| ring.parse_element(c)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn ring(&self) -> &Arc<QuotientRing<F>> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[MultiPoly<F>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    /// Largest total degree among the coefficients.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.iter().filter_map(MultiPoly::total_degree).max()
    }

    /// `D(p)` reduced in the ring.
    pub fn apply(&self, p: &MultiPoly<F>) -> MultiPoly<F> {
        self.ring.normal_form(&apply_raw(&self.coeffs, p))
    }

    pub fn scale(&self, c: &F) -> Self {
        Derivation { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|g| g.scale(c)).collect() }
    }

    /// `b · D` for a ring element `b`.
    pub fn mul_element(&self, b: &MultiPoly<F>) -> Self {
        let coeffs = self.coeffs.iter().map(|g| self.ring.normal_form(&(b * g))).collect();
        Derivation { ring: self.ring.clone(), coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Derivation { ring: self.ring.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Derivation { ring: self.ring.clone(), coeffs })
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch("derivations of different rings".into()))
        }
    }

    /// True when every coefficient vanishes at `point`.
    pub fn vanishes_at(&self, point: &[F]) -> bool {
        self.coeffs.iter().all(|g| g.eval(point).is_zero())
    }

    /// Coefficients in canonical text, one per variable.
    pub fn to_text(&self) -> Vec<String> {
        self.coeffs.iter().map(|g| self.ring.to_text(g)).collect()
    }

    /// Coordinates keyed by `(variable, monomial)`; columns are allotted by `index`.
    pub fn coordinates(&self, index: &mut CoordinateIndex) -> SparseVec<F> {
        let mut v = SparseVec::new();
        for (i, g) in self.coeffs.iter().enumerate() {
            for (m, c) in g.terms() {
                v.insert(index.column(i, m), c.clone());
            }
        }
        v
    }
}

/// Assigns dense column numbers to `(variable, monomial)` pairs.
#[derive(Debug, Default)]
pub struct CoordinateIndex {
    columns: BTreeMap<(usize, Monomial), usize>,
}

impl CoordinateIndex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column(&mut self, var: usize, m: &Monomial) -> usize {
        let n = self.columns.len();
        *self.columns.entry((var, m.clone())).or_insert(n)
    }
}

/// Commutator `[D1, D2] = D1∘D2 − D2∘D1`.
pub fn bracket<F: Field>(d1: &Derivation<F>, d2: &Derivation<F>) -> Result<Derivation<F>> {
    d1.check_ring(d2)?;
    let ring = &d1.ring;
    let coeffs = d1
        .coeffs
        .iter()
        .zip(&d2.coeffs)
        .map(|(g1, g2)| ring.normal_form(&(apply_raw(&d1.coeffs, g2) - apply_raw(&d2.coeffs, g1))))
        .collect();
    Ok(Derivation { ring: ring.clone(), coeffs })
}
