use std::sync::Arc;

use serde_json::{json, Value};

use super::config::{BuiltCurve, CurveKind, GradingConfig, RunConfig};
use super::{json as enc, CliError, CliResult, Outcome};
use crate::arith::{Field, RatFunc, Rational, UniPoly, Zero};
use crate::curves::{cusp_gap, normalize_cuspidal, smoothness_check};
use crate::derivations::{base_change_with, derivation_basis, rank_one_freeness, Derivation, DerivationBasis};
use crate::liealg::{from_derivations, witt_range, DerivedAlgebra, Grading};
use crate::poly::{Budget, QuotientRing};

pub fn run(cfg: &RunConfig) -> CliResult<Outcome> {
    let curve = cfg.curve.as_ref().ok_or_else(|| CliError::Config("der-solve needs a `curve` section".into()))?;
    let bound = cfg.degree_bound.unwrap_or(curve.degree_bound);
    let budget = cfg.budget();
    let points = cfg.parsed_points().map_err(CliError::config)?;
    let results = match curve.build(budget).map_err(CliError::config)? {
        BuiltCurve::Rational { ring, euler, kind } => {
            let grading = match (&cfg.grading, euler) {
                (Some(g), _) => user_grading(&ring, g)?,
                (None, Some(e)) => {
                    let refs: Vec<&str> = e.iter().map(String::as_str).collect();
                    Grading::Euler(Derivation::parse(ring.clone(), &refs)?)
                }
                (None, None) => Grading::None,
            };
            let mut out = solve(&ring, bound, grading, budget, cfg.grading.is_some())?;
            if kind == CurveKind::Cusp {
                out["normalization"] = cusp_pullback(bound, budget)?;
            }
            out
        }
        BuiltCurve::Parametric { ring, discriminant } => {
            if cfg.grading.is_some() {
                return Err(CliError::Config("a parametric family is solved without a grading".into()));
            }
            solve_family(&ring, &discriminant, bound, &points, budget)?
        }
    };
    Ok(Outcome { results, alerts: Vec::new() })
}

fn user_grading(ring: &Arc<QuotientRing<Rational>>, g: &GradingConfig) -> CliResult<Grading<Rational>> {
    Ok(match g {
        GradingConfig::Euler(coeffs) => {
            let refs: Vec<&str> = coeffs.iter().map(String::as_str).collect();
            Grading::Euler(Derivation::parse(ring.clone(), &refs).map_err(CliError::config)?)
        }
        GradingConfig::Weights(w) => Grading::Weights(w.clone()),
        GradingConfig::None => Grading::None,
    })
}

/// Dimension of the solved slice at every bound up to `bound`.
pub(super) fn dims_by_bound<F: Field>(ring: &Arc<QuotientRing<F>>, bound: u32, budget: Budget) -> CliResult<Vec<usize>> {
    (0..=bound).map(|b| Ok(derivation_basis(ring, b, budget)?.len())).collect()
}

/// Whether the weights form `lo..=hi` with one field each, and if so whether
/// the table is literally that of the Witt range.
pub(super) fn witt_comparison(d: &DerivedAlgebra<Rational>) -> Value {
    let Some((lo, hi)) = contiguous(d.algebra.weights()) else {
        return json!({ "comparable": false, "matches": false });
    };
    let matches = d.algebra.table() == witt_range(lo, hi).table();
    json!({ "comparable": true, "window": [lo, hi], "matches": matches })
}

fn contiguous(weights: Option<&[i64]>) -> Option<(i64, i64)> {
    let w = weights?;
    let (lo, hi) = (*w.first()?, *w.last()?);
    w.iter().zip(lo..).all(|(a, b)| *a == b).then_some((lo, hi))
}

/// `two-sided` when the weights straddle zero, `one-sided` otherwise.
pub(super) fn window_shape(weights: Option<&[i64]>) -> Value {
    match weights.and_then(|w| Some((*w.iter().min()?, *w.iter().max()?))) {
        Some((lo, hi)) => {
            let shape = if lo < 0 && hi > 0 { "two-sided" } else { "one-sided" };
            json!({ "shape": shape, "min_weight": lo, "max_weight": hi })
        }
        None => json!({ "shape": "ungraded" }),
    }
}

/// Basis, table and structural checks for a ring over `ℚ`.
pub(super) fn solve(
    ring: &Arc<QuotientRing<Rational>>,
    bound: u32,
    grading: Grading<Rational>,
    budget: Budget,
    user_grading: bool,
) -> CliResult<Value> {
    let basis = derivation_basis(ring, bound, budget)?;
    let derived = from_derivations(&basis, grading).map_err(|e| if user_grading { CliError::config(e) } else { e.into() })?;
    let mut out = common(&basis, &derived, bound, budget)?;
    out["window"] = window_shape(derived.algebra.weights());
    out["witt_comparison"] = witt_comparison(&derived);
    Ok(out)
}

fn common<F: Field>(basis: &DerivationBasis<F>, derived: &DerivedAlgebra<F>, bound: u32, budget: Budget) -> CliResult<Value> {
    let ring = basis.ring();
    let freeness = rank_one_freeness(basis);
    Ok(json!({
        "ring": enc::ring(ring),
        "degree_bound": bound,
        "complete": basis.is_complete(),
        "dimension": basis.len(),
        "dimensions_by_bound": dims_by_bound(ring, bound, budget)?,
        "solver_basis": enc::basis(basis),
        "basis": enc::fields(&derived.fields),
        "labels": derived.algebra.labels(),
        "weights": derived.algebra.weights(),
        "brackets": enc::table(derived.algebra.table()),
        "undefined_brackets": derived.undefined,
        "jacobi": derived.algebra.jacobi_check().ok,
        "freeness": {
            "rank_one_free": freeness.rank_one_free,
            "generator": freeness.generator.map(|d| d.to_text()),
        },
        "smooth": smoothness_check(ring).ok(),
    }))
}

fn solve_family(
    ring: &Arc<QuotientRing<RatFunc>>,
    discriminant: &UniPoly,
    bound: u32,
    points: &[Rational],
    budget: Budget,
) -> CliResult<Value> {
    let basis = derivation_basis(ring, bound, budget)?;
    let derived = from_derivations(&basis, Grading::None)?;
    let mut out = common(&basis, &derived, bound, budget)?;
    out["discriminant"] = json!(discriminant.to_string());
    let mut fibers = Vec::new();
    for t0 in points {
        let report = base_change_with(&basis, t0, budget)?;
        let delta = discriminant.eval(t0);
        fibers.push(json!({
            "t0": t0.to_string(),
            "discriminant": delta.to_string(),
            "smooth_fiber": !delta.is_zero(),
            "base_change": report,
        }));
    }
    out["base_change"] = Value::Array(fibers);
    Ok(out)
}

/// The cusp slice pulled back to the normalization `X = s², Y = 2s³`.
pub(super) fn cusp_pullback(bound: u32, budget: Budget) -> CliResult<Value> {
    let norm = normalize_cuspidal();
    let basis = derivation_basis(norm.cusp(), bound, budget)?;
    let lifts = basis.basis().iter().map(|d| norm.lift(d)).collect::<crate::Result<Vec<_>>>()?;
    let witt = norm.witt_fields(&basis)?;
    Ok(json!({
        "map": ["s^2", "2*s^3"],
        "lifts": enc::fields(&lifts),
        "witt_basis": enc::fields(&witt.fields),
        "witt_weights": witt.algebra.weights(),
        "witt_comparison": witt_comparison(&witt),
        "gap": cusp_gap(&norm, bound, budget)?,
    }))
}
