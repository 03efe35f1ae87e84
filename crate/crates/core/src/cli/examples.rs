//! End-to-end example pipelines: a scaled bracket family, the Weierstrass
//! family degenerating to the cusp, and the two fibers side by side.

use std::sync::Arc;

use serde_json::{json, Value};

use super::config::RunConfig;
use super::der_solve::{cusp_pullback, window_shape, witt_comparison};
use super::{json as enc, CliError, CliResult, Outcome};
use crate::arith::{rat, ratio, Field, Rational, UniPoly, Zero};
use crate::curves::{cusp_gap, cusp_ring, normalize_cuspidal, smoothness_check, WeierstrassFamily};
use crate::derivations::{
    base_change_with, derivation_basis, product_type_check, rank_one_freeness, vanishing_subalgebra, DeformationFamily,
    Derivation,
};
use crate::liealg::{
    ce_h1_trivial, cohomology_base_change_check, from_derivations, is_lie_isomorphism, witt_range, witt_window, Grading,
    StructureConstants,
};
use crate::linalg::ExactMatrix;
use crate::poly::{Budget, MonomialOrder, QuotientRing};

pub const EXAMPLES: [&str; 3] = ["scaled-bracket", "fs-elliptic", "cusp-degeneration"];

const DEFAULT_BOUND: u32 = 4;

pub fn run(cfg: &RunConfig) -> CliResult<Outcome> {
    let name = cfg.example.as_deref().ok_or_else(|| CliError::Config("example needs a name".into()))?;
    let points = cfg.parsed_points().map_err(CliError::config)?;
    let bound = cfg.degree_bound.unwrap_or(DEFAULT_BOUND);
    let budget = cfg.budget();
    let results = match name {
        "scaled-bracket" => scaled_bracket(&points)?,
        "fs-elliptic" => fs_elliptic(&points, bound, budget)?,
        "cusp-degeneration" => cusp_degeneration(bound, budget)?,
        other => {
            return Err(CliError::Config(format!("unknown example `{other}`; expected one of {}", EXAMPLES.join(", "))))
        }
    };
    Ok(Outcome { results, alerts: Vec::new() })
}

/// `sl₂` with basis `e, f, h`.
pub fn sl2() -> StructureConstants<Rational> {
    StructureConstants::from_entries(
        3,
        vec![((0, 1), vec![(2, rat(1))]), ((0, 2), vec![(0, rat(-2))]), ((1, 2), vec![(1, rat(2))])],
    )
    .expect("sl2 is a Lie algebra")
}

fn negative_identity(n: usize) -> ExactMatrix<Rational> {
    let rows = (0..n).map(|i| (0..n).map(|j| if i == j { rat(-1) } else { rat(0) }).collect()).collect();
    ExactMatrix::from_rows(n, rows).expect("square")
}

/// `sl₂ ⊗ ℚ[t]` with bracket `(t − 1)[,]`.
fn scaled_bracket(points: &[Rational]) -> CliResult<Value> {
    let labels: Vec<String> = ["e", "f", "h"].map(String::from).to_vec();
    let base = sl2();
    let scale = UniPoly::from_ints(&[-1, 1]);
    let family = DeformationFamily::scaled(labels.clone(), &base, &scale, rat(0))?;
    let at_one = family.specialize(&rat(1))?;
    let at_zero = family.specialize(&rat(0))?;
    let negated = base.scale(&rat(-1));
    let default_points = [rat(0), rat(1), rat(2), rat(3), ratio(1, 2)];
    let points = if points.is_empty() { &default_points[..] } else { points };
    let cohomology = cohomology_base_change_check(&base.constant_family().scale(&scale), points)?;
    Ok(json!({
        "labels": labels,
        "scale": scale.to_string(),
        "reference": enc::table(&base),
        "fiber_at_1": { "brackets": enc::table(&at_one), "abelian": at_one.is_abelian() },
        "fiber_at_0": {
            "brackets": enc::table(&at_zero),
            "equals_negated_reference": at_zero == negated,
            "negation_is_isomorphism": is_lie_isomorphism(&at_zero, &base, &negative_identity(3)),
        },
        "fiber_ideal_quotient": enc::table(&family.fiber_ideal_quotient()?),
        "product_type": {
            "augmentation_0": product_type_check(&family, &base),
            "augmentation_2": product_type_check(&family.with_augmentation(rat(2)), &base),
        },
        "cohomology_base_change": cohomology,
    }))
}

/// The family `Y² = 4(X − t)(X + t)X`, singular exactly at `t = 0`.
fn weierstrass() -> WeierstrassFamily {
    WeierstrassFamily::parse(["t", "-t", "0"]).expect("branch points sum to zero")
}

/// Smooth evaluation points used when the config names none.
pub fn default_smooth_points() -> Vec<Rational> {
    vec![rat(1), rat(2), rat(-1), ratio(1, 2), rat(3)]
}

/// True when the table equals some contiguous Witt range of its dimension.
fn equals_some_witt_range<F: Field>(table: &StructureConstants<F>) -> bool {
    let n = table.dim() as i64;
    (0..n.max(1)).any(|k| {
        let witt = witt_range(-k, n - 1 - k);
        *table == witt.table().map(|c| F::from_rational(c.clone()))
    })
}

fn fs_elliptic(points: &[Rational], bound: u32, budget: Budget) -> CliResult<Value> {
    let fam = weierstrass();
    let delta = fam.discriminant();
    let ring = Arc::new(fam.ring(MonomialOrder::Grevlex, budget)?);
    let generic = derivation_basis(&ring, bound, budget)?;
    let mut points = if points.is_empty() { default_smooth_points() } else { points.to_vec() };
    if !points.iter().any(Zero::is_zero) {
        points.push(rat(0));
    }
    let mut fibers = Vec::new();
    for t0 in &points {
        let report = base_change_with(&generic, t0, budget)?;
        let smooth = !delta.eval(t0).is_zero();
        fibers.push(json!({
            "t0": t0.to_string(),
            "discriminant": delta.eval(t0).to_string(),
            "smooth_fiber": smooth,
            "flagged": !report.matches,
            "base_change": report,
        }));
    }

    let generic_alg = from_derivations(&generic, Grading::None)?;
    let smooth_fiber = Arc::new(fam.fiber(&rat(1), MonomialOrder::Grevlex, budget)?);
    let smooth_basis = derivation_basis(&smooth_fiber, bound, budget)?;
    let smooth_alg = from_derivations(&smooth_basis, Grading::None)?;

    let cusp_fiber = fam.fiber(&rat(0), MonomialOrder::Grevlex, budget)?;
    let fiber_is_cusp = cusp_fiber.ideal_text() == cusp_ring().ideal_text();
    let cusp_basis = derivation_basis(&Arc::new(cusp_fiber), bound, budget)?;
    let cusp_alg = from_derivations(&cusp_basis, Grading::None)?;
    let pullback = cusp_pullback(bound, budget)?;

    let top = bound as i64;
    Ok(json!({
        "family": { "branch_points": ["t", "-t", "0"], "discriminant": delta.to_string(), "ring": enc::ring(&ring) },
        "degree_bound": bound,
        "generic_dimension": generic.len(),
        "base_change": fibers,
        "generic_fiber": {
            "basis": enc::basis(&generic),
            "brackets": enc::table(generic_alg.algebra.table()),
            "equals_witt_table": equals_some_witt_range(generic_alg.algebra.table()),
        },
        "smooth_fiber": {
            "t0": "1",
            "dimension": smooth_basis.len(),
            "basis": enc::basis(&smooth_basis),
            "brackets": enc::table(smooth_alg.algebra.table()),
            "equals_witt_table": equals_some_witt_range(smooth_alg.algebra.table()),
        },
        "degenerate_fiber": {
            "t0": "0",
            "is_cusp": fiber_is_cusp,
            "dimension": cusp_basis.len(),
            "equals_witt_table_in_solved_basis": equals_some_witt_range(cusp_alg.algebra.table()),
            "normalization": pullback,
        },
        "h1": {
            "smooth_fiber": ce_h1_trivial(&smooth_alg.algebra).dim_h,
            "degenerate_fiber": ce_h1_trivial(&cusp_alg.algebra).dim_h,
            "witt_window": { "window": top, "dim": ce_h1_trivial(&witt_window(top)).dim_h },
        },
    }))
}

/// True when every field's coefficients vanish at `point`.
fn all_vanish_at(fields: &[Derivation<Rational>], point: &[Rational]) -> bool {
    fields.iter().all(|d| d.coeffs().iter().all(|c| c.eval(point).is_zero()))
}

/// True when `d` has no zero on the curve: its coefficients and the
/// relations generate the unit ideal.
fn nowhere_vanishing(d: &Derivation<Rational>, budget: Budget) -> CliResult<bool> {
    let ring = d.ring();
    let mut gens = ring.groebner_basis().to_vec();
    gens.extend(d.coeffs().iter().cloned());
    Ok(QuotientRing::new(ring.names().to_vec(), gens, ring.order(), budget)?.is_zero_ring())
}

fn cusp_degeneration(bound: u32, budget: Budget) -> CliResult<Value> {
    let fam = weierstrass();
    let origin = [rat(0), rat(0)];

    let smooth = Arc::new(fam.fiber(&rat(1), MonomialOrder::Grevlex, budget)?);
    let smooth_basis = derivation_basis(&smooth, bound, budget)?;
    let freeness = rank_one_freeness(&smooth_basis);
    let generator_nowhere_zero = match &freeness.generator {
        Some(g) => nowhere_vanishing(g, budget)?,
        None => false,
    };
    let smooth_vanishing = vanishing_subalgebra(&smooth_basis, &origin)?;
    let smooth_shape = if generator_nowhere_zero && smooth_vanishing.codimension > 0 { "two-sided" } else { "one-sided" };

    let norm = normalize_cuspidal();
    let cusp_basis = derivation_basis(norm.cusp(), bound, budget)?;
    let euler = Derivation::parse(norm.cusp().clone(), &["2*X", "3*Y"])?;
    let graded = from_derivations(&cusp_basis, Grading::Euler(euler))?;
    let cusp_vanish = all_vanish_at(cusp_basis.basis(), &origin);
    let weights_nonnegative = graded.algebra.weights().is_some_and(|w| w.iter().all(|&x| x >= 0));
    let cusp_shape = if cusp_vanish && weights_nonnegative { "one-sided" } else { "two-sided" };

    let ring = Arc::new(fam.ring(MonomialOrder::Grevlex, budget)?);
    let generic = derivation_basis(&ring, bound, budget)?;
    let at_cusp = base_change_with(&generic, &rat(0), budget)?;
    let family_smooth = smoothness_check(&ring).ok();
    Ok(json!({
        "degree_bound": bound,
        "smooth_fiber": {
            "t0": "1",
            "smooth": smoothness_check(smooth.as_ref()).ok(),
            "dimension": smooth_basis.len(),
            "rank_one_free": freeness.rank_one_free,
            "generator": freeness.generator.as_ref().map(Derivation::to_text),
            "generator_nowhere_vanishing": generator_nowhere_zero,
            "vanishing_codimension_at_origin": smooth_vanishing.codimension,
            "window": smooth_shape,
        },
        "cusp_fiber": {
            "t0": "0",
            "smooth": smoothness_check(norm.cusp().as_ref()).ok(),
            "dimension": cusp_basis.len(),
            "all_vanish_at_singular_point": cusp_vanish,
            "euler_weights": graded.algebra.weights(),
            "grading": window_shape(graded.algebra.weights()),
            "witt_comparison_after_pullback": witt_comparison(&norm.witt_fields(&cusp_basis)?),
            "window": cusp_shape,
            "gap": cusp_gap(&norm, bound, budget)?,
        },
        "family": {
            "generic_smooth": family_smooth,
            "base_change_at_cusp": at_cusp,
            "lhs_exceeds_rhs": at_cusp.dim_lhs > at_cusp.dim_rhs,
        },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_example(name: &str, bound: u32) -> Value {
        let cfg = RunConfig { example: Some(name.into()), degree_bound: Some(bound), ..RunConfig::default() };
        run(&cfg).unwrap().results
    }

    #[test]
    fn scaled_bracket_fibers() {
        let r = run_example("scaled-bracket", 1);
        assert_eq!(r["fiber_at_1"]["abelian"], true);
        assert_eq!(r["fiber_at_0"]["equals_negated_reference"], true);
        assert_eq!(r["fiber_at_0"]["negation_is_isomorphism"], true);
        assert_eq!(r["product_type"]["augmentation_0"]["is_product_type"], false);
        assert_eq!(r["product_type"]["augmentation_2"]["is_product_type"], true);
    }

    #[test]
    fn unknown_example_is_a_config_error() {
        let cfg = RunConfig { example: Some("nope".into()), ..RunConfig::default() };
        assert_eq!(run(&cfg).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn cusp_degeneration_shapes() {
        let r = run_example("cusp-degeneration", 3);
        assert_eq!(r["smooth_fiber"]["window"], "two-sided");
        assert_eq!(r["cusp_fiber"]["window"], "one-sided");
        assert_eq!(r["family"]["lhs_exceeds_rhs"], true);
        assert_eq!(r["cusp_fiber"]["witt_comparison_after_pullback"]["matches"], true);
    }
}
