//! JSON encodings shared by the subcommands. Every number that is not a
//! count or an index is an exact fraction string.

use serde_json::{json, Value};

use crate::arith::Field;
use crate::derivations::{Derivation, DerivationBasis};
use crate::liealg::{CohomologyReport, GradedLieAlgebra, StructureConstants};
use crate::poly::QuotientRing;

pub fn ring(r: &QuotientRing<impl Field>) -> Value {
    let vars = r.names().join(", ");
    let ideal = r.ideal_text();
    let text = if ideal.is_empty() {
        format!("{}[{vars}]", r.field())
    } else {
        format!("{}[{vars}]/({})", r.field(), ideal.join(", "))
    };
    json!({ "text": text, "field": r.field(), "variables": r.names(), "ideal": ideal })
}

/// Sparse triples `[i, j, [[k, "c"], ...]]`, one per defined bracket.
pub fn table<F: Field>(t: &StructureConstants<F>) -> Value {
    let entries: Vec<Value> = t
        .entries()
        .map(|((i, j), v)| {
            let coords: Vec<Value> = v.iter().map(|(k, c)| json!([k, c.to_string()])).collect();
            json!([i, j, coords])
        })
        .collect();
    Value::Array(entries)
}

pub fn fields<F: Field>(ds: &[Derivation<F>]) -> Value {
    json!(ds.iter().map(Derivation::to_text).collect::<Vec<_>>())
}

pub fn basis<F: Field>(b: &DerivationBasis<F>) -> Value {
    fields(b.basis())
}

pub fn algebra<F: Field>(l: &GradedLieAlgebra<F>) -> Value {
    let jac = l.jacobi_check();
    json!({
        "labels": l.labels(),
        "weights": l.weights(),
        "brackets": table(l.table()),
        "complete": l.table().is_complete(),
        "jacobi": { "ok": jac.ok, "first_violation": jac.first_violation },
    })
}

/// `{weight, coefficients, dims, generator, ...}` for one complex.
pub fn cohomology<F: Field>(r: &CohomologyReport<F>) -> Value {
    let generator = r.generator.as_ref().map(|g| json!(g.triples()));
    let dims = match r.degree {
        1 => json!({ "C1": r.dim_cochains, "Z1": r.dim_cocycles, "B1": r.dim_coboundaries, "H1": r.dim_h }),
        _ => json!({ "C2": r.dim_cochains, "Z2": r.dim_cocycles, "B2": r.dim_coboundaries, "H2": r.dim_h }),
    };
    json!({
        "degree": r.degree,
        "weight": r.weight,
        "coefficients": r.coefficients,
        "dims": dims,
        "generator": generator,
        "skipped_triples": r.skipped_triples,
    })
}
