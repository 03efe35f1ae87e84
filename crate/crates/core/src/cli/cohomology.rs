use serde_json::{json, Value};

use super::config::{BracketEntry, CohomologyConfig, RunConfig, WindowShape};
use super::{json as enc, CliError, CliResult, Outcome};
use crate::arith::{parse_rational, Rational};
use crate::curves::{meromorphic_h2, DEFAULT_TRUNCATIONS};
use crate::error::Error;
use crate::liealg::{
    ce_h1_trivial, ce_h2, witt_closed_window, witt_range, Coefficients, CohomologyReport, GradedLieAlgebra,
    StructureConstants,
};

pub fn run(cfg: &RunConfig) -> CliResult<Outcome> {
    let section = cfg.cohomology.as_ref().ok_or_else(|| CliError::Config("cohomology needs a `cohomology` section".into()))?;
    let mut alerts = Vec::new();
    let entries = match section {
        CohomologyConfig::Witt { windows, weights, coefficients, window_shape, h1 } => {
            if windows.iter().any(|&n| n < 1) {
                return Err(CliError::Config("Witt windows must be at least 1".into()));
            }
            let mut out = Vec::new();
            if *h1 {
                out.extend(windows.iter().map(|&n| witt_h1(n)));
            }
            for &c in coefficients {
                for &w in weights {
                    out.push(witt_h2(windows, w, c, *window_shape, &mut alerts)?);
                }
            }
            out
        }
        CohomologyConfig::PuncturedP1 { points, truncations } => {
            let pts = points.iter().map(|p| parse_rational(p)).collect::<crate::Result<Vec<_>>>().map_err(CliError::config)?;
            let truncs = truncations.clone().unwrap_or_else(|| DEFAULT_TRUNCATIONS.to_vec());
            vec![punctured(&pts, &truncs)?]
        }
        CohomologyConfig::Table { labels, weights, brackets, weight, coefficients } => {
            let l = table_algebra(labels, weights.clone(), brackets).map_err(CliError::config)?;
            let mut out = vec![json!({
                "kind": "table",
                "algebra": enc::algebra(&l),
                "h1": enc::cohomology(&ce_h1_trivial(&l)),
            })];
            for &c in coefficients {
                let mut entry = closure_guard(ce_h2(&l, *weight, c).map(|r| h2_entry(&r)))?;
                entry["kind"] = json!("table");
                flag_adjoint(&mut entry, c, &mut alerts);
                out.push(entry);
            }
            out
        }
    };
    Ok(Outcome { results: json!({ "entries": entries }), alerts })
}

fn witt_h1(n: i64) -> Value {
    let r = ce_h1_trivial(&witt_range(-n, n));
    let mut e = enc::cohomology(&r);
    e["kind"] = json!("witt");
    e["window"] = json!(n);
    e["perfect"] = json!(r.dim_h == 0);
    e
}

fn h2_entry(r: &CohomologyReport<Rational>) -> Value {
    let mut e = enc::cohomology(r);
    e["status"] = json!("ok");
    e
}

/// Turns a window-closure error into a report entry; other errors propagate.
fn closure_guard(r: crate::Result<Value>) -> CliResult<Value> {
    match r {
        Ok(v) => Ok(v),
        Err(e @ Error::WindowClosure { .. }) => Ok(json!({ "status": "window_closure", "detail": e.to_string() })),
        Err(e) => Err(e.into()),
    }
}

/// Adjoint results are checked against the expectation that they vanish.
/// Any nonzero dimension, stabilized or not, is kept in the entry and raised
/// as an alert.
fn flag_adjoint(entry: &mut Value, c: Coefficients, alerts: &mut Vec<String>) {
    if c != Coefficients::Adjoint {
        return;
    }
    let observed: Vec<u64> = match entry["windows"].as_array() {
        Some(ws) => ws.iter().filter_map(|w| w["dims"]["H2"].as_u64()).collect(),
        None => entry["dims"]["H2"].as_u64().into_iter().collect(),
    };
    let stable = entry["dim_h2"].as_u64().or_else(|| entry["windows"].is_null().then(|| entry["dims"]["H2"].as_u64()).flatten());
    entry["check"] = json!("consistency");
    entry["consistent"] = match stable {
        Some(d) => json!(d == 0),
        None => Value::Null,
    };
    if observed.iter().any(|&d| d != 0) {
        let msg = format!("adjoint H2 is nonzero on some window (dimensions {observed:?}), expected 0");
        entry["alert"] = json!(msg);
        alerts.push(msg);
    }
}

fn witt_h2(windows: &[i64], w: i64, c: Coefficients, shape: WindowShape, alerts: &mut Vec<String>) -> CliResult<Value> {
    let mut per_window = Vec::new();
    let mut dims = Vec::new();
    for &n in windows {
        let l = match (c, shape) {
            (Coefficients::Trivial, WindowShape::Closed) => witt_closed_window(n, w),
            _ => witt_range(-n, n),
        };
        let (lo, hi) = l.weight_range().expect("graded");
        let mut e = closure_guard(ce_h2(&l, Some(w), c).map(|r| {
            dims.push(r.dim_h);
            h2_entry(&r)
        }))?;
        e["window"] = json!(n);
        e["weights"] = json!([lo, hi]);
        per_window.push(e);
    }
    let closed = dims.len() == windows.len();
    let stabilized = closed && dims.len() >= 2 && dims.windows(2).all(|p| p[0] == p[1]);
    let last = per_window.last().cloned().unwrap_or(Value::Null);
    let mut entry = json!({
        "kind": "witt",
        "degree": 2,
        "weight": w,
        "coefficients": c,
        "status": if closed { "ok" } else { "window_closure" },
        "stabilized": stabilized,
        "dim_h2": if stabilized { json!(dims[0]) } else { Value::Null },
        "dims": if stabilized { last["dims"].clone() } else { Value::Null },
        "generator": if stabilized { last["generator"].clone() } else { Value::Null },
        "windows": per_window,
    });
    if closed && !stabilized {
        entry["note"] = json!("windows disagree; no stabilized dimension is reported");
    }
    flag_adjoint(&mut entry, c, alerts);
    Ok(entry)
}

fn punctured(points: &[Rational], truncations: &[u32]) -> CliResult<Value> {
    let r = meromorphic_h2(points, truncations).map_err(|e| match e {
        Error::CoincidentPoints { .. } | Error::Invalid(_) => CliError::config(e),
        e => e.into(),
    })?;
    let mut entry = json!({
        "kind": "punctured_p1",
        "degree": 2,
        "weight": 0,
        "coefficients": Coefficients::Trivial,
        "status": "ok",
        "points": r.points,
        "truncations": r.truncations,
        "estimates": r.homology.estimates,
        "stabilized": r.homology.stabilized,
        "dim_h2": r.dim_h2,
        "dims": r.dim_h2.map(|d| json!({ "H2": d })),
        "generator": Value::Null,
    });
    if !r.homology.stabilized {
        entry["note"] = json!("truncations disagree; no stabilized dimension is reported");
    }
    Ok(entry)
}

fn table_algebra(labels: &[String], weights: Option<Vec<i64>>, brackets: &[BracketEntry]) -> crate::Result<GradedLieAlgebra<Rational>> {
    let mut entries = Vec::with_capacity(brackets.len());
    for (i, j, comb) in brackets {
        let comb = comb
            .iter()
            .map(|(k, c)| Ok((*k, parse_rational(c)?)))
            .collect::<crate::Result<Vec<_>>>()?;
        entries.push(((*i, *j), comb));
    }
    let table = StructureConstants::from_entries(labels.len(), entries)?;
    GradedLieAlgebra::new(labels.to_vec(), weights, table)
}
