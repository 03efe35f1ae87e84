use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, RatFunc, Rational, UniPoly};
use crate::curves::{
    cusp_monomial_ring, cusp_ring_with, laurent_ring, line_ring, nodal_ring, punctured_p1_ring, WeierstrassFamily,
};
use crate::error::{Error, Result};
use crate::liealg::Coefficients;
use crate::poly::{Budget, MonomialOrder, QuotientRing};

/// Top-level run configuration; every section is optional and read only by
/// the subcommands that need it.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<GradingConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<CohomologyConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    /// Evaluation points, as exact rationals.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.budget == Some(0) {
            return Err(Error::Parse("budget must be positive".into()));
        }
        self.parsed_points()?;
        Ok(())
    }

    pub fn parsed_points(&self) -> Result<Vec<Rational>> {
        self.points.iter().map(|p| parse_rational(p)).collect()
    }

    pub fn budget(&self) -> Budget {
        self.budget.map(Budget::new).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Weierstrass,
    Nodal,
    Cusp,
    CuspMonomial,
    Laurent,
    PuncturedP1,
    Line,
    Custom,
}

/// `{ "type": ..., "params": {...}, "degree_bound": n }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    #[serde(rename = "type")]
    pub kind: CurveKind,
    #[serde(default)]
    pub params: serde_json::Value,
    pub degree_bound: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeierstrassParams {
    e1: String,
    e2: String,
    e3: String,
    #[serde(default)]
    t0: Option<String>,
    #[serde(default)]
    order: MonomialOrder,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodalParams {
    e: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderParams {
    #[serde(default)]
    order: MonomialOrder,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsParams {
    points: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct LineParams {
    #[serde(default = "default_line_name")]
    name: String,
}

fn default_line_name() -> String {
    "x".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomParams {
    variables: Vec<String>,
    relations: Vec<String>,
    #[serde(default)]
    order: MonomialOrder,
}

/// A ring built from a curve config: over `ℚ`, or over `ℚ(t)` for a family.
#[derive(Debug, Clone)]
pub enum BuiltCurve {
    Rational {
        ring: Arc<QuotientRing<Rational>>,
        /// Coefficients of a natural grading field, when the curve has one.
        euler: Option<Vec<String>>,
        kind: CurveKind,
    },
    Parametric {
        ring: Arc<QuotientRing<RatFunc>>,
        discriminant: UniPoly,
    },
}

fn params<T: for<'de> Deserialize<'de>>(v: &serde_json::Value) -> Result<T> {
    let v = if v.is_null() { serde_json::json!({}) } else { v.clone() };
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("curve params: {e}")))
}

fn strings(v: &[&str]) -> Option<Vec<String>> {
    Some(v.iter().map(|s| s.to_string()).collect())
}

impl CurveConfig {
    pub fn build(&self, budget: Budget) -> Result<BuiltCurve> {
        let rational = |ring: QuotientRing<Rational>, euler: Option<Vec<String>>| BuiltCurve::Rational {
            ring: Arc::new(ring),
            euler,
            kind: self.kind,
        };
        Ok(match self.kind {
            CurveKind::Weierstrass => {
                let p: WeierstrassParams = params(&self.params)?;
                let fam = WeierstrassFamily::parse([&p.e1, &p.e2, &p.e3])?;
                match p.t0 {
                    Some(t0) => rational(fam.fiber(&parse_rational(&t0)?, p.order, budget)?, None),
                    None => BuiltCurve::Parametric {
                        ring: Arc::new(fam.ring(p.order, budget)?),
                        discriminant: fam.discriminant(),
                    },
                }
            }
            CurveKind::Nodal => {
                let p: NodalParams = params(&self.params)?;
                rational(nodal_ring(&parse_rational(&p.e)?), None)
            }
            CurveKind::Cusp => {
                let p: OrderParams = params(&self.params)?;
                rational(cusp_ring_with(p.order), strings(&["2*X", "3*Y"]))
            }
            CurveKind::CuspMonomial => {
                let _: OrderParams = params(&self.params)?;
                rational(cusp_monomial_ring(), strings(&["2*u", "3*v"]))
            }
            CurveKind::Laurent => {
                let _: OrderParams = params(&self.params)?;
                rational(laurent_ring(), strings(&["x", "-y"]))
            }
            CurveKind::Line => {
                let p: LineParams = params(&self.params)?;
                let euler = vec![p.name.clone()];
                rational(line_ring(&p.name), Some(euler))
            }
            CurveKind::PuncturedP1 => {
                let p: PointsParams = params(&self.params)?;
                let pts = p.points.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                let euler = (pts.len() == 1 && pts[0] == Rational::from_integer(0.into())).then(|| vec!["x".into(), "-u1".into()]);
                let marked = punctured_p1_ring(&pts)?;
                BuiltCurve::Rational { ring: marked.ring, euler, kind: self.kind }
            }
            CurveKind::Custom => {
                let p: CustomParams = params(&self.params)?;
                let names: Vec<&str> = p.variables.iter().map(String::as_str).collect();
                let rels: Vec<&str> = p.relations.iter().map(String::as_str).collect();
                rational(QuotientRing::parse(&names, &rels, p.order, budget)?, None)
            }
        })
    }
}

/// Basis choice for the structure constants of a solved slice.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradingConfig {
    /// Coefficients of a grading field, one per variable.
    Euler(Vec<String>),
    Weights(Vec<i64>),
    None,
}

fn default_weights() -> Vec<i64> {
    vec![0]
}

fn default_coefficients() -> Vec<Coefficients> {
    vec![Coefficients::Trivial]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowShape {
    /// Shift the window so the weight-`w` complex is closed.
    #[default]
    Closed,
    /// Always `ℓ_{-N}..ℓ_N`; weights that need a shifted window are reported
    /// as closure violations.
    Symmetric,
}

/// A sparse bracket entry `[i, j, [[k, "c"], ...]]`.
pub type BracketEntry = (usize, usize, Vec<(usize, String)>);

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "algebra", rename_all = "snake_case", deny_unknown_fields)]
pub enum CohomologyConfig {
    Witt {
        windows: Vec<i64>,
        #[serde(default = "default_weights")]
        weights: Vec<i64>,
        #[serde(default = "default_coefficients")]
        coefficients: Vec<Coefficients>,
        #[serde(default)]
        window_shape: WindowShape,
        #[serde(default)]
        h1: bool,
    },
    PuncturedP1 {
        points: Vec<String>,
        #[serde(default)]
        truncations: Option<Vec<u32>>,
    },
    Table {
        labels: Vec<String>,
        #[serde(default)]
        weights: Option<Vec<i64>>,
        brackets: Vec<BracketEntry>,
        #[serde(default)]
        weight: Option<i64>,
        #[serde(default = "default_coefficients")]
        coefficients: Vec<Coefficients>,
    },
}
