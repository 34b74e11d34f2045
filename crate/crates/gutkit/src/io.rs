//! File formats: model graphs, run plans, targets, and matrix payloads.
//!
//! Model files use the `gutkit_model_v1` schema. Complex matrices are
//! nested arrays of `[re, im]` pairs. Run plans name their regimes ("SM",
//! "MSSM") or spell out exact rational beta coefficients; the initial
//! couplings can be given directly or through electroweak data.

use std::collections::BTreeMap;

use gutkit_core::flavor::Matrix3;
#[cfg(test)]
use gutkit_core::flavor::C64;
use gutkit_core::liealg::{parse_irrep, AlgebraId, Irrep};
use gutkit_core::model::{Brane, BraneAlgebra, InteractionPoint, MatterCurve, ModelGraph};
use gutkit_core::rg::{mssm_betas, sm_betas, BetaCoefficients, CouplingState, RunPlan};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub const MODEL_SCHEMA: &str = "gutkit_model_v1";

/// Errors while reading or interpreting an input file. `Format` means the
/// payload is malformed (usage error); `Domain` means it parsed but names
/// an impossible object.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{0}")]
    Format(String),
    #[error("{0}")]
    Domain(String),
}

fn format_err(e: impl std::fmt::Display) -> IoError {
    IoError::Format(e.to_string())
}

// ---------------------------------------------------------------------
// Model files
// ---------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    schema: String,
    #[serde(default)]
    branes: Vec<BraneEntry>,
    #[serde(default)]
    curves: Vec<CurveEntry>,
    #[serde(default)]
    points: Vec<PointEntry>,
    #[serde(default)]
    metadata: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BraneEntry {
    name: String,
    algebra: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveEntry {
    name: String,
    branes: (String, String),
    enhanced: String,
    rep: RepEntry,
    flux: i64,
}

/// A representation, as one name or a list for multi-factor curves.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RepEntry {
    One(String),
    Many(Vec<String>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointEntry {
    name: String,
    curves: [String; 3],
    enhanced: String,
    coupling: String,
}

fn parse_brane_algebra(text: &str) -> Result<BraneAlgebra, IoError> {
    if text.trim() == "U(1)" {
        return Ok(BraneAlgebra::U1);
    }
    AlgebraId::parse(text)
        .map(BraneAlgebra::Simple)
        .map_err(|e| IoError::Domain(e.to_string()))
}

/// Parse a model file from JSON text.
pub fn model_from_json(text: &str) -> Result<ModelGraph, IoError> {
    let file: ModelFile = serde_json::from_str(text).map_err(format_err)?;
    if file.schema != MODEL_SCHEMA {
        return Err(IoError::Format(format!(
            "unsupported schema {:?}; expected {MODEL_SCHEMA:?}",
            file.schema
        )));
    }
    let branes = file
        .branes
        .iter()
        .map(|b| {
            Ok(Brane { name: b.name.clone(), algebra: parse_brane_algebra(&b.algebra)? })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let mut curves = Vec::with_capacity(file.curves.len());
    for c in &file.curves {
        let enhanced = AlgebraId::parse(&c.enhanced).map_err(|e| IoError::Domain(e.to_string()))?;
        // Representations are named under the simple brane algebras, in
        // brane order.
        let simple: Vec<AlgebraId> = [&c.branes.0, &c.branes.1]
            .iter()
            .filter_map(|n| {
                branes.iter().find(|b| &&b.name == n).and_then(|b| match b.algebra {
                    BraneAlgebra::Simple(a) => Some(a),
                    BraneAlgebra::U1 => None,
                })
            })
            .collect();
        let names: Vec<&str> = match &c.rep {
            RepEntry::One(s) => vec![s.as_str()],
            RepEntry::Many(v) => v.iter().map(String::as_str).collect(),
        };
        if names.len() != simple.len() {
            return Err(IoError::Domain(format!(
                "curve {}: {} representation names for {} simple branes",
                c.name,
                names.len(),
                simple.len()
            )));
        }
        let rep: Vec<Irrep> = names
            .iter()
            .zip(&simple)
            .map(|(n, a)| parse_irrep(*a, n).map_err(|e| IoError::Domain(e.to_string())))
            .collect::<Result<_, _>>()?;
        curves.push(MatterCurve {
            name: c.name.clone(),
            branes: c.branes.clone(),
            enhanced,
            rep,
            flux: c.flux,
        });
    }
    let points = file
        .points
        .iter()
        .map(|p| {
            Ok(InteractionPoint {
                name: p.name.clone(),
                curves: p.curves.clone(),
                enhanced: AlgebraId::parse(&p.enhanced)
                    .map_err(|e| IoError::Domain(e.to_string()))?,
                coupling_label: p.coupling.clone(),
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(ModelGraph { branes, curves, points, metadata: file.metadata })
}

/// Serialize a model graph to the v1 JSON schema.
pub fn model_to_json(graph: &ModelGraph) -> serde_json::Value {
    let file = ModelFile {
        schema: MODEL_SCHEMA.to_string(),
        branes: graph
            .branes
            .iter()
            .map(|b| BraneEntry { name: b.name.clone(), algebra: b.algebra.to_string() })
            .collect(),
        curves: graph
            .curves
            .iter()
            .map(|c| {
                let names: Vec<String> =
                    c.rep.iter().map(gutkit_core::liealg::display_name).collect();
                CurveEntry {
                    name: c.name.clone(),
                    branes: c.branes.clone(),
                    enhanced: c.enhanced.to_string(),
                    rep: if names.len() == 1 {
                        RepEntry::One(names.into_iter().next().unwrap())
                    } else {
                        RepEntry::Many(names)
                    },
                    flux: c.flux,
                }
            })
            .collect(),
        points: graph
            .points
            .iter()
            .map(|p| PointEntry {
                name: p.name.clone(),
                curves: p.curves.clone(),
                enhanced: p.enhanced.to_string(),
                coupling: p.coupling_label.clone(),
            })
            .collect(),
        metadata: graph.metadata.clone(),
    };
    serde_json::to_value(file).expect("model serializes")
}

// ---------------------------------------------------------------------
// Run plans
// ---------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanFile {
    initial: InitialEntry,
    thresholds: Vec<ThresholdEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InitialEntry {
    mu: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inv_alpha: Option<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    electroweak: Option<ElectroweakEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElectroweakEntry {
    sin2_theta_w: f64,
    alpha_em_inv: f64,
    alpha_s: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThresholdEntry {
    mu: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    regime: Option<String>,
    /// Explicit beta coefficients as exact rationals ("41/10", "-7").
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<[String; 3]>,
}

fn parse_ratio(text: &str) -> Result<Ratio<i64>, IoError> {
    let t = text.trim();
    match t.split_once('/') {
        Some((num, den)) => {
            let n: i64 = num.trim().parse().map_err(format_err)?;
            let d: i64 = den.trim().parse().map_err(format_err)?;
            if d == 0 {
                return Err(IoError::Format(format!("zero denominator in {t:?}")));
            }
            Ok(Ratio::new(n, d))
        }
        None => Ok(Ratio::from_integer(t.parse().map_err(format_err)?)),
    }
}

/// Parse a run plan from JSON text.
pub fn plan_from_json(text: &str) -> Result<RunPlan, IoError> {
    let file: PlanFile = serde_json::from_str(text).map_err(format_err)?;
    let initial = match (file.initial.inv_alpha, &file.initial.electroweak) {
        (Some(inv), None) => CouplingState::new(file.initial.mu, inv),
        (None, Some(ew)) => CouplingState::from_electroweak(
            file.initial.mu,
            ew.sin2_theta_w,
            ew.alpha_em_inv,
            ew.alpha_s,
        ),
        _ => {
            return Err(IoError::Format(
                "initial state needs exactly one of inv_alpha or electroweak".to_string(),
            ))
        }
    }
    .map_err(|e| IoError::Domain(e.to_string()))?;
    let thresholds = file
        .thresholds
        .iter()
        .map(|t| {
            let beta = match (&t.regime, &t.b) {
                (Some(name), None) => match name.as_str() {
                    "SM" => sm_betas(),
                    "MSSM" => mssm_betas(),
                    other => {
                        return Err(IoError::Format(format!(
                            "unknown regime {other:?}; use SM, MSSM, or explicit b"
                        )))
                    }
                },
                (name, Some(b)) => {
                    let parsed = [parse_ratio(&b[0])?, parse_ratio(&b[1])?, parse_ratio(&b[2])?];
                    BetaCoefficients::new(
                        parsed,
                        name.clone().unwrap_or_else(|| "custom".to_string()),
                    )
                }
                (None, None) => {
                    return Err(IoError::Format(
                        "threshold needs a regime name or explicit b".to_string(),
                    ))
                }
            };
            Ok((t.mu, beta))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    RunPlan::new(initial, thresholds).map_err(|e| IoError::Domain(e.to_string()))
}

// ---------------------------------------------------------------------
// Complex matrices
// ---------------------------------------------------------------------

/// `[[ [re, im]; 3]; 3]` nested-array form of a complex matrix.
pub fn matrix_to_json(m: &Matrix3) -> serde_json::Value {
    serde_json::to_value(m).expect("matrix serializes")
}

pub fn matrix_from_json(text: &str) -> Result<Matrix3, IoError> {
    serde_json::from_str(text).map_err(format_err)
}

// ---------------------------------------------------------------------
// Coupling curves
// ---------------------------------------------------------------------

pub const CURVE_CSV_HEADER: &str = "mu_gev,inv_alpha1,inv_alpha2,inv_alpha3";

/// Tabulate the running couplings on logarithmically spaced scales.
pub fn curve_csv(plan: &RunPlan, mu_to: f64, rows: usize) -> Result<String, IoError> {
    if rows < 2 {
        return Err(IoError::Format("curve needs at least two rows".to_string()));
    }
    let mu_from = plan.initial.mu;
    let mut out = String::from(CURVE_CSV_HEADER);
    out.push('\n');
    for k in 0..rows {
        let t = k as f64 / (rows - 1) as f64;
        let mu = mu_from * (mu_to / mu_from).powf(t);
        let s = gutkit_core::rg::run(plan, mu).map_err(|e| IoError::Domain(e.to_string()))?;
        out.push_str(&format!(
            "{},{},{},{}\n",
            s.mu, s.inv_alpha[0], s.inv_alpha[1], s.inv_alpha[2]
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gutkit_core::model::{su5_three_gen, validate_model};

    #[test]
    fn model_round_trips_through_json() {
        let g = su5_three_gen();
        let json = model_to_json(&g).to_string();
        let back = model_from_json(&json).unwrap();
        assert_eq!(back, g);
        assert!(validate_model(&back).is_valid());
    }

    #[test]
    fn model_schema_is_checked() {
        let bad = r#"{"schema": "other_v9", "branes": [], "curves": [], "points": []}"#;
        assert!(matches!(model_from_json(bad), Err(IoError::Format(_))));
        assert!(matches!(model_from_json("{"), Err(IoError::Format(_))));
        assert!(matches!(model_from_json("{}"), Err(IoError::Format(_))));
    }

    #[test]
    fn unknown_algebra_is_a_domain_error() {
        let bad = r#"{"schema": "gutkit_model_v1",
            "branes": [{"name": "x", "algebra": "SO(7)"}]}"#;
        assert!(matches!(model_from_json(bad), Err(IoError::Domain(_))));
    }

    #[test]
    fn plan_accepts_named_regimes_and_electroweak_inputs() {
        let text = r#"{
            "initial": {"mu": 91.19, "electroweak":
                {"sin2_theta_w": 0.231, "alpha_em_inv": 127.9, "alpha_s": 0.118}},
            "thresholds": [
                {"mu": 91.19, "regime": "SM"},
                {"mu": 1000.0, "regime": "MSSM"}
            ]
        }"#;
        let plan = plan_from_json(text).unwrap();
        assert_eq!(plan.thresholds.len(), 2);
        assert!((plan.initial.inv_alpha[0] - 59.013).abs() < 0.001);
    }

    #[test]
    fn plan_accepts_explicit_rational_betas() {
        let text = r#"{
            "initial": {"mu": 100.0, "inv_alpha": [50.0, 30.0, 10.0]},
            "thresholds": [{"mu": 100.0, "b": ["41/10", "-19/6", "-7"]}]
        }"#;
        let plan = plan_from_json(text).unwrap();
        assert_eq!(plan.thresholds[0].1.b[0], Ratio::new(41, 10));
        assert_eq!(plan.thresholds[0].1.b[2], Ratio::from_integer(-7));
    }

    #[test]
    fn plan_rejects_unknown_regime_and_missing_beta() {
        let bad = r#"{
            "initial": {"mu": 100.0, "inv_alpha": [50.0, 30.0, 10.0]},
            "thresholds": [{"mu": 100.0, "regime": "TWO_LOOP"}]
        }"#;
        assert!(matches!(plan_from_json(bad), Err(IoError::Format(_))));
        let none = r#"{
            "initial": {"mu": 100.0, "inv_alpha": [50.0, 30.0, 10.0]},
            "thresholds": [{"mu": 100.0}]
        }"#;
        assert!(matches!(plan_from_json(none), Err(IoError::Format(_))));
    }

    #[test]
    fn matrix_round_trip() {
        let m = Matrix3::from_fn(|i, j| C64::new(i as f64, j as f64 - 1.0));
        let json = matrix_to_json(&m).to_string();
        assert_eq!(matrix_from_json(&json).unwrap(), m);
        assert!(matrix_from_json("[[1,2],[3,4]]").is_err());
    }

    #[test]
    fn flavor_wire_schemas() {
        use gutkit_core::flavor::{FNParams, MassSpectrum, YukawaMatrix};
        // Texture parameters: {"eps1", "eps2", "coeffs"} with [re, im] cells.
        let text = r#"{"eps1": 0.2, "eps2": 0.3,
            "coeffs": [[[1,0],[1,0],[1,0]],[[1,0],[1,0],[1,0]],[[1,0],[1,0],[1,0]]]}"#;
        let p: FNParams = serde_json::from_str(text).unwrap();
        assert_eq!((p.eps1, p.eps2), (0.2, 0.3));
        let round: FNParams =
            serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(round, p);
        // Out-of-range parameters are rejected at deserialization.
        assert!(serde_json::from_str::<FNParams>(
            r#"{"eps1": 1.5, "eps2": 0.3,
                "coeffs": [[[1,0],[1,0],[1,0]],[[1,0],[1,0],[1,0]],[[1,0],[1,0],[1,0]]]}"#
        )
        .is_err());
        // Yukawa matrices are bare nested [re, im] arrays.
        let y: YukawaMatrix = serde_json::from_str(
            r#"[[[1,0],[0,0],[0,0]],[[0,0],[2,0],[0,0]],[[0,0],[0,0],[3,0]]]"#,
        )
        .unwrap();
        let v = serde_json::to_value(y).unwrap();
        assert!(v.is_array());
        assert_eq!(v[2][2][0], 3.0);
        // Mass spectra are bare 3-arrays.
        let (_, d) = gutkit_core::flavor::diagonalize_mass(&y);
        let dv = serde_json::to_value(d).unwrap();
        assert_eq!(dv, serde_json::json!([3.0, 2.0, 1.0]));
        let back: MassSpectrum = serde_json::from_value(dv).unwrap();
        assert_eq!(back.sigma(), [3.0, 2.0, 1.0]);
    }

    #[test]
    fn curve_csv_has_header_and_rows() {
        let plan = plan_from_json(
            r#"{
            "initial": {"mu": 91.19, "inv_alpha": [59.0, 29.5, 8.47]},
            "thresholds": [{"mu": 91.19, "regime": "SM"}]
        }"#,
        )
        .unwrap();
        let csv = curve_csv(&plan, 1.0e16, 10).unwrap();
        let lines: Vec<&str> = csv.trim().lines().collect();
        assert_eq!(lines[0], CURVE_CSV_HEADER);
        assert_eq!(lines.len(), 11);
        assert!(lines[1].starts_with("91.19,"));
    }
}
