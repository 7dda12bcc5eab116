//! Model files: a fitted interpolant plus the solve diagnostics and pole
//! removal history that produced it.
//!
//! Complex numbers are `[re, im]` pairs. Non-finite diagnostics are written
//! as `null`.

use padetype_core::barycentric::{BarycentricModel, WeightKind, NODE_TOL};
use padetype_core::chebyshev::ChebyshevModel;
use padetype_core::linsolve::SolveReport;
use padetype_core::polecontrol::{DetectionMethod, Interpolant, PoleReport};
use padetype_core::rational::RationalModel;
use padetype_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Weights {
    Fitted,
    Berrut,
    Shepard,
    Custom,
}

impl From<WeightKind> for Weights {
    fn from(k: WeightKind) -> Self {
        match k {
            WeightKind::Fitted => Self::Fitted,
            WeightKind::Berrut => Self::Berrut,
            WeightKind::Shepard => Self::Shepard,
            WeightKind::Custom => Self::Custom,
        }
    }
}

impl From<Weights> for WeightKind {
    fn from(w: Weights) -> Self {
        match w {
            Weights::Fitted => Self::Fitted,
            Weights::Berrut => Self::Berrut,
            Weights::Shepard => Self::Shepard,
            Weights::Custom => Self::Custom,
        }
    }
}

fn default_node_tol() -> f64 {
    NODE_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Form {
    Rational {
        num: Vec<Complex64>,
        den: Vec<Complex64>,
        #[serde(default)]
        prescribed_zeros: Vec<Complex64>,
        #[serde(default)]
        prescribed_poles: Vec<Complex64>,
    },
    Barycentric {
        nodes: Vec<Complex64>,
        values: Vec<Complex64>,
        core_values: Vec<Complex64>,
        weights: Vec<Complex64>,
        kind: Weights,
        #[serde(default)]
        prescribed_zeros: Vec<Complex64>,
        #[serde(default)]
        prescribed_poles: Vec<Complex64>,
        #[serde(default = "default_node_tol")]
        node_tol: f64,
    },
    Chebyshev {
        h: Vec<Complex64>,
        e: Vec<Complex64>,
        series: Vec<Complex64>,
    },
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub rank: usize,
    pub condition: Option<f64>,
    pub residual_norm: Option<f64>,
    pub singular_values: Vec<f64>,
}

impl From<&SolveReport> for Diagnostics {
    fn from(r: &SolveReport) -> Self {
        Self {
            rank: r.rank,
            condition: finite(r.condition),
            residual_norm: finite(r.residual_norm),
            singular_values: r.singular_values.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Roots,
    SignChange,
    Threshold,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleRecord {
    pub location: Complex64,
    pub method: Method,
    pub bracket: Option<(f64, f64)>,
    pub residual_value: Option<f64>,
    pub replacement_point: f64,
}

impl From<&PoleReport> for PoleRecord {
    fn from(r: &PoleReport) -> Self {
        Self {
            location: r.location,
            method: match r.method {
                DetectionMethod::Roots => Method::Roots,
                DetectionMethod::SignChange => Method::SignChange,
                DetectionMethod::Threshold => Method::Threshold,
            },
            bracket: r.bracket,
            residual_value: finite(r.residual_value),
            replacement_point: r.replacement_point(),
        }
    }
}

pub fn pole_records(reports: &[PoleReport]) -> Vec<PoleRecord> {
    reports.iter().map(PoleRecord::from).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    #[serde(flatten)]
    pub form: Form,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<Diagnostics>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub history: Vec<PoleRecord>,
}

/// A model ready to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub enum Loaded {
    Interpolant { model: Interpolant, node_tol: f64 },
    Chebyshev(ChebyshevModel),
}

impl Loaded {
    pub fn eval(&self, t: Complex64) -> Complex64 {
        match self {
            Self::Interpolant { model: Interpolant::Barycentric(m), node_tol } => m.eval_with_tol(t, *node_tol),
            Self::Interpolant { model, .. } => model.eval(t),
            Self::Chebyshev(m) => m.eval(t),
        }
    }
}

impl ModelFile {
    pub fn new(form: Form) -> Self {
        Self { form, diagnostics: None, history: Vec::new() }
    }

    pub fn from_interpolant(model: &Interpolant, node_tol: f64) -> Self {
        Self::new(match model {
            Interpolant::Rational(m) => Form::Rational {
                num: m.num.clone(),
                den: m.den.clone(),
                prescribed_zeros: m.prescribed_zeros.clone(),
                prescribed_poles: m.prescribed_poles.clone(),
            },
            Interpolant::Barycentric(m) => Form::Barycentric {
                nodes: m.nodes.clone(),
                values: m.values.clone(),
                core_values: m.core_values.clone(),
                weights: m.weights.clone(),
                kind: m.kind.into(),
                prescribed_zeros: m.prescribed_zeros.clone(),
                prescribed_poles: m.prescribed_poles.clone(),
                node_tol,
            },
        })
    }

    pub fn from_chebyshev(m: &ChebyshevModel) -> Self {
        Self::new(Form::Chebyshev { h: m.h.clone(), e: m.e.clone(), series: m.series.clone() })
    }

    pub fn with_diagnostics(mut self, report: &SolveReport) -> Self {
        self.diagnostics = Some(report.into());
        self
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::validation(format!("model: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("model serializes");
        out.push('\n');
        out
    }

    pub fn load(&self) -> CliResult<Loaded> {
        let bad = |msg: &str| CliError::validation(format!("model: {msg}"));
        Ok(match &self.form {
            Form::Rational { num, den, prescribed_zeros, prescribed_poles } => {
                let mut m = RationalModel::new(num.clone(), den.clone())?;
                m.prescribed_zeros = prescribed_zeros.clone();
                m.prescribed_poles = prescribed_poles.clone();
                Loaded::Interpolant { model: Interpolant::Rational(m), node_tol: NODE_TOL }
            }
            Form::Barycentric { nodes, values, core_values, weights, kind, prescribed_zeros, prescribed_poles, node_tol } => {
                if values.len() != nodes.len() || core_values.len() != nodes.len() || weights.len() != nodes.len() {
                    return Err(bad("nodes, values, core_values and weights differ in length"));
                }
                if !(*node_tol >= 0.0) {
                    return Err(bad("node_tol must be nonnegative"));
                }
                let m = BarycentricModel {
                    nodes: nodes.clone(),
                    values: values.clone(),
                    core_values: core_values.clone(),
                    weights: weights.clone(),
                    kind: (*kind).into(),
                    prescribed_zeros: prescribed_zeros.clone(),
                    prescribed_poles: prescribed_poles.clone(),
                };
                Loaded::Interpolant { model: Interpolant::Barycentric(m), node_tol: *node_tol }
            }
            Form::Chebyshev { h, e, series } => {
                if e.is_empty() {
                    return Err(bad("empty Chebyshev denominator"));
                }
                Loaded::Chebyshev(ChebyshevModel { h: h.clone(), e: e.clone(), series: series.clone() })
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rational_round_trip() {
        let m = RationalModel::new(vec![c(1.0), Complex64::new(0.0, 0.5)], vec![c(1.0), c(-1.0)]).unwrap();
        let file = ModelFile::from_interpolant(&Interpolant::Rational(m.clone()), NODE_TOL);
        let text = file.to_json();
        assert!(text.contains("\"form\": \"rational\""));
        let back = ModelFile::parse(&text).unwrap();
        assert_eq!(back, file);
        let t = Complex64::new(0.3, 0.2);
        assert_eq!(back.load().unwrap().eval(t), m.eval(t));
    }

    #[test]
    fn non_finite_diagnostics_become_null() {
        let report = SolveReport {
            solution: vec![],
            rank: 1,
            condition: f64::INFINITY,
            residual_norm: 0.0,
            singular_values: vec![1.0, 0.0],
        };
        let file = ModelFile::from_chebyshev(&ChebyshevModel { h: vec![c(2.0)], e: vec![c(2.0)], series: vec![c(2.0)] })
            .with_diagnostics(&report);
        let text = file.to_json();
        assert!(text.contains("\"condition\": null"));
        assert_eq!(ModelFile::parse(&text).unwrap(), file);
    }

    #[test]
    fn malformed_models_are_rejected() {
        assert!(ModelFile::parse(r#"{"form": "pade"}"#).is_err());
        let file = ModelFile::parse(
            r#"{"form": "barycentric", "nodes": [[1, 0]], "values": [[1, 0]], "core_values": [], "weights": [[1, 0]], "kind": "fitted"}"#,
        )
        .unwrap();
        assert_eq!(file.load().unwrap_err().exit_code(), 2);
    }
}
