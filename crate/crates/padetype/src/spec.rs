//! Problem specs.
//!
//! ```json
//! {
//!   "mode": "rational",
//!   "series": [1, 0, -0.5],
//!   "nodes": {"equidistant": {"a": -1.5707963267948966, "b": 0.39269908169872414, "n": 5}},
//!   "reference": {"function": "cos"},
//!   "degrees": {"k": 5}
//! }
//! ```
//!
//! Numbers may be real or `[re, im]`. `values` can be left out when a
//! `reference` function is given.

use padetype_core::apps::laplace::{VariableMap, DEFAULT_TERMS};
use padetype_core::barycentric::NODE_TOL;
use padetype_core::polecontrol::{ReplacePolicy, ValueSource};
use padetype_core::rational::FitOptions;
use padetype_core::series::PowerSeries;
use padetype_core::{nodes, Complex64};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::reference::FunctionRef;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Real(f64),
    Complex([f64; 2]),
}

impl Scalar {
    pub fn value(self) -> Complex64 {
        match self {
            Self::Real(x) => Complex64::new(x, 0.0),
            Self::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

pub fn complex_list(v: &[Scalar]) -> Vec<Complex64> {
    v.iter().map(|s| s.value()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Rational,
    Barycentric,
    Chebyshev,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    Power,
    Chebyshev,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Generator {
    Equidistant { a: f64, b: f64, n: usize },
    RootsOfUnity { n: usize },
    ChebyshevZeros { n: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeSpec {
    List(Vec<Scalar>),
    Generated(Generator),
}

impl NodeSpec {
    pub fn resolve(&self) -> CliResult<Vec<Complex64>> {
        let out = match self {
            Self::List(v) => complex_list(v),
            Self::Generated(Generator::Equidistant { a, b, n }) => nodes::equidistant(*a, *b, *n)?,
            Self::Generated(Generator::RootsOfUnity { n }) => nodes::roots_of_unity(*n)?,
            Self::Generated(Generator::ChebyshevZeros { n }) => nodes::chebyshev_zeros(*n)?,
        };
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Degrees {
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub k: Option<usize>,
}

impl Degrees {
    /// `(p, q)`; `k` stands for `p = q = k`.
    pub fn pq(&self) -> CliResult<(usize, usize)> {
        match (self.k, self.p, self.q) {
            (Some(k), None, None) => Ok((k, k)),
            (None, Some(p), Some(q)) => Ok((p, q)),
            _ => Err(CliError::validation("degrees: give either k or both p and q")),
        }
    }

    /// A single degree, for forms that only have one.
    pub fn single(&self) -> CliResult<Option<usize>> {
        match (self.k, self.p, self.q) {
            (None, None, None) => Ok(None),
            (Some(k), None, None) => Ok(Some(k)),
            (None, Some(p), Some(q)) if p == q => Ok(Some(p)),
            _ => Err(CliError::validation("degrees: this form takes a single degree k")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightChoice {
    #[default]
    Fitted,
    Berrut,
    Shepard,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Reference {
    Function(FunctionRef),
    Table {
        table: Vec<(f64, Scalar)>,
        #[serde(default = "default_table_tol")]
        tol: f64,
    },
}

fn default_table_tol() -> f64 {
    1e-12
}

impl Reference {
    pub fn value_at(&self, t: Complex64) -> Option<Complex64> {
        match self {
            Self::Function(f) => Some(f.eval(t)),
            Self::Table { table, tol } if t.im == 0.0 => table
                .iter()
                .filter(|(x, _)| (x - t.re).abs() <= tol * t.re.abs().max(1.0))
                .min_by(|(x, _), (y, _)| (x - t.re).abs().total_cmp(&(y - t.re).abs()))
                .map(|(_, v)| v.value()),
            Self::Table { .. } => None,
        }
    }

    pub fn value_source(&self) -> ValueSource {
        match self {
            Self::Function(f) => {
                let f = f.clone();
                ValueSource::callback(move |t| Some(f.eval(Complex64::new(t, 0.0))))
            }
            Self::Table { table, tol } => {
                ValueSource::Table { points: table.iter().map(|&(t, v)| (t, v.value())).collect(), tol: *tol }
            }
        }
    }
}

fn yes() -> bool {
    true
}

fn default_node_tol() -> f64 {
    NODE_TOL
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "yes")]
    pub scaled_rows: bool,
    #[serde(default)]
    pub rcond: Option<f64>,
    #[serde(default = "default_node_tol")]
    pub node_tol: f64,
}

impl Default for Options {
    fn default() -> Self {
        Self { scaled_rows: true, rcond: None, node_tol: NODE_TOL }
    }
}

impl Options {
    pub fn fit_options(&self) -> FitOptions {
        FitOptions { scaled_rows: self.scaled_rows, rcond: self.rcond }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    InverseSquare,
    Inverse,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaplaceSpec {
    pub map: MapKind,
    pub a: f64,
    #[serde(default = "default_terms")]
    pub terms: usize,
    /// `[a, b, n]` for the `s` grid.
    #[serde(default)]
    pub grid: Option<(f64, f64, usize)>,
    /// Known inverse transform, for the error columns.
    #[serde(default)]
    pub inverse_reference: Option<FunctionRef>,
}

fn default_terms() -> usize {
    DEFAULT_TERMS
}

impl LaplaceSpec {
    pub fn variable_map(&self) -> VariableMap {
        match self.map {
            MapKind::InverseSquare => VariableMap::InverseSquare { a: self.a },
            MapKind::Inverse => VariableMap::Inverse { a: self.a },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AccelerateSpec {
    pub tau_inf: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub interval: (f64, f64),
    pub nodes: Vec<f64>,
    #[serde(default)]
    pub values: Option<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PiecewiseSpec {
    #[serde(default)]
    pub center: f64,
    pub pieces: Vec<PieceSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    #[default]
    First,
    Nearest,
}

impl From<Policy> for ReplacePolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::First => ReplacePolicy::First,
            Policy::Nearest => ReplacePolicy::Nearest,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectSpec {
    #[serde(default)]
    pub grid: Option<(f64, f64, usize)>,
    #[serde(default)]
    pub threshold: Option<f64>,
    #[serde(default)]
    pub max_iter: Option<usize>,
    #[serde(default)]
    pub policy: Policy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub mode: Mode,
    pub series: Vec<Scalar>,
    #[serde(default)]
    pub basis: Option<Basis>,
    #[serde(default)]
    pub nodes: Option<NodeSpec>,
    #[serde(default)]
    pub values: Option<Vec<Scalar>>,
    #[serde(default)]
    pub reference: Option<Reference>,
    #[serde(default)]
    pub degrees: Degrees,
    #[serde(default)]
    pub weights: WeightChoice,
    #[serde(default)]
    pub zeros: Vec<Scalar>,
    #[serde(default)]
    pub poles: Vec<Scalar>,
    #[serde(default)]
    pub options: Options,
    #[serde(default)]
    pub detect: DetectSpec,
    #[serde(default)]
    pub laplace: Option<LaplaceSpec>,
    #[serde(default)]
    pub accelerate: Option<AccelerateSpec>,
    #[serde(default)]
    pub piecewise: Option<PiecewiseSpec>,
}

/// Nodes and values after generators and references are applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Data {
    pub nodes: Vec<Complex64>,
    pub values: Vec<Complex64>,
}

impl ProblemSpec {
    pub fn parse(text: &str) -> CliResult<Self> {
        let spec: Self = serde_json::from_str(text).map_err(|e| CliError::validation(format!("spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> CliResult<()> {
        if self.series.is_empty() {
            return Err(CliError::validation("series: at least one coefficient required"));
        }
        match (self.mode, self.basis()) {
            (Mode::Chebyshev, Basis::Power) => {
                return Err(CliError::validation("chebyshev mode needs Chebyshev-basis coefficients"))
            }
            (Mode::Rational | Mode::Barycentric, Basis::Chebyshev) => {
                return Err(CliError::validation("rational and barycentric modes need power-series coefficients"))
            }
            _ => {}
        }
        if self.weights != WeightChoice::Fitted && self.mode != Mode::Barycentric {
            return Err(CliError::validation("weights: only the barycentric mode has preset weights"));
        }
        if let (Some(NodeSpec::List(n)), Some(v)) = (&self.nodes, &self.values) {
            if n.len() != v.len() {
                return Err(CliError::validation(format!("{} nodes but {} values", n.len(), v.len())));
            }
        }
        if !(self.options.node_tol >= 0.0) || self.options.rcond.is_some_and(|r| !(r >= 0.0)) {
            return Err(CliError::validation("options: tolerances must be nonnegative"));
        }
        Ok(())
    }

    pub fn basis(&self) -> Basis {
        self.basis.unwrap_or(if self.mode == Mode::Chebyshev { Basis::Chebyshev } else { Basis::Power })
    }

    pub fn coefficients(&self) -> Vec<Complex64> {
        complex_list(&self.series)
    }

    pub fn power_series(&self) -> CliResult<PowerSeries> {
        Ok(PowerSeries::new(self.coefficients())?)
    }

    pub fn zeros(&self) -> Vec<Complex64> {
        complex_list(&self.zeros)
    }

    pub fn poles(&self) -> Vec<Complex64> {
        complex_list(&self.poles)
    }

    /// Nodes with their values, sampled from the reference when `values` is
    /// absent.
    pub fn data(&self) -> CliResult<Data> {
        let nodes = self.nodes.as_ref().ok_or_else(|| CliError::validation("nodes: missing"))?.resolve()?;
        let values = match (&self.values, &self.reference) {
            (Some(v), _) => complex_list(v),
            (None, Some(r)) => nodes
                .iter()
                .map(|&t| r.value_at(t).ok_or_else(|| CliError::validation(format!("reference: no value at {t}"))))
                .collect::<CliResult<_>>()?,
            (None, None) => return Err(CliError::validation("values: missing and no reference to sample")),
        };
        if values.len() != nodes.len() {
            return Err(CliError::validation(format!("{} nodes but {} values", nodes.len(), values.len())));
        }
        Ok(Data { nodes, values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::Builtin;

    #[test]
    fn scalars_real_or_pair() {
        let v: Vec<Scalar> = serde_json::from_str("[1.5, [0.0, -2.0]]").unwrap();
        assert_eq!(complex_list(&v), [Complex64::new(1.5, 0.0), Complex64::new(0.0, -2.0)]);
    }

    #[test]
    fn generated_nodes_and_sampled_values() {
        let spec = ProblemSpec::parse(
            r#"{"mode": "rational", "series": [1, 0, -0.5],
                "nodes": {"equidistant": {"a": 0.5, "b": 1.5, "n": 3}},
                "reference": {"function": "cos"}, "degrees": {"k": 2}}"#,
        )
        .unwrap();
        let data = spec.data().unwrap();
        assert_eq!(data.nodes.iter().map(|z| z.re).collect::<Vec<_>>(), [0.5, 1.0, 1.5]);
        assert_eq!(data.values[1], Complex64::new(1f64.cos(), 0.0));
        assert_eq!(spec.degrees.pq().unwrap(), (2, 2));
        assert_eq!(spec.reference, Some(Reference::Function(FunctionRef { function: Builtin::Cos, scale: 1.0 })));
    }

    #[test]
    fn rejects_bad_specs() {
        let cases = [
            r#"{"mode": "rational", "series": []}"#,
            r#"{"mode": "chebyshev", "series": [1], "basis": "power"}"#,
            r#"{"mode": "rational", "series": [1], "nodes": [1, 2], "values": [1]}"#,
            r#"{"mode": "rational", "series": [1], "weights": "berrut"}"#,
            r#"{"mode": "rational", "series": [1], "unknown": 3}"#,
        ];
        for text in cases {
            assert!(matches!(ProblemSpec::parse(text), Err(CliError::Validation(_))), "{text}");
        }
        let spec = ProblemSpec::parse(r#"{"mode": "rational", "series": [1], "nodes": {"chebyshev_zeros": {"n": 3}}}"#).unwrap();
        assert_eq!(spec.data().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn degree_forms() {
        assert_eq!(Degrees { p: Some(2), q: Some(3), k: None }.pq().unwrap(), (2, 3));
        assert!(Degrees { p: Some(2), q: None, k: None }.pq().is_err());
        assert_eq!(Degrees::default().single().unwrap(), None);
        assert!(Degrees { p: Some(2), q: Some(3), k: None }.single().is_err());
    }

    #[test]
    fn table_reference() {
        let r: Reference = serde_json::from_str(r#"{"table": [[0.5, 2.0], [1.0, [3.0, 1.0]]], "tol": 1e-9}"#).unwrap();
        assert_eq!(r.value_at(Complex64::new(1.0, 0.0)), Some(Complex64::new(3.0, 1.0)));
        assert_eq!(r.value_at(Complex64::new(0.7, 0.0)), None);
        assert_eq!(r.value_source().value_at(0.5), Some(Complex64::new(2.0, 0.0)));
    }
}
