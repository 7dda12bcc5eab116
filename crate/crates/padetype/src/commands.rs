//! The subcommands.

use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use padetype_core::apps::laplace::{eval_inverse, laplace_from_interpolant, longman_sharir_invert};
use padetype_core::apps::{accelerate, piecewise_fit, AccelMode, Piece};
use padetype_core::barycentric::{self, WeightKind};
use padetype_core::chebyshev;
use padetype_core::polecontrol::{
    self, default_threshold, remove_poles_iterate, scan_grid, DetectOptions, FitInput, FitKind, Interpolant,
    ValueSource,
};
use padetype_core::rational::{self, FitOptions, InterpolationData};
use padetype_core::{Complex64, Error as CoreError};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::io::{emit, read_to_string};
use crate::model::{pole_records, Loaded, ModelFile};
use crate::spec::{complex_list, Mode, ProblemSpec, WeightChoice};
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub a: f64,
    pub b: f64,
    pub n: usize,
}

impl Grid {
    /// Parses `a:b:n`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(format!("grid `{text}` is not of the form a:b:n"));
        };
        let num = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("grid `{text}`: {e}"));
        let grid = Self { a: num(a)?, b: num(b)?, n: n.trim().parse().map_err(|e| format!("grid `{text}`: {e}"))? };
        grid.check().map_err(|e| e.to_string())?;
        Ok(grid)
    }

    fn check(&self) -> CliResult<()> {
        if !(self.a.is_finite() && self.b.is_finite() && self.a < self.b) || self.n < 2 {
            return Err(CliError::validation("grid needs finite a < b and at least 2 points"));
        }
        Ok(())
    }

    fn from_tuple((a, b, n): (f64, f64, usize)) -> CliResult<Self> {
        let grid = Self { a, b, n };
        grid.check()?;
        Ok(grid)
    }

    pub fn points(&self) -> Vec<f64> {
        let h = (self.b - self.a) / (self.n - 1) as f64;
        (0..self.n).map(|i| if i == self.n - 1 { self.b } else { self.a + i as f64 * h }).collect()
    }

    fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Problem spec (JSON).
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Model file written by `fit`, `cheb-fit` or `fix-poles`.
    #[arg(long, global = true)]
    pub model: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Evaluation or scan grid `a:b:n`.
    #[arg(long, global = true, value_parser = Grid::parse, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
    /// Pole detection threshold on `|R|`.
    #[arg(long, global = true)]
    pub threshold: Option<f64>,
    /// Maximum number of pole removals.
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    /// Relative singular value cutoff.
    #[arg(long, global = true)]
    pub rcond: Option<f64>,
    /// Solve the interpolation system without row scaling.
    #[arg(long, global = true)]
    pub no_row_scaling: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Fit a model to a spec and write the model file.
    Fit,
    /// Evaluate a model on a grid, with error columns when the spec has a reference.
    Eval,
    /// List the spurious real poles of a model.
    Poles,
    /// Remove spurious poles by moving nodes, then write the model and history.
    FixPoles,
    /// Fit a Chebyshev-series model.
    ChebFit,
    /// Invert a Laplace transform through a fitted interpolant.
    LaplaceInvert,
    /// Extrapolate a sequence of samples.
    Accelerate,
    /// Fit one interpolant per piece around a common junction.
    Piecewise,
}

const DEFAULT_MAX_ITER: usize = 10;

pub fn run(command: Command, flags: &Flags) -> CliResult<()> {
    let out = flags.out.as_deref();
    let text = match command {
        Command::Fit => fit(&load_spec(flags)?, flags, None)?.to_json(),
        Command::ChebFit => fit(&load_spec(flags)?, flags, Some(Mode::Chebyshev))?.to_json(),
        Command::Eval => eval(flags)?,
        Command::Poles => poles(flags)?,
        Command::FixPoles => fix_poles(&load_spec(flags)?, flags)?.to_json(),
        Command::LaplaceInvert => laplace_invert(&load_spec(flags)?, flags)?,
        Command::Accelerate => accelerate_cmd(&load_spec(flags)?, flags)?,
        Command::Piecewise => piecewise(&load_spec(flags)?, flags)?,
    };
    emit(out, text.as_bytes())
}

fn load_spec(flags: &Flags) -> CliResult<ProblemSpec> {
    let path = flags.spec.as_deref().ok_or_else(|| CliError::validation("--spec is required"))?;
    ProblemSpec::parse(&read_to_string(path)?)
}

fn load_model(flags: &Flags) -> CliResult<ModelFile> {
    let path = flags.model.as_deref().ok_or_else(|| CliError::validation("--model is required"))?;
    ModelFile::parse(&read_to_string(path)?)
}

fn fit_options(spec: &ProblemSpec, flags: &Flags) -> CliResult<FitOptions> {
    let mut options = spec.options.fit_options();
    if flags.no_row_scaling {
        options.scaled_rows = false;
    }
    if let Some(r) = flags.rcond {
        if !(r >= 0.0) {
            return Err(CliError::validation("--rcond must be nonnegative"));
        }
        options.rcond = Some(r);
    }
    Ok(options)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report serializes");
    out.push('\n');
    out
}

fn barycentric_degree(spec: &ProblemSpec, n_nodes: usize) -> CliResult<usize> {
    let k = spec.degrees.single()?.unwrap_or(n_nodes.saturating_sub(1));
    if k + 1 != n_nodes {
        return Err(CliError::validation(format!("barycentric degree {k} needs {} nodes, got {n_nodes}", k + 1)));
    }
    Ok(k)
}

fn fit_kind(spec: &ProblemSpec, n_nodes: usize) -> CliResult<FitKind> {
    match spec.mode {
        Mode::Rational => {
            let (p, q) = spec.degrees.pq()?;
            Ok(FitKind::Rational { p, q })
        }
        Mode::Barycentric => Ok(FitKind::Barycentric { k: barycentric_degree(spec, n_nodes)? }),
        Mode::Chebyshev => Err(CliError::validation("chebyshev models are fitted with cheb-fit")),
    }
}

fn fit(spec: &ProblemSpec, flags: &Flags, require: Option<Mode>) -> CliResult<ModelFile> {
    if let Some(mode) = require {
        if spec.mode != mode {
            return Err(CliError::validation("cheb-fit needs a spec with mode chebyshev"));
        }
    }
    let data = spec.data()?;
    let options = fit_options(spec, flags)?;
    let node_tol = spec.options.node_tol;
    if spec.mode == Mode::Chebyshev {
        let k = spec.degrees.single()?.ok_or_else(|| CliError::validation("degrees: k is required"))?;
        if !spec.zeros.is_empty() || !spec.poles.is_empty() {
            return Err(CliError::validation("chebyshev mode takes no prescribed zeros or poles"));
        }
        let (m, report) = chebyshev::fit_cheb_with(&spec.coefficients(), &data.nodes, &data.values, k, &options)?;
        return Ok(ModelFile::from_chebyshev(&m).with_diagnostics(&report));
    }
    if spec.weights != WeightChoice::Fitted {
        if !spec.zeros.is_empty() || !spec.poles.is_empty() {
            return Err(CliError::validation("preset weights take no prescribed zeros or poles"));
        }
        let kind = if spec.weights == WeightChoice::Berrut { WeightKind::Berrut } else { WeightKind::Shepard };
        let m = barycentric::preset_weights(&data.nodes, &data.values, kind)?;
        return Ok(ModelFile::from_interpolant(&Interpolant::Barycentric(m), node_tol));
    }
    let series = spec.power_series()?;
    let (model, report) = match fit_kind(spec, data.nodes.len())? {
        FitKind::Rational { p, q } => {
            let d = InterpolationData::new(data.nodes, data.values)?;
            let (m, r) = rational::fit_partial_with(&series, &d, p, q, &spec.zeros(), &spec.poles(), &options)?;
            (Interpolant::Rational(m), r)
        }
        FitKind::Barycentric { k } => {
            let (m, r) = barycentric::fit_weights_partial_with(
                &series,
                &data.nodes,
                &data.values,
                k,
                &spec.zeros(),
                &spec.poles(),
                &options,
            )?;
            (Interpolant::Barycentric(m), r)
        }
    };
    Ok(ModelFile::from_interpolant(&model, node_tol).with_diagnostics(&report))
}

fn eval(flags: &Flags) -> CliResult<String> {
    let model = load_model(flags)?.load()?;
    let grid = flags.grid.ok_or_else(|| CliError::validation("--grid is required"))?;
    let reference = match &flags.spec {
        Some(_) => load_spec(flags)?.reference,
        None => None,
    };
    let mut header = vec!["t", "R_re", "R_im"];
    if reference.is_some() {
        header.extend(["f_ref_re", "f_ref_im", "abs_err", "log10_err"]);
    }
    let mut table = Table::new(header);
    for t in grid.points() {
        let z = Complex64::new(t, 0.0);
        let r = model.eval(z);
        let mut row = vec![t, r.re, r.im];
        if let Some(reference) = &reference {
            let f = reference.value_at(z).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
            let err = (r - f).norm();
            row.extend([f.re, f.im, err, err.log10()]);
        }
        table.push(row);
    }
    Ok(table.to_csv())
}

fn detect_options(flags: &Flags, grid: &Grid, threshold: Option<f64>) -> CliResult<DetectOptions> {
    let threshold = flags.threshold.or(threshold);
    if threshold.is_some_and(|t| !(t > 0.0)) {
        return Err(CliError::validation("threshold must be positive"));
    }
    Ok(DetectOptions { grid_n: grid.n, threshold, ..DetectOptions::default() })
}

fn scan_grid_of(flags: &Flags, spec: Option<&ProblemSpec>) -> CliResult<Grid> {
    match (flags.grid, spec.and_then(|s| s.detect.grid)) {
        (Some(g), _) => Ok(g),
        (None, Some(t)) => Grid::from_tuple(t),
        (None, None) => Err(CliError::validation("--grid is required")),
    }
}

fn poles(flags: &Flags) -> CliResult<String> {
    let spec = match &flags.spec {
        Some(_) => Some(load_spec(flags)?),
        None => None,
    };
    let grid = scan_grid_of(flags, spec.as_ref())?;
    let options = detect_options(flags, &grid, spec.as_ref().and_then(|s| s.detect.threshold))?;
    let reports = match load_model(flags)?.load()? {
        Loaded::Interpolant { model, .. } => polecontrol::detect_poles(&model, grid.interval(), &options)?,
        Loaded::Chebyshev(m) => {
            let threshold = options.threshold.unwrap_or_else(|| default_threshold(&m.series));
            scan_grid(|t| m.eval_real(t), grid.interval(), grid.n, threshold)
        }
    };
    Ok(to_json(&pole_records(&reports)))
}

fn fix_poles(spec: &ProblemSpec, flags: &Flags) -> CliResult<ModelFile> {
    if spec.weights != WeightChoice::Fitted {
        return Err(CliError::validation("fix-poles needs fitted weights"));
    }
    let data = spec.data()?;
    let source = spec.reference.as_ref().map_or(ValueSource::None, |r| r.value_source());
    let input = FitInput {
        series: spec.power_series()?,
        kind: fit_kind(spec, data.nodes.len())?,
        nodes: data.nodes,
        values: data.values,
        zeros: spec.zeros(),
        poles: spec.poles(),
        options: fit_options(spec, flags)?,
        source: &source,
    };
    let grid = scan_grid_of(flags, Some(spec))?;
    let options = detect_options(flags, &grid, spec.detect.threshold)?;
    let max_iter = flags.max_iter.or(spec.detect.max_iter).unwrap_or(DEFAULT_MAX_ITER);
    let outcome = match remove_poles_iterate(input, grid.interval(), &options, spec.detect.policy.into(), max_iter) {
        Ok(o) => o,
        Err(CoreError::IterationBudgetExceeded { history }) => {
            let at: Vec<String> = history.iter().map(|r| format!("{:.6}", r.location.re)).collect();
            return Err(CliError::Budget(format!(
                "pole removal did not finish within {max_iter} iterations (removed at {})",
                at.join(", ")
            )));
        }
        Err(e) => return Err(e.into()),
    };
    let mut file = ModelFile::from_interpolant(&outcome.model, spec.options.node_tol);
    file.history = pole_records(&outcome.history);
    Ok(file)
}

#[derive(Serialize)]
struct SeriesFile {
    scale: Complex64,
    alpha: Vec<Complex64>,
    beta: Vec<Complex64>,
    coefficients: Vec<Complex64>,
}

/// `out.csv` -> `out.series.json`.
fn series_path(out: &Path) -> PathBuf {
    out.with_extension("series.json")
}

fn laplace_invert(spec: &ProblemSpec, flags: &Flags) -> CliResult<String> {
    let laplace = spec.laplace.as_ref().ok_or_else(|| CliError::validation("laplace section is missing"))?;
    if spec.mode != Mode::Rational {
        return Err(CliError::validation("laplace-invert needs mode rational"));
    }
    let model = fit(spec, flags, None)?.load()?;
    let Loaded::Interpolant { model: Interpolant::Rational(model), .. } = model else {
        unreachable!("rational mode fits a rational model")
    };
    let transform = laplace_from_interpolant(&model, laplace.variable_map())?;
    let series = longman_sharir_invert(&transform, laplace.terms)?;
    let grid = match (flags.grid, laplace.grid) {
        (Some(g), _) => g,
        (None, Some(t)) => Grid::from_tuple(t)?,
        (None, None) => return Err(CliError::validation("--grid is required")),
    };

    let mut header = vec!["s", "f_re", "f_im"];
    if laplace.inverse_reference.is_some() {
        header.extend(["f_ref_re", "f_ref_im", "abs_err", "log10_err"]);
    }
    let mut table = Table::new(header);
    for s in grid.points() {
        let f = eval_inverse(series.coeffs(), s);
        let mut row = vec![s, f.re, f.im];
        if let Some(reference) = &laplace.inverse_reference {
            let want = reference.eval(Complex64::new(s, 0.0));
            let err = (f - want).norm();
            row.extend([want.re, want.im, err, err.log10()]);
        }
        table.push(row);
    }
    if let Some(out) = &flags.out {
        let file = SeriesFile {
            scale: transform.scale,
            alpha: transform.alpha.clone(),
            beta: transform.beta.clone(),
            coefficients: series.coeffs().to_vec(),
        };
        emit(Some(&series_path(out)), to_json(&file).as_bytes())?;
    }
    Ok(table.to_csv())
}

fn accel_mode(spec: &ProblemSpec) -> CliResult<AccelMode> {
    match (spec.mode, spec.weights) {
        (Mode::Rational, _) => Ok(AccelMode::Rational),
        (Mode::Barycentric, WeightChoice::Fitted) => Ok(AccelMode::Barycentric),
        _ => Err(CliError::validation("this command needs mode rational or barycentric with fitted weights")),
    }
}

fn accelerate_cmd(spec: &ProblemSpec, flags: &Flags) -> CliResult<String> {
    let accel = spec.accelerate.as_ref().ok_or_else(|| CliError::validation("accelerate section is missing"))?;
    let mode = accel_mode(spec)?;
    let k = spec.degrees.single()?.ok_or_else(|| CliError::validation("degrees: k is required"))?;
    let data = spec.data()?;
    let tau_inf = accel.tau_inf.value();
    let series = spec.power_series()?;
    let t = accelerate(&data.values, &data.nodes, tau_inf, k, &series, mode, &fit_options(spec, flags)?)?;
    let width = data.values.len() + 1 - t.len();
    let limit = spec.reference.as_ref().and_then(|r| r.value_at(tau_inf));

    let mut header = vec!["n", "T_re", "T_im", "S_re", "S_im"];
    if limit.is_some() {
        header.extend(["T_err", "S_err"]);
    }
    let mut table = Table::new(header);
    for (n, tn) in t.iter().enumerate() {
        let s = data.values[n + width - 1];
        let mut row = vec![n as f64, tn.re, tn.im, s.re, s.im];
        if let Some(f) = limit {
            row.extend([(tn - f).norm(), (s - f).norm()]);
        }
        table.push(row);
    }
    Ok(table.to_csv())
}

#[derive(Serialize)]
struct PieceReport {
    interval: (f64, f64),
    model: ModelFile,
    condition: Option<f64>,
    effective_condition: Option<f64>,
    overdetermined: bool,
}

#[derive(Serialize)]
struct JunctionOut {
    taylor: Vec<Vec<Complex64>>,
    max_mismatch: Option<f64>,
}

#[derive(Serialize)]
struct PiecewiseReport {
    center: f64,
    pieces: Vec<PieceReport>,
    junction: JunctionOut,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn piecewise(spec: &ProblemSpec, flags: &Flags) -> CliResult<String> {
    let pw = spec.piecewise.as_ref().ok_or_else(|| CliError::validation("piecewise section is missing"))?;
    let mode = accel_mode(spec)?;
    let k = spec.degrees.single()?.ok_or_else(|| CliError::validation("degrees: k is required"))?;
    let pieces = pw
        .pieces
        .iter()
        .map(|p| {
            let values = match (&p.values, &spec.reference) {
                (Some(v), _) if v.len() == p.nodes.len() => complex_list(v),
                (Some(_), _) => return Err(CliError::validation("piece nodes and values differ in length")),
                (None, Some(r)) => p
                    .nodes
                    .iter()
                    .map(|&t| r.value_at(Complex64::new(t, 0.0)).ok_or_else(|| CliError::validation(format!("reference: no value at {t}"))))
                    .collect::<CliResult<_>>()?,
                (None, None) => return Err(CliError::validation("piece values missing and no reference to sample")),
            };
            Ok(Piece { interval: p.interval, nodes: p.nodes.clone(), values })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let fit = piecewise_fit(&pieces, &spec.power_series()?, k, pw.center, mode, &fit_options(spec, flags)?)?;
    let report = PiecewiseReport {
        center: fit.center,
        pieces: fit
            .pieces
            .iter()
            .map(|p| PieceReport {
                interval: p.interval,
                model: ModelFile::from_interpolant(&p.model, spec.options.node_tol),
                condition: finite(p.condition),
                effective_condition: finite(p.effective_condition()),
                overdetermined: p.overdetermined,
            })
            .collect(),
        junction: JunctionOut { taylor: fit.junction.taylor.clone(), max_mismatch: finite(fit.junction.max_mismatch) },
    };
    Ok(to_json(&report))
}
