//! Detection and removal of spurious real poles.
//!
//! Coefficient models report the real roots of their denominator. Barycentric
//! models are scanned on a uniform grid: a pole shows up as a sign flip of
//! large values between neighboring grid points, or failing that as a large
//! local maximum of `|R|`. A pole is removed by moving one node onto it and
//! fitting again, which forces `R(p) = f(p)`.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::barycentric::{self, BarycentricModel};
use crate::rational::{self, FitOptions, InterpolationData, RationalModel};
use crate::series::PowerSeries;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionMethod {
    Roots,
    SignChange,
    Threshold,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoleReport {
    pub location: Complex64,
    pub method: DetectionMethod,
    /// Grid cell containing the pole, for grid detections.
    pub bracket: Option<(f64, f64)>,
    /// `|R|` next to the pole.
    pub residual_value: f64,
}

impl PoleReport {
    /// Point where the replacement node goes: the root itself, or the middle
    /// of the bracket.
    pub fn replacement_point(&self) -> f64 {
        match self.bracket {
            Some((lo, hi)) => 0.5 * (lo + hi),
            None => self.location.re,
        }
    }
}

/// A fitted model of either form.
#[derive(Debug, Clone, PartialEq)]
pub enum Interpolant {
    Rational(RationalModel),
    Barycentric(BarycentricModel),
}

impl Interpolant {
    pub fn eval(&self, t: Complex64) -> Complex64 {
        match self {
            Self::Rational(m) => m.eval(t),
            Self::Barycentric(m) => m.eval(t),
        }
    }

    pub fn eval_real(&self, t: f64) -> Complex64 {
        self.eval(Complex64::new(t, 0.0))
    }

    pub fn taylor(&self, len: usize) -> Result<Vec<Complex64>> {
        match self {
            Self::Rational(m) => m.taylor(len),
            Self::Barycentric(m) => m.taylor(len),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectOptions {
    pub grid_n: usize,
    /// `None` means `10 * max |f_i|`.
    pub threshold: Option<f64>,
    /// Relative imaginary-part tolerance for calling a root real.
    pub real_tol: f64,
}

impl Default for DetectOptions {
    fn default() -> Self {
        Self { grid_n: 500, threshold: None, real_tol: 1e-8 }
    }
}

/// `10 * max |f_i|`.
pub fn default_threshold(values: &[Complex64]) -> f64 {
    10.0 * values.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Spurious real poles of `model` in `[a, b]`, in increasing order.
/// Prescribed poles are not reported.
pub fn detect_poles(model: &Interpolant, interval: (f64, f64), options: &DetectOptions) -> Result<Vec<PoleReport>> {
    let (a, b) = interval;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument("detection interval needs a < b"));
    }
    match model {
        Interpolant::Rational(m) => rational_poles(m, interval, options),
        Interpolant::Barycentric(m) => {
            if options.grid_n < 2 {
                return Err(Error::InvalidArgument("grid needs at least 2 points"));
            }
            let threshold = options.threshold.unwrap_or_else(|| default_threshold(&m.values));
            Ok(scan_grid(|t| m.eval_real(t), interval, options.grid_n, threshold))
        }
    }
}

fn rational_poles(m: &RationalModel, (a, b): (f64, f64), options: &DetectOptions) -> Result<Vec<PoleReport>> {
    let mut out: Vec<PoleReport> = m
        .poles(options.real_tol)?
        .into_iter()
        .filter(|p| !p.prescribed && p.real && p.location.re >= a && p.location.re <= b)
        .map(|p| {
            let x = p.location.re;
            let probe = x + 1e-8 * x.abs().max(1.0);
            PoleReport {
                location: Complex64::new(x, 0.0),
                method: DetectionMethod::Roots,
                bracket: None,
                residual_value: m.eval_real(probe).norm(),
            }
        })
        .collect();
    out.sort_by(|p, q| p.location.re.total_cmp(&q.location.re));
    Ok(out)
}

/// Grid scan on `n` uniform points of `[a, b]`.
pub fn scan_grid(eval: impl Fn(f64) -> Complex64, (a, b): (f64, f64), n: usize, threshold: f64) -> Vec<PoleReport> {
    let h = (b - a) / (n - 1) as f64;
    let grid: Vec<f64> = (0..n).map(|i| if i == n - 1 { b } else { a + i as f64 * h }).collect();
    let values: Vec<Complex64> = grid.iter().map(|&t| eval(t)).collect();
    let mag: Vec<f64> = values.iter().map(|v| v.norm()).collect();
    let mut out = Vec::new();
    let mut flagged = alloc::vec![false; n];
    for i in 0..n - 1 {
        let flip = (values[i].re < 0.0) != (values[i + 1].re < 0.0);
        if flip && mag[i] > threshold && mag[i + 1] > threshold {
            flagged[i] = true;
            flagged[i + 1] = true;
            out.push(PoleReport {
                location: Complex64::new(0.5 * (grid[i] + grid[i + 1]), 0.0),
                method: DetectionMethod::SignChange,
                bracket: Some((grid[i], grid[i + 1])),
                residual_value: mag[i].max(mag[i + 1]),
            });
        }
    }
    for i in 1..n - 1 {
        if flagged[i] || flagged[i - 1] || flagged[i + 1] {
            continue;
        }
        if mag[i] > threshold && mag[i] >= mag[i - 1] && mag[i] >= mag[i + 1] {
            let (lo, hi) = if mag[i - 1] >= mag[i + 1] { (grid[i - 1], grid[i]) } else { (grid[i], grid[i + 1]) };
            out.push(PoleReport {
                location: Complex64::new(grid[i], 0.0),
                method: DetectionMethod::Threshold,
                bracket: Some((lo, hi)),
                residual_value: mag[i],
            });
        }
    }
    out.sort_by(|p, q| p.location.re.total_cmp(&q.location.re));
    out
}

/// Degrees and form of a fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitKind {
    Rational { p: usize, q: usize },
    Barycentric { k: usize },
}

/// Where true function values come from when a node is moved.
pub enum ValueSource {
    Callback(Box<dyn Fn(f64) -> Option<Complex64>>),
    /// `(t, f(t))` pairs, matched within a relative tolerance.
    Table { points: Vec<(f64, Complex64)>, tol: f64 },
    None,
}

impl ValueSource {
    pub fn callback(f: impl Fn(f64) -> Option<Complex64> + 'static) -> Self {
        Self::Callback(Box::new(f))
    }

    pub fn value_at(&self, t: f64) -> Option<Complex64> {
        match self {
            Self::Callback(f) => f(t),
            Self::Table { points, tol } => points
                .iter()
                .filter(|(x, _)| (x - t).abs() <= tol * t.abs().max(1.0))
                .min_by(|(x, _), (y, _)| (x - t).abs().total_cmp(&(y - t).abs()))
                .map(|&(_, v)| v),
            Self::None => None,
        }
    }
}

impl fmt::Debug for ValueSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Callback(_) => f.write_str("Callback(..)"),
            Self::Table { points, tol } => f.debug_struct("Table").field("points", &points.len()).field("tol", tol).finish(),
            Self::None => f.write_str("None"),
        }
    }
}

/// Everything needed to refit after moving a node.
#[derive(Debug)]
pub struct FitInput<'a> {
    pub series: PowerSeries,
    pub nodes: Vec<Complex64>,
    pub values: Vec<Complex64>,
    pub kind: FitKind,
    pub zeros: Vec<Complex64>,
    pub poles: Vec<Complex64>,
    pub options: FitOptions,
    pub source: &'a ValueSource,
}

impl FitInput<'_> {
    pub fn fit(&self) -> Result<Interpolant> {
        match self.kind {
            FitKind::Rational { p, q } => {
                let data = InterpolationData::new(self.nodes.clone(), self.values.clone())?;
                let (m, _) = rational::fit_partial_with(&self.series, &data, p, q, &self.zeros, &self.poles, &self.options)?;
                Ok(Interpolant::Rational(m))
            }
            FitKind::Barycentric { k } => {
                let (m, _) = barycentric::fit_weights_partial_with(
                    &self.series,
                    &self.nodes,
                    &self.values,
                    k,
                    &self.zeros,
                    &self.poles,
                    &self.options,
                )?;
                Ok(Interpolant::Barycentric(m))
            }
        }
    }

    fn with_node(&self, index: usize, t: f64, value: Complex64) -> Self {
        let mut nodes = self.nodes.clone();
        let mut values = self.values.clone();
        nodes[index] = Complex64::new(t, 0.0);
        values[index] = value;
        Self {
            series: self.series.clone(),
            nodes,
            values,
            kind: self.kind,
            zeros: self.zeros.clone(),
            poles: self.poles.clone(),
            options: self.options,
            source: self.source,
        }
    }
}

/// Which node gives way to the pole.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReplacePolicy {
    #[default]
    First,
    Nearest,
}

/// Moves one node onto the reported pole and refits.
pub fn remove_pole<'a>(
    input: &FitInput<'a>,
    report: &PoleReport,
    policy: ReplacePolicy,
) -> Result<(FitInput<'a>, Interpolant)> {
    if input.nodes.is_empty() {
        return Err(Error::EmptyData);
    }
    let x = report.replacement_point();
    let value = input.source.value_at(x).ok_or(Error::ValueUnavailable(x))?;
    let target = Complex64::new(x, 0.0);
    let index = match policy {
        ReplacePolicy::First => 0,
        ReplacePolicy::Nearest => input
            .nodes
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (*a - target).norm().total_cmp(&(*b - target).norm()))
            .map(|(i, _)| i)
            .unwrap_or(0),
    };
    let next = input.with_node(index, x, value);
    let model = next.fit()?;
    Ok((next, model))
}

/// Detects the spurious poles of the current fit and removes the first one.
pub fn detect_and_remove<'a>(
    input: &FitInput<'a>,
    interval: (f64, f64),
    detect: &DetectOptions,
    policy: ReplacePolicy,
) -> Result<(FitInput<'a>, Interpolant, PoleReport)> {
    let model = input.fit()?;
    let reports = detect_with_input(&model, input, interval, detect)?;
    let report = reports.into_iter().next().ok_or(Error::NoPoleDetected)?;
    let (next, model) = remove_pole(input, &report, policy)?;
    Ok((next, model, report))
}

fn detect_with_input(
    model: &Interpolant,
    input: &FitInput<'_>,
    interval: (f64, f64),
    detect: &DetectOptions,
) -> Result<Vec<PoleReport>> {
    // the threshold follows the original data even after nodes move
    let options = DetectOptions { threshold: Some(detect.threshold.unwrap_or_else(|| default_threshold(&input.values))), ..*detect };
    detect_poles(model, interval, &options)
}

#[derive(Debug)]
pub struct RemovalOutcome<'a> {
    pub input: FitInput<'a>,
    pub model: Interpolant,
    pub history: Vec<PoleReport>,
}

/// Removes poles one at a time, lowest first, until none is left in the
/// interval. Poles introduced by a removal are handled the same way.
pub fn remove_poles_iterate<'a>(
    input: FitInput<'a>,
    interval: (f64, f64),
    detect: &DetectOptions,
    policy: ReplacePolicy,
    max_iter: usize,
) -> Result<RemovalOutcome<'a>> {
    if max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be at least 1"));
    }
    let threshold = detect.threshold.unwrap_or_else(|| default_threshold(&input.values));
    let detect = DetectOptions { threshold: Some(threshold), ..*detect };
    let mut input = input;
    let mut model = input.fit()?;
    let mut history = Vec::new();
    loop {
        let reports = detect_poles(&model, interval, &detect)?;
        let Some(report) = reports.into_iter().next() else {
            return Ok(RemovalOutcome { input, model, history });
        };
        if history.len() == max_iter {
            return Err(Error::IterationBudgetExceeded { history });
        }
        let (next, refit) = remove_pole(&input, &report, policy)?;
        history.push(report);
        input = next;
        model = refit;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn geometric_pole_by_roots() {
        let m = RationalModel::new(vec![c(1.0)], vec![c(1.0), c(-1.0)]).unwrap();
        let reports = detect_poles(&Interpolant::Rational(m), (0.0, 2.0), &DetectOptions::default()).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].method, DetectionMethod::Roots);
        assert!((reports[0].location.re - 1.0).abs() < 1e-14);
        assert!(reports[0].bracket.is_none());
        assert!(reports[0].residual_value > 1e6);
    }

    #[test]
    fn grid_scan_sign_change_and_threshold() {
        let r = scan_grid(|t| c(1.0 / (t - 0.3)), (-1.0, 1.0), 101, 10.0);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].method, DetectionMethod::SignChange);
        let (lo, hi) = r[0].bracket.unwrap();
        assert!(lo < 0.3 && 0.3 < hi);

        let r = scan_grid(|t| c(1.0 / ((t - 0.3) * (t - 0.3) + 1e-6)), (-1.0, 1.0), 101, 10.0);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].method, DetectionMethod::Threshold);
        let (lo, hi) = r[0].bracket.unwrap();
        assert!(lo < hi && lo <= 0.3 && 0.3 <= hi);

        assert!(scan_grid(|t| c(t.cos()), (-1.0, 1.0), 50, 10.0).is_empty());
    }

    #[test]
    fn value_sources() {
        let table = ValueSource::Table { points: vec![(1.0, c(2.0)), (2.0, c(3.0))], tol: 1e-6 };
        assert_eq!(table.value_at(2.0 + 1e-9), Some(c(3.0)));
        assert_eq!(table.value_at(1.5), None);
        assert_eq!(ValueSource::None.value_at(1.0), None);
        assert_eq!(ValueSource::callback(|t| Some(c(t * 2.0))).value_at(1.5), Some(c(3.0)));
    }

    #[test]
    fn removal_needs_values() {
        let source = ValueSource::None;
        let input = FitInput {
            series: PowerSeries::from_real(&[1.0, 1.0, 1.0]).unwrap(),
            nodes: vec![c(0.5)],
            values: vec![c(2.0)],
            kind: FitKind::Rational { p: 1, q: 1 },
            zeros: vec![],
            poles: vec![],
            options: FitOptions::default(),
            source: &source,
        };
        let report = PoleReport { location: c(1.5), method: DetectionMethod::Roots, bracket: None, residual_value: 0.0 };
        assert_eq!(remove_pole(&input, &report, ReplacePolicy::First).unwrap_err(), Error::ValueUnavailable(1.5));
    }

    #[test]
    fn pole_free_fixture_has_empty_history() {
        let source = ValueSource::callback(|t| Some(c(t.exp())));
        let nodes = crate::nodes::equidistant(0.1, 0.8, 3).unwrap();
        let values = nodes.iter().map(|t| t.exp()).collect();
        let series: Vec<f64> = (0..10).scan(1.0, |f, i| {
            let v = 1.0 / *f;
            *f *= (i + 1) as f64;
            Some(v)
        }).collect();
        let input = FitInput {
            series: PowerSeries::from_real(&series).unwrap(),
            nodes,
            values,
            kind: FitKind::Rational { p: 3, q: 3 },
            zeros: vec![],
            poles: vec![],
            options: FitOptions::default(),
            source: &source,
        };
        let before = input.fit().unwrap();
        let out = remove_poles_iterate(input, (-1.0, 1.0), &DetectOptions::default(), ReplacePolicy::First, 3).unwrap();
        assert!(out.history.is_empty());
        assert_eq!(out.model, before);
        let err = detect_and_remove(&out.input, (-1.0, 1.0), &DetectOptions::default(), ReplacePolicy::First);
        assert!(matches!(err, Err(Error::NoPoleDetected)));
    }
}
