//! Padé-type rational interpolants in coefficient form.
//!
//! For `R = N/D` with `D = b_0 + ... + b_q t^q` normalized to `b_0 = 1`, the
//! numerator coefficients
//!
//! ```text
//! a_i = c_i b_0 + c_{i-1} b_1 + ... + c_{i-q} b_q      (c_j = 0 for j < 0)
//! ```
//!
//! make `f - R = O(t^{p+1})` whatever the `b_j` are. The `b_j` are then chosen
//! so that `R(tau_i) = f_i`, which is linear in `b`:
//!
//! ```text
//! sum_j b_j tau_i^j (S_{p-j}(tau_i) - f_i) = 0,    S_n = c_0 + ... + c_n t^n.
//! ```
//!
//! With `l` nodes and `q` unknowns the system is solved in the minimum-norm
//! least-squares sense, so `l != q` is allowed.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::linsolve::{self, Matrix, SolveReport};
use crate::poly;
use crate::series::{self, PowerSeries};
use crate::{pole_sentinel, Error, Result, POLE_UNDERFLOW};

/// Nodes `tau_i` and values `f_i = f(tau_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationData {
    nodes: Vec<Complex64>,
    values: Vec<Complex64>,
}

impl InterpolationData {
    /// Nodes must be nonzero and pairwise distinct.
    pub fn new(nodes: Vec<Complex64>, values: Vec<Complex64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::LengthMismatch { nodes: nodes.len(), values: values.len() });
        }
        if nodes.is_empty() {
            return Err(Error::EmptyData);
        }
        validate_nodes(&nodes, true)?;
        Ok(Self { nodes, values })
    }

    pub fn from_real(nodes: &[f64], values: &[f64]) -> Result<Self> {
        Self::new(
            nodes.iter().map(|&t| Complex64::new(t, 0.0)).collect(),
            values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        )
    }

    /// Samples `f` at `nodes`.
    pub fn sample(nodes: Vec<Complex64>, f: impl Fn(Complex64) -> Complex64) -> Result<Self> {
        let values = nodes.iter().map(|&t| f(t)).collect();
        Self::new(nodes, values)
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

pub(crate) fn validate_nodes(nodes: &[Complex64], forbid_origin: bool) -> Result<()> {
    for (i, &a) in nodes.iter().enumerate() {
        if !a.re.is_finite() || !a.im.is_finite() {
            return Err(Error::InvalidArgument("interpolation nodes must be finite"));
        }
        if forbid_origin && a.norm() == 0.0 {
            return Err(Error::NodeAtOrigin);
        }
        for (j, &b) in nodes.iter().enumerate().skip(i + 1) {
            if (a - b).norm() <= 4.0 * f64::EPSILON * a.norm().max(b.norm()) {
                return Err(Error::DuplicateNodes(i, j));
            }
        }
    }
    Ok(())
}

/// Solver settings shared by the fits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Multiply row `i` of the interpolation system by `tau_i^{-q}`.
    pub scaled_rows: bool,
    /// Relative singular value cutoff; `None` means `max(l, q) * eps`.
    pub rcond: Option<f64>,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self { scaled_rows: true, rcond: None }
    }
}

impl FitOptions {
    /// The interpolation system exactly as written, without row scaling.
    pub fn unscaled() -> Self {
        Self { scaled_rows: false, ..Self::default() }
    }

    pub(crate) fn rcond_for(&self, rows: usize, cols: usize) -> f64 {
        self.rcond.unwrap_or_else(|| linsolve::default_rcond(rows, cols))
    }
}

/// `R(t) = N(t) Z(t) / (D(t) P(t))`, with `Z`, `P` the prescribed zero and
/// pole factors (empty for a plain interpolant).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalModel {
    pub num: Vec<Complex64>,
    pub den: Vec<Complex64>,
    pub prescribed_zeros: Vec<Complex64>,
    pub prescribed_poles: Vec<Complex64>,
}

/// A denominator root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub location: Complex64,
    pub real: bool,
    pub prescribed: bool,
}

impl RationalModel {
    pub fn new(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        if den.is_empty() || den.iter().all(|b| b.norm() == 0.0) {
            return Err(Error::DegenerateDenominator);
        }
        Ok(Self { num, den, prescribed_zeros: Vec::new(), prescribed_poles: Vec::new() })
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        let mut num = poly::horner(&self.num, t);
        let mut den = poly::horner(&self.den, t);
        for &z in &self.prescribed_zeros {
            num *= t - z;
        }
        for &p in &self.prescribed_poles {
            den *= t - p;
        }
        if den.norm() < POLE_UNDERFLOW {
            return pole_sentinel(num);
        }
        num / den
    }

    pub fn eval_real(&self, t: f64) -> Complex64 {
        self.eval(Complex64::new(t, 0.0))
    }

    /// `N Z` as a polynomial.
    pub fn full_numerator(&self) -> Vec<Complex64> {
        poly::mul(&self.num, &poly::from_roots(&self.prescribed_zeros))
    }

    /// `D P` as a polynomial.
    pub fn full_denominator(&self) -> Vec<Complex64> {
        poly::mul(&self.den, &poly::from_roots(&self.prescribed_poles))
    }

    /// First `len` Taylor coefficients of the model at the origin.
    pub fn taylor(&self, len: usize) -> Result<Vec<Complex64>> {
        series::taylor_of_rational(&self.full_numerator(), &self.full_denominator(), len)
    }

    /// Limit of `R(t)` as `|t| -> inf` (infinite when the numerator has the
    /// higher degree).
    pub fn limit_at_infinity(&self) -> Complex64 {
        let num = poly::trim(&self.full_numerator(), 1e-14).to_vec();
        let den = poly::trim(&self.full_denominator(), 1e-14).to_vec();
        match (num.len(), den.len()) {
            (0, _) => Complex64::new(0.0, 0.0),
            (n, d) if n < d => Complex64::new(0.0, 0.0),
            (n, d) if n == d => num[n - 1] / den[d - 1],
            _ => pole_sentinel(Complex64::new(1.0, 0.0)),
        }
    }

    /// Roots of the fitted denominator followed by the prescribed poles.
    ///
    /// A root is flagged real when `|im| <= real_tol * max(1, |root|)`.
    pub fn poles(&self, real_tol: f64) -> Result<Vec<Pole>> {
        let trimmed = poly::trim(&self.den, 1e-14);
        if trimmed.is_empty() {
            return Err(Error::DegenerateDenominator);
        }
        let mut out: Vec<Pole> = poly::roots(trimmed)?
            .into_iter()
            .map(|r| Pole { location: r, real: poly::is_real(r, real_tol), prescribed: false })
            .collect();
        out.extend(self.prescribed_poles.iter().map(|&p| Pole {
            location: p,
            real: poly::is_real(p, real_tol),
            prescribed: true,
        }));
        Ok(out)
    }
}

/// Interpolation system with `b_0 = 1` moved to the right-hand side.
///
/// Returns the `l x q` matrix and the right-hand side.
pub fn build_system(
    series: &PowerSeries,
    data: &InterpolationData,
    p: usize,
    q: usize,
    scaled: bool,
) -> Result<(Matrix, Vec<Complex64>)> {
    if series.len() < p + 1 {
        return Err(Error::SeriesTooShort { have: series.len(), need: p + 1 });
    }
    let l = data.len();
    let mut entries = Vec::with_capacity(l * q);
    let mut rhs = Vec::with_capacity(l);
    for (&tau, &f) in data.nodes().iter().zip(data.values()) {
        let scale = if scaled { tau.powi(-(q as i32)) } else { Complex64::new(1.0, 0.0) };
        let mut power = Complex64::new(1.0, 0.0);
        for j in 1..=q {
            power *= tau;
            let s = series.partial_sum(p as isize - j as isize, tau);
            entries.push(scale * power * (s - f));
        }
        rhs.push(-scale * (series.partial_sum(p as isize, tau) - f));
    }
    Ok((linsolve::matrix_from_rows(l, q, &entries), rhs))
}

/// `a_i = sum_j c_{i-j} b_j` for `i = 0..=p`.
pub fn numerator_from_denominator(series: &PowerSeries, den: &[Complex64], p: usize) -> Vec<Complex64> {
    (0..=p)
        .map(|i| {
            den.iter()
                .enumerate()
                .take(i + 1)
                .fold(Complex64::new(0.0, 0.0), |acc, (j, &b)| acc + series.coeff((i - j) as isize) * b)
        })
        .collect()
}

/// Padé-type `(p/q)` rational interpolant with default options.
pub fn fit(series: &PowerSeries, data: &InterpolationData, p: usize, q: usize) -> Result<RationalModel> {
    fit_with(series, data, p, q, &FitOptions::default()).map(|(m, _)| m)
}

/// Padé-type `(p/q)` rational interpolant, returning the solve report.
///
/// For `q = 0` there is nothing to solve and the report describes an empty
/// system.
pub fn fit_with(
    series: &PowerSeries,
    data: &InterpolationData,
    p: usize,
    q: usize,
    options: &FitOptions,
) -> Result<(RationalModel, SolveReport)> {
    let (matrix, rhs) = build_system(series, data, p, q, options.scaled_rows)?;
    let mut den = Vec::with_capacity(q + 1);
    den.push(Complex64::new(1.0, 0.0));
    let report = if q == 0 {
        SolveReport {
            solution: Vec::new(),
            rank: 0,
            condition: 1.0,
            residual_norm: rhs.iter().map(|r| r.norm_sqr()).sum::<f64>().sqrt(),
            singular_values: Vec::new(),
        }
    } else {
        linsolve::pinv_solve(&matrix, &rhs, options.rcond_for(data.len(), q))?
    };
    den.extend_from_slice(&report.solution);
    if den.iter().any(|b| !b.re.is_finite() || !b.im.is_finite()) {
        return Err(Error::DegenerateDenominator);
    }
    let num = numerator_from_denominator(series, &den, p);
    Ok((RationalModel::new(num, den)?, report))
}

/// Partial Padé-type rational interpolant `R_k Z / P` with prescribed zeros
/// and poles.
pub fn fit_partial(
    series: &PowerSeries,
    data: &InterpolationData,
    k: usize,
    zeros: &[Complex64],
    poles: &[Complex64],
) -> Result<RationalModel> {
    fit_partial_with(series, data, k, k, zeros, poles, &FitOptions::default()).map(|(m, _)| m)
}

pub fn fit_partial_with(
    series: &PowerSeries,
    data: &InterpolationData,
    p: usize,
    q: usize,
    zeros: &[Complex64],
    poles: &[Complex64],
    options: &FitOptions,
) -> Result<(RationalModel, SolveReport)> {
    let transformed = transform_values(data.nodes(), data.values(), zeros, poles)?;
    let data = InterpolationData::new(data.nodes().to_vec(), transformed)?;
    let series = series.with_factors(zeros, poles)?;
    let (mut model, report) = fit_with(&series, &data, p, q, options)?;
    model.prescribed_zeros = zeros.to_vec();
    model.prescribed_poles = poles.to_vec();
    Ok((model, report))
}

/// `f_i P(tau_i) / Z(tau_i)`.
pub(crate) fn transform_values(
    nodes: &[Complex64],
    values: &[Complex64],
    zeros: &[Complex64],
    poles: &[Complex64],
) -> Result<Vec<Complex64>> {
    if zeros.iter().chain(poles).any(|z| z.norm() == 0.0) {
        return Err(Error::ZeroShift);
    }
    nodes
        .iter()
        .zip(values)
        .enumerate()
        .map(|(i, (&tau, &f))| {
            let mut v = f;
            for &z in zeros {
                let d = tau - z;
                if d.norm() <= 4.0 * f64::EPSILON * tau.norm().max(z.norm()) {
                    return Err(Error::PrescribedFactorAtNode(i));
                }
                v /= d;
            }
            for &p in poles {
                let d = tau - p;
                if d.norm() <= 4.0 * f64::EPSILON * tau.norm().max(p.norm()) {
                    return Err(Error::PrescribedFactorAtNode(i));
                }
                v *= d;
            }
            Ok(v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn geometric(len: usize) -> PowerSeries {
        PowerSeries::from_real(&vec![1.0; len]).unwrap()
    }

    #[test]
    fn single_row_system_by_hand() {
        let data = InterpolationData::from_real(&[0.5], &[2.0]).unwrap();
        let (m, rhs) = build_system(&geometric(4), &data, 1, 1, false).unwrap();
        // 0.5 (S_0 - 2) b_1 = -(S_1 - 2) with S_0 = 1, S_1 = 1.5
        assert!((m[(0, 0)] - c(-0.5)).norm() < 1e-15);
        assert!((rhs[0] - c(0.5)).norm() < 1e-15);
        let (scaled, srhs) = build_system(&geometric(4), &data, 1, 1, true).unwrap();
        assert!((scaled[(0, 0)] - c(-1.0)).norm() < 1e-15);
        assert!((srhs[0] - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn recovers_geometric_series() {
        let data = InterpolationData::from_real(&[0.5], &[2.0]).unwrap();
        for opts in [FitOptions::default(), FitOptions::unscaled()] {
            let (model, report) = fit_with(&geometric(4), &data, 1, 1, &opts).unwrap();
            assert!((model.num[0] - c(1.0)).norm() < 1e-14);
            assert!(model.num[1].norm() < 1e-14);
            assert!((model.den[1] - c(-1.0)).norm() < 1e-14);
            assert_eq!(report.rank, 1);
            assert!((model.eval_real(0.5) - c(2.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn partial_sum_data_gives_partial_sum() {
        // values from S_p itself force b = (1, 0, ..., 0)
        let s = PowerSeries::from_real(&[1.0, -2.0, 0.5, 3.0]).unwrap();
        let nodes = [0.3, -0.7, 1.1];
        let values: Vec<f64> = nodes.iter().map(|&t| s.partial_sum(3, c(t)).re).collect();
        let data = InterpolationData::from_real(&nodes, &values).unwrap();
        let model = fit(&s, &data, 3, 3).unwrap();
        for (a, cc) in model.num.iter().zip(s.coeffs()) {
            assert!((a - cc).norm() < 1e-12);
        }
        assert!(model.den[1..].iter().all(|b| b.norm() < 1e-12));
    }

    #[test]
    fn errors() {
        assert_eq!(InterpolationData::from_real(&[0.0], &[1.0]), Err(Error::NodeAtOrigin));
        assert_eq!(InterpolationData::from_real(&[0.5, 0.5], &[1.0, 1.0]), Err(Error::DuplicateNodes(0, 1)));
        assert_eq!(InterpolationData::from_real(&[], &[]), Err(Error::EmptyData));
        assert!(matches!(
            InterpolationData::from_real(&[1.0], &[1.0, 2.0]),
            Err(Error::LengthMismatch { .. })
        ));
        let data = InterpolationData::from_real(&[0.5], &[2.0]).unwrap();
        assert!(matches!(fit(&geometric(2), &data, 3, 1), Err(Error::SeriesTooShort { .. })));
        assert_eq!(fit_partial(&geometric(4), &data, 1, &[c(0.5)], &[]), Err(Error::PrescribedFactorAtNode(0)));
        assert_eq!(fit_partial(&geometric(4), &data, 1, &[], &[c(0.0)]), Err(Error::ZeroShift));
    }

    #[test]
    fn q_zero_is_padded_taylor_polynomial() {
        let s = PowerSeries::from_real(&[1.0, 1.0, 0.5]).unwrap();
        let data = InterpolationData::from_real(&[0.4], &[1.0]).unwrap();
        let model = fit(&s, &data, 2, 0).unwrap();
        assert_eq!(model.den, [c(1.0)]);
        assert_eq!(model.num, s.coeffs());
    }

    #[test]
    fn eval_pole_sentinel_and_limit() {
        let model = RationalModel::new(vec![c(1.0)], vec![c(1.0), c(-1.0)]).unwrap();
        assert!((model.eval_real(0.5) - c(2.0)).norm() < 1e-15);
        assert!(crate::is_pole(model.eval_real(1.0)));
        assert_eq!(model.limit_at_infinity(), c(0.0));
        let mut partial = model.clone();
        partial.prescribed_poles = vec![c(3.0)];
        assert!(crate::is_pole(partial.eval_real(3.0)));
    }

    #[test]
    fn poles_of_simple_denominators() {
        let model = RationalModel::new(vec![c(1.0)], vec![c(1.0), c(-1.0)]).unwrap();
        let poles = model.poles(1e-8).unwrap();
        assert_eq!(poles.len(), 1);
        assert!((poles[0].location - c(1.0)).norm() < 1e-14 && poles[0].real);

        let model = RationalModel::new(vec![c(1.0)], vec![c(1.0), c(0.0), c(1.0)]).unwrap();
        let mut poles = model.poles(1e-8).unwrap();
        poles.sort_by(|a, b| a.location.im.total_cmp(&b.location.im));
        assert!((poles[0].location - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((poles[1].location - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        assert!(poles.iter().all(|p| !p.real));
    }

    #[test]
    fn prescribed_pole_fixture() {
        // f = 1 / ((1 - t)(t - 2)): the core fit sees f (t - 2) = 1/(1 - t)
        let f = |t: Complex64| 1.0 / ((1.0 - t) * (t - 2.0));
        let series = PowerSeries::new(
            series::taylor_of_rational(&[c(1.0)], &poly::mul(&[c(1.0), c(-1.0)], &[c(-2.0), c(1.0)]), 8).unwrap(),
        )
        .unwrap();
        let data = InterpolationData::sample(vec![c(0.5)], f).unwrap();
        let model = fit_partial(&series, &data, 1, &[], &[c(2.0)]).unwrap();
        assert!((model.num[0] - c(1.0)).norm() < 1e-12);
        assert!(model.num[1].norm() < 1e-12);
        assert!((model.den[1] - c(-1.0)).norm() < 1e-12);
        for t in [0.5, -0.3, 1.7, 4.0] {
            assert!((model.eval_real(t) - f(c(t))).norm() < 1e-10 * (1.0 + f(c(t)).norm()));
        }
        assert!(crate::is_pole(model.eval_real(2.0)));
    }

    #[test]
    fn partial_with_no_factors_is_plain_fit() {
        let s = PowerSeries::from_real(&[1.0, 0.5, -0.25, 0.125, 0.3]).unwrap();
        let data = InterpolationData::from_real(&[0.3, -0.6], &[1.2, 0.8]).unwrap();
        assert_eq!(fit(&s, &data, 2, 2).unwrap(), fit_partial(&s, &data, 2, &[], &[]).unwrap());
    }
}
