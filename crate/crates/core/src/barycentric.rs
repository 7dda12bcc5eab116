//! Barycentric rational interpolants
//!
//! ```text
//! R(t) = sum_i w_i f_i / (t - tau_i)  /  sum_i w_i / (t - tau_i)
//! ```
//!
//! interpolate at every node whatever the nonzero weights are. Expanding both
//! sums around the origin, `f - R = O(t^k)` holds when
//!
//! ```text
//! sum_i w_i (f_i - S_{j-1}(tau_i)) / tau_i^j = 0,    j = 1..k,
//! ```
//!
//! which with `w_0 = 1` fixes the remaining `k` weights. Extra equations
//! (`l > k` known coefficients) are handled in the least-squares sense; with
//! fewer coefficients the missing ones are taken as zero.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::linsolve::{self, Matrix, SolveReport};
use crate::poly;
use crate::rational::{transform_values, validate_nodes, FitOptions, Pole};
use crate::series::{self, PowerSeries};
use crate::{pole_sentinel, Error, Result, POLE_UNDERFLOW};

/// Default relative distance below which an evaluation point counts as a node.
pub const NODE_TOL: f64 = 1e-13;

/// Where the weights came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Fitted,
    /// `w_i = (-1)^i`.
    Berrut,
    /// `w_i = 1 / (t - tau_i)`, evaluation only.
    Shepard,
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricModel {
    pub nodes: Vec<Complex64>,
    /// Values of `f` at the nodes.
    pub values: Vec<Complex64>,
    /// `f_i P(tau_i) / Z(tau_i)`; equal to `values` without prescribed factors.
    pub core_values: Vec<Complex64>,
    pub weights: Vec<Complex64>,
    pub kind: WeightKind,
    pub prescribed_zeros: Vec<Complex64>,
    pub prescribed_poles: Vec<Complex64>,
}

impl BarycentricModel {
    /// Model with caller-supplied weights.
    pub fn with_weights(nodes: Vec<Complex64>, values: Vec<Complex64>, weights: Vec<Complex64>) -> Result<Self> {
        check_data(&nodes, &values)?;
        if weights.len() != nodes.len() {
            return Err(Error::LengthMismatch { nodes: nodes.len(), values: weights.len() });
        }
        Ok(Self {
            core_values: values.clone(),
            nodes,
            values,
            weights,
            kind: WeightKind::Custom,
            prescribed_zeros: Vec::new(),
            prescribed_poles: Vec::new(),
        })
    }

    /// Number of nodes minus one.
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.eval_with_tol(t, NODE_TOL)
    }

    pub fn eval_real(&self, t: f64) -> Complex64 {
        self.eval(Complex64::new(t, 0.0))
    }

    pub fn eval_with_tol(&self, t: Complex64, node_tol: f64) -> Complex64 {
        for (tau, f) in self.nodes.iter().zip(&self.values) {
            if (t - tau).norm() <= node_tol * (1.0 + tau.norm()) {
                return *f;
            }
        }
        let zero = Complex64::new(0.0, 0.0);
        let (mut num, mut den) = (zero, zero);
        for ((&tau, &f), &w) in self.nodes.iter().zip(&self.core_values).zip(&self.weights) {
            let r = 1.0 / (t - tau);
            let kernel = if self.kind == WeightKind::Shepard { r * r } else { w * r };
            num += kernel * f;
            den += kernel;
        }
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

    /// `sum_i w_i prod_{j != i} (t - tau_j)`, the denominator as a polynomial
    /// of degree `<= k` (without the prescribed pole factor).
    pub fn denominator_poly(&self) -> Result<Vec<Complex64>> {
        self.lagrange_sum(|i| self.weights[i])
    }

    /// `sum_i w_i f_i prod_{j != i} (t - tau_j)` with the transformed values.
    pub fn numerator_poly(&self) -> Result<Vec<Complex64>> {
        self.lagrange_sum(|i| self.weights[i] * self.core_values[i])
    }

    fn lagrange_sum(&self, coef: impl Fn(usize) -> Complex64) -> Result<Vec<Complex64>> {
        if self.kind == WeightKind::Shepard {
            return Err(Error::InvalidArgument("Shepard weights depend on t"));
        }
        let n = self.nodes.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let others: Vec<Complex64> =
                self.nodes.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &t)| t).collect();
            let c = coef(i);
            for (o, b) in out.iter_mut().zip(poly::from_roots(&others)) {
                *o += c * b;
            }
        }
        Ok(out)
    }

    /// First `len` Taylor coefficients at the origin, from the expansions
    /// `1/(t - tau) = -(1/tau) sum_m (t/tau)^m`.
    pub fn taylor(&self, len: usize) -> Result<Vec<Complex64>> {
        if self.kind == WeightKind::Shepard {
            return Err(Error::InvalidArgument("Shepard weights depend on t"));
        }
        let mut num = vec![Complex64::new(0.0, 0.0); len];
        let mut den = vec![Complex64::new(0.0, 0.0); len];
        for ((&tau, &f), &w) in self.nodes.iter().zip(&self.core_values).zip(&self.weights) {
            let inv = 1.0 / tau;
            let mut term = -w * inv;
            for m in 0..len {
                num[m] += term * f;
                den[m] += term;
                term *= inv;
            }
        }
        let num = series::convolve(&num, &poly::from_roots(&self.prescribed_zeros), len);
        let den = series::convolve(&den, &poly::from_roots(&self.prescribed_poles), len);
        series::taylor_of_rational(&num, &den, len)
    }

    /// Denominator roots not cancelled by a numerator root, followed by the
    /// prescribed poles.
    pub fn poles(&self, real_tol: f64) -> Result<Vec<Pole>> {
        let den = self.denominator_poly()?;
        if poly::trim(&den, 1e-14).is_empty() {
            return Err(Error::DegenerateDenominator);
        }
        let mut roots = poly::roots(&den)?;
        let num = self.numerator_poly()?;
        if poly::trim(&num, 1e-14).is_empty() {
            // R vanishes identically, nothing is a pole
            roots.clear();
        } else {
            let mut num_roots = poly::roots(&num)?;
            roots.retain(|r| {
                let hit = num_roots.iter().position(|z| (r - z).norm() <= 1e-8 * r.norm().max(1.0));
                match hit {
                    Some(i) => {
                        num_roots.swap_remove(i);
                        false
                    }
                    None => true,
                }
            });
        }
        let mut out: Vec<Pole> = roots
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

fn check_data(nodes: &[Complex64], values: &[Complex64]) -> Result<()> {
    if nodes.len() != values.len() {
        return Err(Error::LengthMismatch { nodes: nodes.len(), values: values.len() });
    }
    if nodes.is_empty() {
        return Err(Error::EmptyData);
    }
    validate_nodes(nodes, false)
}

/// Order conditions with `w_0` moved to the right-hand side: a
/// `max(k, l) x k` matrix for `k + 1` nodes and `l` series coefficients.
pub fn build_system(series: &PowerSeries, nodes: &[Complex64], values: &[Complex64]) -> Result<(Matrix, Vec<Complex64>)> {
    check_data(nodes, values)?;
    validate_nodes(nodes, true)?;
    let k = nodes.len() - 1;
    let rows = k.max(series.len());
    let mut entries = Vec::with_capacity(rows * k);
    let mut rhs = Vec::with_capacity(rows);
    for j in 1..=rows {
        for (i, (&tau, &f)) in nodes.iter().zip(values).enumerate() {
            let m = (f - series.partial_sum(j as isize - 1, tau)) / tau.powi(j as i32);
            if i == 0 {
                rhs.push(-m);
            } else {
                entries.push(m);
            }
        }
    }
    Ok((linsolve::matrix_from_rows(rows, k, &entries), rhs))
}

/// Padé-type barycentric interpolant on `k + 1` nodes.
pub fn fit_weights(
    series: &PowerSeries,
    nodes: &[Complex64],
    values: &[Complex64],
    k: usize,
) -> Result<BarycentricModel> {
    fit_weights_with(series, nodes, values, k, &FitOptions::default()).map(|(m, _)| m)
}

/// As [`fit_weights`], returning the solve report. Row scaling does not apply
/// here; only `rcond` is read from the options.
pub fn fit_weights_with(
    series: &PowerSeries,
    nodes: &[Complex64],
    values: &[Complex64],
    k: usize,
    options: &FitOptions,
) -> Result<(BarycentricModel, SolveReport)> {
    if nodes.len() != k + 1 {
        return Err(Error::InvalidArgument("barycentric fit of degree k needs k + 1 nodes"));
    }
    let (matrix, rhs) = build_system(series, nodes, values)?;
    let mut weights = vec![Complex64::new(1.0, 0.0)];
    let report = if k == 0 {
        SolveReport {
            solution: Vec::new(),
            rank: 0,
            condition: 1.0,
            residual_norm: rhs.iter().map(|r| r.norm_sqr()).sum::<f64>().sqrt(),
            singular_values: Vec::new(),
        }
    } else {
        linsolve::pinv_solve(&matrix, &rhs, options.rcond_for(matrix.nrows(), k))?
    };
    weights.extend_from_slice(&report.solution);
    let model = BarycentricModel {
        nodes: nodes.to_vec(),
        values: values.to_vec(),
        core_values: values.to_vec(),
        weights,
        kind: WeightKind::Fitted,
        prescribed_zeros: Vec::new(),
        prescribed_poles: Vec::new(),
    };
    Ok((model, report))
}

/// Partial variant: fits on `f_i P(tau_i)/Z(tau_i)` and the series of
/// `f P / Z`, then multiplies `Z / P` back in at evaluation.
pub fn fit_weights_partial(
    series: &PowerSeries,
    nodes: &[Complex64],
    values: &[Complex64],
    k: usize,
    zeros: &[Complex64],
    poles: &[Complex64],
) -> Result<BarycentricModel> {
    fit_weights_partial_with(series, nodes, values, k, zeros, poles, &FitOptions::default()).map(|(m, _)| m)
}

pub fn fit_weights_partial_with(
    series: &PowerSeries,
    nodes: &[Complex64],
    values: &[Complex64],
    k: usize,
    zeros: &[Complex64],
    poles: &[Complex64],
    options: &FitOptions,
) -> Result<(BarycentricModel, SolveReport)> {
    check_data(nodes, values)?;
    let core = transform_values(nodes, values, zeros, poles)?;
    let series = series.with_factors(zeros, poles)?;
    let (mut model, report) = fit_weights_with(&series, nodes, &core, k, options)?;
    model.values = values.to_vec();
    model.prescribed_zeros = zeros.to_vec();
    model.prescribed_poles = poles.to_vec();
    Ok((model, report))
}

/// Berrut or Shepard weights.
pub fn preset_weights(nodes: &[Complex64], values: &[Complex64], kind: WeightKind) -> Result<BarycentricModel> {
    check_data(nodes, values)?;
    let one = Complex64::new(1.0, 0.0);
    let weights = match kind {
        WeightKind::Berrut => (0..nodes.len()).map(|i| if i % 2 == 0 { one } else { -one }).collect(),
        WeightKind::Shepard => vec![one; nodes.len()],
        _ => return Err(Error::InvalidArgument("preset weights are Berrut or Shepard")),
    };
    Ok(BarycentricModel {
        nodes: nodes.to_vec(),
        values: values.to_vec(),
        core_values: values.to_vec(),
        weights,
        kind,
        prescribed_zeros: Vec::new(),
        prescribed_poles: Vec::new(),
    })
}

/// Number of leading Taylor coefficients a fit guarantees: `min(l, k)`.
pub fn contact_order(series_len: usize, k: usize) -> usize {
    series_len.min(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn geometric(len: usize) -> PowerSeries {
        PowerSeries::from_real(&vec![1.0; len]).unwrap()
    }

    #[test]
    fn hand_fit_of_geometric_series() {
        let nodes = [c(0.5), c(-1.0)];
        let values = [c(2.0), c(0.5)];
        let model = fit_weights(&geometric(1), &nodes, &values, 1).unwrap();
        assert!((model.weights[1] - c(-4.0)).norm() < 1e-14);
        for t in [0.0, 0.3, -2.0, 3.5] {
            assert!((model.eval_real(t) - c(1.0 / (1.0 - t))).norm() < 1e-13);
        }
        let poles = model.poles(1e-8).unwrap();
        assert_eq!(poles.len(), 1);
        assert!((poles[0].location - c(1.0)).norm() < 1e-12);
        assert!(crate::is_pole(model.eval_real(1.0)) || model.eval_real(1.0).norm() > 1e12);
    }

    #[test]
    fn constant_data_gives_constant() {
        let nodes = [c(0.5), c(-1.0), c(2.0)];
        let values = [c(3.0); 3];
        let model = fit_weights(&PowerSeries::from_real(&[3.0, 0.0, 0.0]).unwrap(), &nodes, &values, 2).unwrap();
        assert_eq!(model.weights, [c(1.0), c(0.0), c(0.0)]);
        assert!((model.eval_real(0.7) - c(3.0)).norm() < 1e-14);
        assert!(model.poles(1e-8).unwrap().is_empty());
    }

    #[test]
    fn presets() {
        let nodes = [c(-1.0), c(0.5), c(2.0)];
        let values = [c(1.0), c(-2.0), c(4.0)];
        let berrut = preset_weights(&nodes, &values, WeightKind::Berrut).unwrap();
        assert_eq!(berrut.weights, [c(1.0), c(-1.0), c(1.0)]);
        for (t, f) in nodes.iter().zip(&values) {
            assert_eq!(berrut.eval(*t), *f);
        }
        let shepard = preset_weights(&nodes, &[c(7.0); 3], WeightKind::Shepard).unwrap();
        for t in [-3.0, 0.1, 1.0, 9.0] {
            assert!((shepard.eval_real(t) - c(7.0)).norm() < 1e-13);
        }
        assert!(shepard.poles(1e-8).is_err());
        assert!(shepard.taylor(3).is_err());
    }

    #[test]
    fn node_branch_returns_original_value() {
        let nodes = [c(0.5), c(-1.0)];
        let values = [c(2.0), c(0.5)];
        let model = fit_weights_partial(&geometric(4), &nodes, &values, 1, &[], &[c(3.0)]).unwrap();
        assert_eq!(model.eval(nodes[1]), values[1]);
        assert!(crate::is_pole(model.eval_real(3.0)));
    }

    #[test]
    fn partial_with_simple_pole_factor() {
        // f = 1 / ((1 - t)(t - 2)); the core sees 1/(1 - t)
        let f = |t: f64| 1.0 / ((1.0 - t) * (t - 2.0));
        let s = series::taylor_of_rational(&[c(1.0)], &poly::mul(&[c(1.0), c(-1.0)], &[c(-2.0), c(1.0)]), 6).unwrap();
        let s = PowerSeries::new(s).unwrap();
        let nodes = [c(0.5), c(-1.0)];
        let values: Vec<Complex64> = nodes.iter().map(|t| c(f(t.re))).collect();
        let model = fit_weights_partial(&s, &nodes, &values, 1, &[], &[c(2.0)]).unwrap();
        for t in [-0.7, 0.25, 1.5, 5.0] {
            assert!((model.eval_real(t) - c(f(t))).norm() < 1e-9 * (1.0 + f(t).abs()));
        }
        let poles = model.poles(1e-8).unwrap();
        assert_eq!(poles.len(), 2);
        assert!(poles.iter().any(|p| p.prescribed && p.location == c(2.0)));
    }

    #[test]
    fn empty_factors_match_plain_fit() {
        let s = PowerSeries::from_real(&[1.0, -0.5, 1.0 / 3.0, -0.25]).unwrap();
        let nodes = [c(0.3), c(-0.4), c(0.9), c(1.7)];
        let values: Vec<Complex64> = nodes.iter().map(|t| c((1.0 + t.re).ln() / t.re)).collect();
        assert_eq!(
            fit_weights(&s, &nodes, &values, 3).unwrap(),
            fit_weights_partial(&s, &nodes, &values, 3, &[], &[]).unwrap()
        );
    }

    #[test]
    fn rejects_bad_input() {
        let s = geometric(3);
        assert_eq!(fit_weights(&s, &[c(0.0), c(1.0)], &[c(1.0), c(1.0)], 1), Err(Error::NodeAtOrigin));
        assert_eq!(fit_weights(&s, &[c(1.0), c(1.0)], &[c(1.0), c(1.0)], 1), Err(Error::DuplicateNodes(0, 1)));
        assert!(fit_weights(&s, &[c(1.0)], &[c(1.0)], 1).is_err());
    }
}
