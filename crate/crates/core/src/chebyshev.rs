//! Padé-type interpolants for Chebyshev series
//!
//! ```text
//! f = c_0/2 + sum c_i T_i,    R = (h_0/2 + sum h_i T_i) / (e_0/2 + sum e_i T_i).
//! ```
//!
//! For any denominator `e`, the numerator given by the product rule
//! `T_i T_j = (T_{i+j} + T_{|i-j|}) / 2` makes the first `k + 1` Chebyshev
//! coefficients of `f D - N` vanish. The denominator is then fixed by
//! interpolation with `e_0 = 1`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linsolve::{self, SolveReport};
use crate::rational::{validate_nodes, FitOptions};
use crate::{pole_sentinel, Error, Result, POLE_UNDERFLOW};

#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevModel {
    pub h: Vec<Complex64>,
    pub e: Vec<Complex64>,
    pub series: Vec<Complex64>,
}

impl ChebyshevModel {
    pub fn eval(&self, t: Complex64) -> Complex64 {
        let num = cheb_eval(&self.h, t);
        let den = cheb_eval(&self.e, t);
        if den.norm() < POLE_UNDERFLOW {
            return pole_sentinel(num);
        }
        num / den
    }

    pub fn eval_real(&self, t: f64) -> Complex64 {
        self.eval(Complex64::new(t, 0.0))
    }

    pub fn degree(&self) -> usize {
        self.e.len() - 1
    }
}

/// `c_0/2 + c_1 T_1(t) + ... + c_n T_n(t)` by Clenshaw's recurrence.
pub fn cheb_eval(coeffs: &[Complex64], t: Complex64) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    let Some((&c0, rest)) = coeffs.split_first() else {
        return zero;
    };
    let (mut b1, mut b2) = (zero, zero);
    for &c in rest.iter().rev() {
        let b = 2.0 * t * b1 - b2 + c;
        b2 = b1;
        b1 = b;
    }
    c0 / 2.0 + t * b1 - b2
}

/// `T_0(t), ..., T_n(t)`.
pub fn cheb_basis(n: usize, t: Complex64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Complex64::new(1.0, 0.0));
    if n >= 1 {
        out.push(t);
    }
    for i in 2..=n {
        let next = 2.0 * t * out[i - 1] - out[i - 2];
        out.push(next);
    }
    out
}

fn coeff(series: &[Complex64], i: usize) -> Complex64 {
    series.get(i).copied().unwrap_or_default()
}

/// Numerator coefficients `h_0..h_k` for denominator `e_0..e_k`.
pub fn numerator_from_denominator(series: &[Complex64], e: &[Complex64]) -> Vec<Complex64> {
    let k = e.len().saturating_sub(1);
    if e.is_empty() {
        return Vec::new();
    }
    let mut h = Vec::with_capacity(k + 1);
    h.push(coeff(series, 0) * e[0] / 2.0 + (1..=k).map(|i| coeff(series, i) * e[i]).sum::<Complex64>());
    for n in 1..=k {
        let mut acc = coeff(series, n) * e[0];
        for (j, &ej) in e.iter().enumerate().skip(1) {
            acc += (coeff(series, n.abs_diff(j)) + coeff(series, n + j)) * ej;
        }
        h.push(acc / 2.0);
    }
    h
}

/// Interpolating Chebyshev-Padé-type model of degree `k`.
pub fn fit_cheb(series: &[Complex64], nodes: &[Complex64], values: &[Complex64], k: usize) -> Result<ChebyshevModel> {
    fit_cheb_with(series, nodes, values, k, &FitOptions::default()).map(|(m, _)| m)
}

/// As [`fit_cheb`], returning the solve report. Only `rcond` is read from the
/// options.
pub fn fit_cheb_with(
    series: &[Complex64],
    nodes: &[Complex64],
    values: &[Complex64],
    k: usize,
    options: &FitOptions,
) -> Result<(ChebyshevModel, SolveReport)> {
    if series.is_empty() {
        return Err(Error::SeriesTooShort { have: 0, need: 1 });
    }
    if nodes.len() != values.len() {
        return Err(Error::LengthMismatch { nodes: nodes.len(), values: values.len() });
    }
    if nodes.is_empty() {
        return Err(Error::EmptyData);
    }
    validate_nodes(nodes, false)?;
    if series.iter().chain(values).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidArgument("coefficients and values must be finite"));
    }

    let mut e = vec![Complex64::new(1.0, 0.0)];
    let report = if k == 0 {
        SolveReport { solution: Vec::new(), rank: 0, condition: 1.0, residual_norm: 0.0, singular_values: Vec::new() }
    } else {
        let l = nodes.len();
        let mut entries = Vec::with_capacity(l * k);
        let mut rhs = Vec::with_capacity(l);
        for (&tau, &f) in nodes.iter().zip(values) {
            let t = cheb_basis(k, tau);
            for j in 1..=k {
                let mut m = coeff(series, j) - 2.0 * f * t[j];
                for (n, &tn) in t.iter().enumerate().skip(1) {
                    m += (coeff(series, n.abs_diff(j)) + coeff(series, n + j)) * tn;
                }
                entries.push(m);
            }
            let s: Complex64 = coeff(series, 0) / 2.0 + (1..=k).map(|n| coeff(series, n) * t[n]).sum::<Complex64>();
            rhs.push(-(s - f));
        }
        let matrix = linsolve::matrix_from_rows(l, k, &entries);
        linsolve::pinv_solve(&matrix, &rhs, options.rcond_for(l, k))?
    };
    e.extend_from_slice(&report.solution);
    let h = numerator_from_denominator(series, &e);
    Ok((ChebyshevModel { h, e, series: series.to_vec() }, report))
}
