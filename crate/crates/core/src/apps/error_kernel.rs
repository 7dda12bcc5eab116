//! Error-kernel diagnostic.
//!
//! With `n` leading Taylor coefficients matched at the origin and `nu` real
//! nodes, the error of a Padé-type interpolant can be written
//!
//! ```text
//! f(t) - R(t) = t^n prod (t - tau_i) / ((n + nu)! D(t) Q(t)) * g(t)
//! ```
//!
//! where `Q = phi psi` has degree `n - 1`, `phi` carries the known poles of
//! `f` and `g` involves a derivative of `f D Q` at an unknown point. This
//! module computes the kernel and `g` on a grid; `g` should stay bounded.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::barycentric::{self, WeightKind};
use crate::polecontrol::Interpolant;
use crate::poly;
use crate::series::{self, PowerSeries};
use crate::{Error, Result};

/// `Q = phi psi`: known real poles of `f` with multiplicities, and an
/// optional padding polynomial (ascending coefficients).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QSpec {
    pub poles: Vec<(f64, usize)>,
    pub psi: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorKernelReport {
    pub grid: Vec<f64>,
    pub kernel: Vec<Complex64>,
    pub g_values: Vec<Complex64>,
    /// Grid points too close to a node, the origin or a root of `D Q`.
    pub excluded: Vec<bool>,
    /// Whether `f D - N` came from the series (true) or the samples.
    pub from_series: Vec<bool>,
    /// `Q` in ascending powers.
    pub q: Vec<Complex64>,
    /// Contact order `n`.
    pub order: usize,
}

impl ErrorKernelReport {
    /// `max |g|` over the grid points that are not excluded.
    pub fn max_abs_g(&self) -> f64 {
        self.g_values
            .iter()
            .zip(&self.excluded)
            .filter(|(_, &e)| !e)
            .map(|(g, _)| g.norm())
            .fold(0.0, f64::max)
    }
}

/// Kernel and `g` on `grid` for `model` fitted at real `nodes`.
///
/// `f_samples[i] = f(grid[i])`. Near the origin the defect `f D - N` is
/// summed from the series, which avoids the cancellation in `f - R`.
pub fn error_kernel(
    model: &Interpolant,
    nodes: &[f64],
    grid: &[f64],
    f_samples: &[Complex64],
    series: &PowerSeries,
    q_spec: Option<&QSpec>,
    interval: (f64, f64),
) -> Result<ErrorKernelReport> {
    if grid.len() != f_samples.len() {
        return Err(Error::LengthMismatch { nodes: grid.len(), values: f_samples.len() });
    }
    let (a, b) = interval;
    if !(a < b) {
        return Err(Error::InvalidArgument("interval needs a < b"));
    }
    let (num, den, order, known_poles) = match model {
        Interpolant::Rational(m) => {
            (m.full_numerator(), m.full_denominator(), m.num.len(), m.prescribed_poles.clone())
        }
        Interpolant::Barycentric(m) => {
            if m.kind == WeightKind::Shepard {
                return Err(Error::InvalidArgument("Shepard weights depend on t"));
            }
            let num = poly::mul(&m.numerator_poly()?, &poly::from_roots(&m.prescribed_zeros));
            let den = poly::mul(&m.denominator_poly()?, &poly::from_roots(&m.prescribed_poles));
            (num, den, barycentric::contact_order(series.len(), m.degree()), m.prescribed_poles.clone())
        }
    };
    if order == 0 {
        return Err(Error::InvalidArgument("contact order must be positive"));
    }

    let q = build_q(q_spec, &den, &known_poles, order, model, interval)?;
    let nu = nodes.len();
    let factorial = (1..=order + nu).fold(1.0, |acc, i| acc * i as f64);

    // defect f D - N from the series, with the matched orders removed
    let len = series.len().max(num.len());
    let mut defect = series::convolve(series.coeffs(), &den, len);
    for (d, &a) in defect.iter_mut().zip(&num) {
        *d -= a;
    }
    for d in defect.iter_mut().take(order) {
        *d = Complex64::new(0.0, 0.0);
    }
    let tail = &defect[order.min(defect.len())..];

    let radius = 1e-2 * (b - a);
    let mut singular: Vec<f64> = nodes.to_vec();
    singular.push(0.0);
    for roots in [poly::roots(&den), poly::roots(&q)].into_iter().flatten() {
        singular.extend(roots.iter().filter(|r| r.im.abs() <= radius).map(|r| r.re));
    }

    let mut report = ErrorKernelReport {
        grid: grid.to_vec(),
        kernel: Vec::with_capacity(grid.len()),
        g_values: Vec::with_capacity(grid.len()),
        excluded: Vec::with_capacity(grid.len()),
        from_series: Vec::with_capacity(grid.len()),
        q: q.clone(),
        order,
    };
    for (&t, &f) in grid.iter().zip(f_samples) {
        let tc = Complex64::new(t, 0.0);
        let nodal: f64 = nodes.iter().map(|&x| t - x).product();
        let d_t = poly::horner(&den, tc);
        let q_t = poly::horner(&q, tc);
        let kernel = Complex64::new(t.powi(order as i32) * nodal, 0.0) / (factorial * d_t * q_t);

        let (defect_over_tn, converged) = series_defect(tail, t);
        let defect_over_tn = if converged {
            defect_over_tn
        } else {
            (f * d_t - poly::horner(&num, tc)) / t.powi(order as i32)
        };
        let g = defect_over_tn * factorial * q_t / nodal;

        report.kernel.push(kernel);
        report.g_values.push(g);
        report.excluded.push(singular.iter().any(|&s| (t - s).abs() <= radius));
        report.from_series.push(converged);
    }
    Ok(report)
}

/// `sum_j tail_j t^j` and whether its last two terms are negligible.
fn series_defect(tail: &[Complex64], t: f64) -> (Complex64, bool) {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = 1.0;
    let mut last = [0.0f64; 2];
    for &d in tail {
        let term = d * power;
        sum += term;
        last = [last[1], term.norm()];
        power *= t;
    }
    let converged = !(power.is_infinite()) && last[0] + last[1] <= 1e-16 * sum.norm().max(f64::MIN_POSITIVE);
    (sum, converged || tail.iter().all(|d| d.norm() == 0.0))
}

fn build_q(
    spec: Option<&QSpec>,
    den: &[Complex64],
    known_poles: &[Complex64],
    order: usize,
    model: &Interpolant,
    (a, b): (f64, f64),
) -> Result<Vec<Complex64>> {
    let expected = order - 1;
    let (phi, psi) = match spec {
        Some(spec) => {
            let roots: Vec<Complex64> = spec
                .poles
                .iter()
                .flat_map(|&(p, mult)| core::iter::repeat(Complex64::new(p, 0.0)).take(mult))
                .collect();
            let phi = poly::from_roots(&roots);
            let psi = match &spec.psi {
                Some(c) => c.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
                None => padding(expected.checked_sub(roots.len()).ok_or(Error::DegreeMismatch {
                    got: roots.len(),
                    expected,
                })?, a, b),
            };
            (phi, psi)
        }
        None => {
            if known_poles.is_empty() && matches!(model, Interpolant::Rational(_)) && den.len() == order {
                return Ok(den.to_vec());
            }
            let phi = poly::from_roots(known_poles);
            let need = expected.checked_sub(known_poles.len()).ok_or(Error::DegreeMismatch {
                got: known_poles.len(),
                expected,
            })?;
            (phi, padding(need, a, b))
        }
    };
    let q = poly::mul(&phi, &psi);
    if q.len() != expected + 1 {
        return Err(Error::DegreeMismatch { got: q.len().saturating_sub(1), expected });
    }
    Ok(q)
}

/// `T_d` on `[a, b]` in ascending powers of `t`.
fn padding(d: usize, a: f64, b: f64) -> Vec<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    // x = (2t - a - b) / (b - a)
    let x = [Complex64::new(-(a + b) / (b - a), 0.0), Complex64::new(2.0 / (b - a), 0.0)];
    let mut prev = vec![one];
    if d == 0 {
        return prev;
    }
    let mut cur = x.to_vec();
    for _ in 1..d {
        let mut next = poly::mul(&x, &cur);
        for c in next.iter_mut() {
            *c *= 2.0;
        }
        for (n, p) in next.iter_mut().zip(&prev) {
            *n -= p;
        }
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{self, InterpolationData};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn exp_series(len: usize) -> PowerSeries {
        let mut out = Vec::with_capacity(len);
        let mut fact = 1.0;
        for i in 0..len {
            if i > 0 {
                fact *= i as f64;
            }
            out.push(1.0 / fact);
        }
        PowerSeries::from_real(&out).unwrap()
    }

    #[test]
    fn padding_is_chebyshev_on_interval() {
        let p = padding(3, -1.0, 1.0);
        assert_eq!(p, [c(0.0), c(-3.0), c(0.0), c(4.0)]);
        let p = padding(2, 0.0, 2.0);
        // T_2(t - 1) = 2(t-1)^2 - 1
        assert_eq!(p, [c(1.0), c(-4.0), c(2.0)]);
    }

    #[test]
    fn exact_recovery_gives_zero_g() {
        // f = 1/(1 - t) is recovered exactly with k = 1
        let series = PowerSeries::from_real(&[1.0; 20]).unwrap();
        let data = InterpolationData::from_real(&[0.5], &[2.0]).unwrap();
        let model = Interpolant::Rational(rational::fit(&series, &data, 1, 1).unwrap());
        let grid: Vec<f64> = (0..41).map(|i| -0.9 + 0.04 * i as f64).collect();
        let f: Vec<Complex64> = grid.iter().map(|t| c(1.0 / (1.0 - t))).collect();
        let r = error_kernel(&model, &[0.5], &grid, &f, &series, None, (-1.0, 1.0)).unwrap();
        assert!(r.max_abs_g() < 1e-10, "{}", r.max_abs_g());
    }

    #[test]
    fn sign_of_error_matches_kernel_times_g() {
        let series = exp_series(30);
        let nodes = [0.1, 0.33333333333333337, 0.5666666666666667, 0.8];
        let data = InterpolationData::new(nodes.iter().map(|&t| c(t)).collect(), nodes.iter().map(|&t| c(t.exp())).collect()).unwrap();
        let model = rational::fit(&series, &data, 4, 4).unwrap();
        let grid: Vec<f64> = (0..201).map(|i| -1.0 + 0.01 * i as f64).collect();
        let f: Vec<Complex64> = grid.iter().map(|t| c(t.exp())).collect();
        let im = Interpolant::Rational(model.clone());
        let r = error_kernel(&im, &nodes, &grid, &f, &series, None, (-1.0, 1.0)).unwrap();
        assert_eq!(r.q, model.den);
        for i in 0..grid.len() {
            if r.excluded[i] {
                continue;
            }
            let err = f[i] - model.eval_real(grid[i]);
            let rebuilt = r.kernel[i] * r.g_values[i];
            if err.norm() > 1e-12 {
                assert_eq!(err.re.signum(), rebuilt.re.signum(), "t = {}", grid[i]);
            }
        }
        assert!(r.max_abs_g().is_finite());
    }

    #[test]
    fn q_degree_checked() {
        let series = exp_series(10);
        let data = InterpolationData::from_real(&[0.5], &[0.5f64.exp()]).unwrap();
        let model = Interpolant::Rational(rational::fit(&series, &data, 1, 1).unwrap());
        let bad = QSpec { poles: vec![], psi: Some(vec![1.0, 2.0, 3.0]) };
        let r = error_kernel(&model, &[0.5], &[0.2], &[c(0.2f64.exp())], &series, Some(&bad), (-1.0, 1.0));
        assert_eq!(r.unwrap_err(), Error::DegreeMismatch { got: 2, expected: 1 });
    }
}
