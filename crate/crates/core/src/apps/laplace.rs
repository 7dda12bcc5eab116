//! Inverse Laplace transforms of strictly proper rational functions by the
//! Longman-Sharir recursion, and the change of variables that turns a fitted
//! interpolant in `t` into such a function of `p`.
//!
//! For
//!
//! ```text
//! F(p) = A (p^m + alpha_1 p^{m-1} + ... + alpha_m) / (p^n + beta_1 p^{n-1} + ... + beta_n)
//! ```
//!
//! the inverse is `f(s) = A sum_i v_i s^i / i!` with
//!
//! ```text
//! u_i = 0 (i < n-1),  u_{n-1} = 1,  u_i = -(beta_1 u_{i-1} + ... + beta_n u_{i-n}),
//! v_i = u_{i+m} + alpha_1 u_{i+m-1} + ... + alpha_m u_i.
//! ```

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::poly;
use crate::rational::RationalModel;
use crate::series::PowerSeries;
use crate::{Error, Result};

/// Default number of series terms.
pub const DEFAULT_TERMS: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceRational {
    pub scale: Complex64,
    /// `alpha_1..alpha_m`.
    pub alpha: Vec<Complex64>,
    /// `beta_1..beta_n`.
    pub beta: Vec<Complex64>,
}

impl LaplaceRational {
    pub fn new(scale: Complex64, alpha: Vec<Complex64>, beta: Vec<Complex64>) -> Result<Self> {
        if alpha.len() >= beta.len() {
            return Err(Error::DegreeViolation { m: alpha.len(), n: beta.len() });
        }
        Ok(Self { scale, alpha, beta })
    }

    pub fn m(&self) -> usize {
        self.alpha.len()
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    /// `F(p)`.
    pub fn eval(&self, p: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let num = self.alpha.iter().fold(one, |acc, &a| acc * p + a);
        let den = self.beta.iter().fold(one, |acc, &b| acc * p + b);
        self.scale * num / den
    }
}

/// Taylor coefficients `A v_i / i!`, `i = 0..n_terms`, of the inverse
/// transform.
pub fn longman_sharir_invert(f: &LaplaceRational, n_terms: usize) -> Result<PowerSeries> {
    let (m, n) = (f.m(), f.n());
    if m >= n {
        return Err(Error::DegreeViolation { m, n });
    }
    if n_terms == 0 {
        return Err(Error::InvalidArgument("n_terms must be at least 1"));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut u = vec![zero; n_terms + m];
    for i in n - 1..u.len() {
        u[i] = if i == n - 1 {
            Complex64::new(1.0, 0.0)
        } else {
            -(1..=n).filter(|&j| j <= i).map(|j| f.beta[j - 1] * u[i - j]).sum::<Complex64>()
        };
    }
    let mut inv_fact = 1.0;
    let coeffs = (0..n_terms)
        .map(|i| {
            if i > 0 {
                inv_fact /= i as f64;
            }
            let v = u[i + m] + (1..=m).map(|j| f.alpha[j - 1] * u[i + m - j]).sum::<Complex64>();
            f.scale * v * inv_fact
        })
        .collect();
    PowerSeries::new(coeffs)
}

/// Sums `sum_i c_i s^i`, stopping once two consecutive terms fall below
/// `1e-16` times the partial sum.
pub fn eval_inverse(coeffs: &[Complex64], s: f64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = 1.0;
    let mut small = 0;
    for &c in coeffs {
        let term = c * power;
        sum += term;
        if term.norm() < 1e-16 * sum.norm() {
            small += 1;
            if small == 2 {
                break;
            }
        } else {
            small = 0;
        }
        power *= s;
    }
    sum
}

/// Change of variables between the interpolation variable `t` and the
/// transform variable `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VariableMap {
    /// `t = a^2 / p^2`.
    InverseSquare { a: f64 },
    /// `t = a / p`.
    Inverse { a: f64 },
}

impl VariableMap {
    fn exponent_and_unit(self) -> (usize, f64) {
        match self {
            Self::InverseSquare { a } => (2, a * a),
            Self::Inverse { a } => (1, a),
        }
    }

    /// `t` as a function of `p`.
    pub fn t_of_p(self, p: Complex64) -> Complex64 {
        let (s, u) = self.exponent_and_unit();
        u / p.powi(s as i32)
    }
}

/// Rewrites `R(t(p))` as a normalized rational function of `p`.
///
/// Fails with [`Error::NonDecaying`] unless `R(0) = 0`, since the transform
/// must vanish as `p -> inf`.
pub fn laplace_from_interpolant(model: &RationalModel, map: VariableMap) -> Result<LaplaceRational> {
    let (s, unit) = map.exponent_and_unit();
    if !(unit.is_finite() && unit != 0.0) {
        return Err(Error::InvalidArgument("map parameter must be finite and nonzero"));
    }
    let num = model.full_numerator();
    let num = poly::trim(&num, 0.0);
    let den = model.full_denominator();
    let den = poly::trim(&den, 0.0);
    let scale = num.iter().map(|a| a.norm()).fold(0.0, f64::max);
    if num.is_empty() || scale == 0.0 {
        return Err(Error::InvalidArgument("interpolant is identically zero"));
    }
    if num[0].norm() > 1e-12 * scale {
        return Err(Error::NonDecaying(num[0].norm()));
    }
    let b0 = den.first().copied().unwrap_or_default();
    if b0.norm() == 0.0 {
        return Err(Error::SingularAtOrigin);
    }
    let i0 = (1..num.len()).find(|&i| num[i].norm() != 0.0).ok_or(Error::InvalidArgument("interpolant is identically zero"))?;
    let d = (num.len() - 1).max(den.len() - 1);
    let n = s * d;
    let m = s * (d - i0);
    let zero = Complex64::new(0.0, 0.0);

    let mut beta = vec![zero; n];
    for (i, &b) in den.iter().enumerate().skip(1) {
        beta[s * i - 1] = b * unit.powi(i as i32) / b0;
    }
    let mut alpha = vec![zero; m];
    for (i, &a) in num.iter().enumerate().skip(i0 + 1) {
        alpha[s * (i - i0) - 1] = a * unit.powi((i - i0) as i32) / num[i0];
    }
    let a_scale = num[i0] * unit.powi(i0 as i32) / b0;
    LaplaceRational::new(a_scale, alpha, beta)
}

/// Inverse transform of `R(t(p))` as a truncated Taylor series in `s`.
pub fn invert_from_interpolant(model: &RationalModel, map: VariableMap, n_terms: usize) -> Result<PowerSeries> {
    longman_sharir_invert(&laplace_from_interpolant(model, map)?, n_terms)
}
