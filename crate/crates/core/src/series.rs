//! Truncated formal power series.
//!
//! Every series carries an explicit length; coefficients beyond it are taken
//! as zero, never extrapolated.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, Result};

/// Coefficients `c_0, c_1, ..., c_L` of a formal expansion at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("power series needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidArgument("power series coefficients must be finite"));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `c_i`, with zero for indices outside the stored range.
    pub fn coeff(&self, i: isize) -> Complex64 {
        if i < 0 {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs.get(i as usize).copied().unwrap_or_default()
    }

    /// Keeps the first `len` coefficients, zero-padding if needed.
    pub fn truncated(&self, len: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len.max(1), Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    pub fn partial_sum(&self, n: isize, t: Complex64) -> Complex64 {
        partial_sum(&self.coeffs, n, t)
    }

    pub fn divide_linear(&self, z: Complex64) -> Result<Self> {
        divide_linear(&self.coeffs, z).map(|coeffs| Self { coeffs })
    }

    pub fn multiply_linear(&self, p: Complex64) -> Self {
        Self { coeffs: multiply_linear(&self.coeffs, p) }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        reciprocal(&self.coeffs).map(|coeffs| Self { coeffs })
    }

    /// Series of `f(t) P(t) / Z(t)` with `P = prod (t - poles_j)` and
    /// `Z = prod (t - zeros_j)`, one linear factor at a time.
    ///
    /// The length is preserved: divisions keep it and the trailing coefficient
    /// produced by each multiplication is dropped, since it depends on
    /// coefficients of `f` that are not known.
    pub fn with_factors(&self, zeros: &[Complex64], poles: &[Complex64]) -> Result<Self> {
        let mut out = self.coeffs.clone();
        for &z in zeros {
            out = divide_linear(&out, z)?;
        }
        let len = out.len();
        for &p in poles {
            out = multiply_linear(&out, p);
            out.truncate(len);
        }
        Ok(Self { coeffs: out })
    }
}

/// `S_n(t) = c_0 + c_1 t + ... + c_n t^n` by Horner's rule.
///
/// Missing coefficients (`n` beyond the slice) are zero and a negative `n`
/// gives the empty sum.
pub fn partial_sum(coeffs: &[Complex64], n: isize, t: Complex64) -> Complex64 {
    if n < 0 || coeffs.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    let top = (n as usize).min(coeffs.len().saturating_sub(1));
    coeffs[..=top]
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
}

/// `h` with `f = h * (t - z)` through the stored length.
pub fn divide_linear(coeffs: &[Complex64], z: Complex64) -> Result<Vec<Complex64>> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroShift);
    }
    let mut out = Vec::with_capacity(coeffs.len());
    let mut prev = Complex64::new(0.0, 0.0);
    for (i, &c) in coeffs.iter().enumerate() {
        // h_0 = -c_0 / z, h_i = (h_{i-1} - c_i) / z
        let h = if i == 0 { -c / z } else { (prev - c) / z };
        out.push(h);
        prev = h;
    }
    Ok(out)
}

/// `f * (t - p)`; the result is one coefficient longer.
pub fn multiply_linear(coeffs: &[Complex64], p: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
    for (i, &c) in coeffs.iter().enumerate() {
        out[i] -= p * c;
        out[i + 1] += c;
    }
    out
}

/// `g` with `f g = 1` through the stored length.
pub fn reciprocal(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let one = [Complex64::new(1.0, 0.0)];
    taylor_of_rational(&one, coeffs, coeffs.len())
}

/// First `len` Taylor coefficients of `num / den` (long division in ascending
/// powers).
pub fn taylor_of_rational(
    num: &[Complex64],
    den: &[Complex64],
    len: usize,
) -> Result<Vec<Complex64>> {
    let b0 = match den.first() {
        Some(&b0) if b0 != Complex64::new(0.0, 0.0) => b0,
        _ => return Err(Error::SingularAtOrigin),
    };
    let mut out: Vec<Complex64> = Vec::with_capacity(len);
    for j in 0..len {
        let mut acc = num.get(j).copied().unwrap_or_default();
        for m in 1..=j.min(den.len() - 1) {
            acc -= den[m] * out[j - m];
        }
        out.push(acc / b0);
    }
    Ok(out)
}

/// Product of two series truncated to `len` coefficients.
pub fn convolve(a: &[Complex64], b: &[Complex64], len: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for (i, &x) in a.iter().enumerate().take(len) {
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}
