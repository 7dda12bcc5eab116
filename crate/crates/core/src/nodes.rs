//! Node families used in the examples: equidistant points, roots of unity and
//! Chebyshev zeros.

use alloc::vec::Vec;

use core::f64::consts::PI;
use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{Error, Result};

/// `n` equidistant points in `[a, b]`, endpoints included.
pub fn equidistant(a: f64, b: f64, n: usize) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::EmptyData);
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidArgument("interval endpoints must be finite"));
    }
    let nodes: Vec<f64> = if n == 1 {
        alloc::vec![a]
    } else {
        let h = (b - a) / (n - 1) as f64;
        (0..n).map(|i| if i == n - 1 { b } else { a + i as f64 * h }).collect()
    };
    let scale = a.abs().max(b.abs());
    if nodes.iter().any(|t| t.abs() <= 1e-14 * scale) {
        return Err(Error::NodeAtOrigin);
    }
    Ok(nodes.into_iter().map(|t| Complex64::new(t, 0.0)).collect())
}

/// `exp(2 pi i j / n)` for `j = 0..n`.
pub fn roots_of_unity(n: usize) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::EmptyData);
    }
    Ok((0..n).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)).collect())
}

/// Zeros of `T_n`, `cos((2j + 1) pi / 2n)` for `j = 0..n`. Odd `n` puts a
/// zero at the origin and is rejected.
pub fn chebyshev_zeros(n: usize) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::EmptyData);
    }
    let nodes: Vec<f64> = (0..n).map(|j| ((2 * j + 1) as f64 * PI / (2 * n) as f64).cos()).collect();
    if nodes.iter().any(|t| t.abs() <= 1e-14) {
        return Err(Error::NodeAtOrigin);
    }
    Ok(nodes.into_iter().map(|t| Complex64::new(t, 0.0)).collect())
}
