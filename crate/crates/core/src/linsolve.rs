//! Minimum-norm least-squares solves through the singular value decomposition.
//!
//! Every fitting system in the crate goes through [`pinv_solve`], so rank
//! decisions are made in one place.

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

pub type Matrix = DMatrix<Complex64>;

/// Outcome of a pseudo-inverse solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solution: Vec<Complex64>,
    /// Number of singular values kept.
    pub rank: usize,
    /// `sigma_max / sigma_min` over the kept singular values.
    pub condition: f64,
    /// `||A x - b||_2`.
    pub residual_norm: f64,
    /// All singular values, in decreasing order.
    pub singular_values: Vec<f64>,
}

/// `max(rows, cols) * eps`, the usual pseudo-inverse cutoff.
pub fn default_rcond(rows: usize, cols: usize) -> f64 {
    rows.max(cols) as f64 * f64::EPSILON
}

/// `x = A^+ b`, treating singular values below `rcond * sigma_max` as zero.
pub fn pinv_solve(a: &Matrix, b: &[Complex64], rcond: f64) -> Result<SolveReport> {
    let (rows, cols) = a.shape();
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument("empty system matrix"));
    }
    if b.len() != rows {
        return Err(Error::InvalidArgument("right-hand side length differs from row count"));
    }
    if !(rcond > 0.0 && rcond < 1.0) {
        return Err(Error::InvalidArgument("rcond must lie in (0, 1)"));
    }
    if a.iter().chain(b).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NumericalFailure);
    }

    let svd = a.clone().try_svd(true, true, f64::EPSILON, 0).ok_or(Error::NumericalFailure)?;
    let u = svd.u.as_ref().ok_or(Error::NumericalFailure)?;
    let v_t = svd.v_t.as_ref().ok_or(Error::NumericalFailure)?;
    let sigma = &svd.singular_values;

    let mut order: Vec<usize> = (0..sigma.len()).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    let sigma_max = sigma.iter().copied().fold(0.0, f64::max);
    let cutoff = rcond * sigma_max;

    let rhs = DVector::from_column_slice(b);
    let mut x = DVector::<Complex64>::zeros(cols);
    let mut rank = 0;
    let mut sigma_min_kept = f64::INFINITY;
    for &i in &order {
        let s = sigma[i];
        if s <= cutoff || s == 0.0 {
            continue;
        }
        rank += 1;
        sigma_min_kept = sigma_min_kept.min(s);
        // x += v_i (u_i^H b) / s_i
        let coef = u.column(i).dotc(&rhs) / s;
        for k in 0..cols {
            x[k] += v_t[(i, k)].conj() * coef;
        }
    }

    let residual = a * &x - &rhs;
    let condition = if rank == 0 { f64::INFINITY } else { sigma_max / sigma_min_kept };
    Ok(SolveReport {
        solution: x.iter().copied().collect(),
        rank,
        condition,
        residual_norm: residual.norm(),
        singular_values: order.iter().map(|&i| sigma[i]).collect(),
    })
}

/// `sigma_max / sigma_min`, or `+inf` when the smallest singular value is zero
/// to working precision.
pub fn condition_number(a: &Matrix) -> f64 {
    let (rows, cols) = a.shape();
    if rows == 0 || cols == 0 {
        return f64::INFINITY;
    }
    let Some(svd) = a.clone().try_svd(false, false, f64::EPSILON, 0) else {
        return f64::INFINITY;
    };
    let sigma = &svd.singular_values;
    let max = sigma.iter().copied().fold(0.0, f64::max);
    // a wide matrix has min(rows, cols) singular values; a rank gap in the
    // missing directions does not count here
    let min = sigma.iter().copied().fold(f64::INFINITY, f64::min);
    if max == 0.0 || min <= max * f64::EPSILON * rows.max(cols) as f64 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Row-major construction helper.
pub fn matrix_from_rows(rows: usize, cols: usize, data: &[Complex64]) -> Matrix {
    DMatrix::from_row_slice(rows, cols, data)
}
