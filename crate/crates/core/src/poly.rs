//! Dense polynomials in ascending coefficient order.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result};

/// Horner evaluation of `c_0 + c_1 t + ... + c_n t^n`.
pub fn horner(coeffs: &[Complex64], t: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
}

/// Product of two polynomials.
pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Monic polynomial with the given roots.
pub fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    roots.iter().fold(vec![Complex64::new(1.0, 0.0)], |acc, &r| {
        mul(&acc, &[-r, Complex64::new(1.0, 0.0)])
    })
}

/// Drops trailing coefficients below `rel * max |c_j|`.
pub fn trim(coeffs: &[Complex64], rel: f64) -> &[Complex64] {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut end = coeffs.len();
    while end > 0 && coeffs[end - 1].norm() <= rel * scale {
        end -= 1;
    }
    &coeffs[..end]
}

/// Roots as eigenvalues of the balanced companion matrix.
///
/// Trailing coefficients below `1e-14 * max |c_j|` are trimmed first. Fails
/// with [`Error::DegenerateDenominator`] when nothing of degree >= 0 remains.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let coeffs = trim(coeffs, 1e-14);
    if coeffs.is_empty() {
        return Err(Error::DegenerateDenominator);
    }
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }
    // zero roots split off exactly
    let lead_zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let coeffs = &coeffs[lead_zeros..];
    let n = coeffs.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); lead_zeros];
    if n == 0 {
        return Ok(out);
    }
    if n == 1 {
        out.push(-coeffs[0] / coeffs[1]);
        return Ok(out);
    }

    let lead = coeffs[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    balance(&mut m);
    let schur = nalgebra::Schur::try_new(m, f64::EPSILON, 10_000).ok_or(Error::NumericalFailure)?;
    let eig = schur.eigenvalues().ok_or(Error::NumericalFailure)?;
    out.extend(eig.iter().copied());
    Ok(out)
}

/// Parlett-Reinsch diagonal balancing with powers of two.
fn balance(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    let radix = 2.0f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += m[(j, i)].norm();
                    row += m[(i, j)].norm();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let mut f = 1.0;
            let mut c = col;
            while c < row / radix {
                f *= radix;
                c *= radix * radix;
            }
            while c >= row * radix {
                f /= radix;
                c /= radix * radix;
            }
            // c is now col * f^2
            if (c + row) / f < 0.95 * total {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// True when `|im z| <= tol * max(1, |z|)`.
pub fn is_real(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol * z.norm().max(1.0)
}
