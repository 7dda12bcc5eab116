//! Padé-type rational interpolation.
//!
//! The interpolants built here match function values at nonzero nodes and, at
//! the same time, the Taylor (or Chebyshev) expansion of the function at the
//! origin to as high an order as the construction allows:
//!
//! * [`rational`]: coefficient form `N(t)/D(t)`. The denominator comes from the
//!   interpolation conditions, the numerator from the series.
//! * [`barycentric`]: barycentric form whose weights come from the order
//!   conditions at the origin.
//! * [`chebyshev`]: the same idea for series in Chebyshev polynomials.
//!
//! [`polecontrol`] finds and removes spurious real poles, and [`apps`] builds
//! sequence extrapolation, Laplace inversion, piecewise fitting and an
//! error-kernel diagnostic on top of the fits.
//!
//! Everything is `no_std` with `alloc`; file formats and the command-line tool
//! live in the `padetype` crate.
#![no_std]
#![cfg_attr(test, allow(unused_imports))]
#![warn(missing_debug_implementations)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod apps;
pub mod barycentric;
pub mod chebyshev;
mod error;
pub mod linsolve;
pub mod nodes;
pub mod polecontrol;
pub mod poly;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Magnitude below which a denominator is treated as zero by the evaluators.
pub const POLE_UNDERFLOW: f64 = 1e-300;

/// Value returned by the evaluators at a pole: an infinity carrying the sign
/// of the numerator's real part.
pub fn pole_sentinel(numerator: Complex64) -> Complex64 {
    let sign = if numerator.re < 0.0 { -1.0 } else { 1.0 };
    Complex64::new(sign * f64::INFINITY, 0.0)
}

/// True for values produced by [`pole_sentinel`].
pub fn is_pole(value: Complex64) -> bool {
    value.re.is_infinite()
}

/// Real part of `z`, checking that the imaginary part is negligible.
///
/// Returns `None` when `|im| > 1e-10 * max(1, |z|)`.
pub fn real_part(z: Complex64) -> Option<f64> {
    let scale = z.norm().max(1.0);
    (z.im.abs() <= 1e-10 * scale).then_some(z.re)
}
