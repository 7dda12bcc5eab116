//! Applications built on the fits: sequence extrapolation, Laplace
//! inversion, piecewise interpolation and the error-kernel diagnostic.

pub mod accelerate;
pub mod error_kernel;
pub mod laplace;
pub mod piecewise;

pub use accelerate::{accelerate, AccelMode};
pub use error_kernel::{error_kernel, ErrorKernelReport, QSpec};
pub use laplace::{eval_inverse, invert_from_interpolant, longman_sharir_invert, LaplaceRational, VariableMap};
pub use piecewise::{piecewise_fit, JunctionReport, Piece, PieceFit, PiecewiseFit};
