//! Extrapolation of `S_n = f(tau_n)` to `f(tau_inf)`.
//!
//! Each window of consecutive samples gets its own interpolant, evaluated at
//! `tau_inf`. The rational form uses `k` samples per window, the barycentric
//! form `k + 1`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::barycentric;
use crate::rational::{self, FitOptions, InterpolationData};
use crate::series::PowerSeries;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccelMode {
    Rational,
    Barycentric,
}

/// `T_k^(n)` for every window `n = 0, 1, ...` that fits in the samples.
pub fn accelerate(
    samples: &[Complex64],
    nodes: &[Complex64],
    tau_inf: Complex64,
    k: usize,
    series: &PowerSeries,
    mode: AccelMode,
    options: &FitOptions,
) -> Result<Vec<Complex64>> {
    if samples.len() != nodes.len() {
        return Err(Error::LengthMismatch { nodes: nodes.len(), values: samples.len() });
    }
    if !(tau_inf.re.is_finite() && tau_inf.im.is_finite()) || tau_inf == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("tau_inf must be finite and nonzero"));
    }
    let width = match mode {
        AccelMode::Rational => k.max(1),
        AccelMode::Barycentric => k + 1,
    };
    if samples.len() < width {
        return Err(Error::InvalidArgument("fewer samples than one window needs"));
    }
    (0..=samples.len() - width)
        .map(|n| {
            let window = n..n + width;
            match mode {
                AccelMode::Rational => {
                    let data = InterpolationData::new(nodes[window.clone()].to_vec(), samples[window].to_vec())?;
                    let (m, _) = rational::fit_with(series, &data, k, k, options)?;
                    Ok(m.eval(tau_inf))
                }
                AccelMode::Barycentric => {
                    let (m, _) = barycentric::fit_weights_with(series, &nodes[window.clone()], &samples[window], k, options)?;
                    Ok(m.eval(tau_inf))
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn geometric_windows_are_exact() {
        let nodes: Vec<Complex64> = (0..6).map(|n| c(1.0 / (n as f64 + 2.0))).collect();
        let samples: Vec<Complex64> = nodes.iter().map(|t| 1.0 / (1.0 - t)).collect();
        let series = PowerSeries::from_real(&[1.0; 4]).unwrap();
        for mode in [AccelMode::Rational, AccelMode::Barycentric] {
            let t = accelerate(&samples, &nodes, c(0.1), 1, &series, mode, &FitOptions::default()).unwrap();
            assert_eq!(t.len(), if mode == AccelMode::Rational { 6 } else { 5 });
            for v in t {
                assert!((v - c(1.0 / 0.9)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn rejects_origin_target() {
        let series = PowerSeries::from_real(&[1.0]).unwrap();
        let r = accelerate(&[c(1.0)], &[c(0.5)], c(0.0), 1, &series, AccelMode::Rational, &FitOptions::default());
        assert!(r.is_err());
        let r = accelerate(&[c(1.0)], &[c(0.5)], c(0.1), 1, &series, AccelMode::Barycentric, &FitOptions::default());
        assert!(r.is_err());
    }
}
