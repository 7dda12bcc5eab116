//! Piecewise Padé-type interpolation: one interpolant per piece, all sharing
//! the series at a common junction point. Since every piece reproduces the
//! same leading Taylor coefficients there, the pieces join smoothly.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::barycentric;
use crate::linsolve;
use crate::polecontrol::Interpolant;
use crate::rational::{self, FitOptions, InterpolationData};
use crate::series::PowerSeries;
use crate::{Error, Result};

use super::AccelMode;

/// Nodes and values on one interval, in the original coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub interval: (f64, f64),
    pub nodes: Vec<f64>,
    pub values: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PieceFit {
    pub interval: (f64, f64),
    /// Interpolant in the shifted variable `t - center`.
    pub model: Interpolant,
    /// Condition number of the system matrix `A`.
    pub condition: f64,
    /// More equations than unknowns.
    pub overdetermined: bool,
}

impl PieceFit {
    /// Condition number of the matrix actually inverted: `A` for square or
    /// underdetermined systems, `A^H A` for least-squares ones.
    pub fn effective_condition(&self) -> f64 {
        if self.overdetermined {
            self.condition * self.condition
        } else {
            self.condition
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JunctionReport {
    /// Leading Taylor coefficients of each piece at the junction.
    pub taylor: Vec<Vec<Complex64>>,
    /// Largest pairwise difference over the common orders, relative to the
    /// largest coefficient magnitude.
    pub max_mismatch: f64,
}

impl JunctionReport {
    /// Derivatives `j! c_j` of piece `i` at the junction.
    pub fn derivatives(&self, i: usize) -> Vec<Complex64> {
        let mut fact = 1.0;
        self.taylor[i]
            .iter()
            .enumerate()
            .map(|(j, &c)| {
                if j > 0 {
                    fact *= j as f64;
                }
                c * fact
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseFit {
    pub center: f64,
    pub pieces: Vec<PieceFit>,
    pub junction: JunctionReport,
}

impl PiecewiseFit {
    /// Evaluates the piece whose interval contains `t`, or the nearest one.
    pub fn eval(&self, t: f64) -> Complex64 {
        let distance = |(a, b): (f64, f64)| {
            if t < a {
                a - t
            } else if t > b {
                t - b
            } else {
                0.0
            }
        };
        let piece = self
            .pieces
            .iter()
            .min_by(|p, q| distance(p.interval).total_cmp(&distance(q.interval)))
            .expect("at least one piece");
        piece.model.eval_real(t - self.center)
    }
}

/// Fits every piece from the series of `f` at `center`.
pub fn piecewise_fit(
    pieces: &[Piece],
    series: &PowerSeries,
    k: usize,
    center: f64,
    mode: AccelMode,
    options: &FitOptions,
) -> Result<PiecewiseFit> {
    if pieces.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut fits = Vec::with_capacity(pieces.len());
    for piece in pieces {
        let (a, b) = piece.interval;
        if !(a < b) {
            return Err(Error::InvalidArgument("piece interval needs a < b"));
        }
        if piece.nodes.iter().any(|&t| t < a || t > b) {
            return Err(Error::InvalidArgument("piece node outside its interval"));
        }
        let nodes: Vec<Complex64> = piece.nodes.iter().map(|&t| Complex64::new(t - center, 0.0)).collect();
        let fit = match mode {
            AccelMode::Rational => {
                let data = InterpolationData::new(nodes, piece.values.clone())?;
                let (matrix, _) = rational::build_system(series, &data, k, k, options.scaled_rows)?;
                let (model, _) = rational::fit_with(series, &data, k, k, options)?;
                PieceFit {
                    interval: piece.interval,
                    model: Interpolant::Rational(model),
                    condition: linsolve::condition_number(&matrix),
                    overdetermined: matrix.nrows() > matrix.ncols(),
                }
            }
            AccelMode::Barycentric => {
                let (matrix, _) = barycentric::build_system(series, &nodes, &piece.values)?;
                let (model, _) = barycentric::fit_weights_with(series, &nodes, &piece.values, k, options)?;
                PieceFit {
                    interval: piece.interval,
                    model: Interpolant::Barycentric(model),
                    condition: linsolve::condition_number(&matrix),
                    overdetermined: matrix.nrows() > matrix.ncols(),
                }
            }
        };
        fits.push(fit);
    }

    let order = match mode {
        AccelMode::Rational => k + 1,
        AccelMode::Barycentric => barycentric::contact_order(series.len(), k),
    };
    let taylor = fits.iter().map(|f| f.model.taylor(order)).collect::<Result<Vec<_>>>()?;
    let scale = series.coeffs().iter().take(order).map(|c| c.norm()).fold(0.0, f64::max);
    let mut max_mismatch: f64 = 0.0;
    for (i, x) in taylor.iter().enumerate() {
        for y in &taylor[i + 1..] {
            for (a, b) in x.iter().zip(y) {
                let denom = a.norm().max(b.norm()).max(scale);
                if denom > 0.0 {
                    max_mismatch = max_mismatch.max((a - b).norm() / denom);
                }
            }
        }
    }
    Ok(PiecewiseFit { center, pieces: fits, junction: JunctionReport { taylor, max_mismatch } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_traits::Float;

    fn log_series(len: usize) -> PowerSeries {
        PowerSeries::from_real(&(0..len).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 } / (i + 1) as f64).collect::<Vec<_>>())
            .unwrap()
    }

    fn f(t: f64) -> Complex64 {
        Complex64::new((1.0 + t).ln() / t, 0.0)
    }

    fn piece(a: f64, b: f64, nodes: &[f64]) -> Piece {
        Piece { interval: (a, b), nodes: nodes.to_vec(), values: nodes.iter().map(|&t| f(t)).collect() }
    }

    #[test]
    fn two_pieces_share_taylor_coefficients() {
        let pieces = [piece(-0.9, -0.1, &[-0.9, -0.1]), piece(0.1, 1.0, &[0.1, 1.0])];
        let fit = piecewise_fit(&pieces, &log_series(3), 2, 0.0, AccelMode::Rational, &FitOptions::unscaled()).unwrap();
        assert!(fit.junction.max_mismatch < 1e-8);
        for t in &fit.junction.taylor {
            assert!((t[0].re - 1.0).abs() < 1e-12 && (t[1].re + 0.5).abs() < 1e-12 && (t[2].re - 1.0 / 3.0).abs() < 1e-12);
        }
        for p in &fit.pieces {
            assert!(!p.overdetermined);
            assert!(p.condition > 1e3 && p.condition < 1e6, "{}", p.condition);
        }
        assert!((fit.eval(-0.5) - f(-0.5)).norm() < 1e-2);
        let d = fit.junction.derivatives(0);
        assert!((d[2].re - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn single_piece_is_plain_fit() {
        let p = piece(0.1, 1.0, &[0.1, 0.5, 1.0]);
        let fit = piecewise_fit(core::slice::from_ref(&p), &log_series(5), 3, 0.0, AccelMode::Rational, &FitOptions::default()).unwrap();
        let data = InterpolationData::new(p.nodes.iter().map(|&t| Complex64::new(t, 0.0)).collect(), p.values).unwrap();
        let plain = rational::fit(&log_series(5), &data, 3, 3).unwrap();
        assert_eq!(fit.pieces[0].model, Interpolant::Rational(plain));
        assert_eq!(fit.junction.max_mismatch, 0.0);
    }

    #[test]
    fn shifted_center() {
        // series of 1/(1 - t) about 0.5 is 1/(0.5 - u) = 2 sum (2u)^j
        let series = PowerSeries::from_real(&(0..4).map(|j| 2f64.powi(j + 1)).collect::<Vec<_>>()).unwrap();
        let g = |t: f64| Complex64::new(1.0 / (1.0 - t), 0.0);
        let pieces = [Piece { interval: (-1.0, 0.4), nodes: vec![-0.5], values: vec![g(-0.5)] }];
        let fit = piecewise_fit(&pieces, &series, 1, 0.5, AccelMode::Barycentric, &FitOptions::default());
        assert!(fit.is_err());
        let fit = piecewise_fit(&pieces, &series, 1, 0.5, AccelMode::Rational, &FitOptions::default()).unwrap();
        for t in [-0.9, 0.0, 0.3] {
            assert!((fit.eval(t) - g(t)).norm() < 1e-12);
        }
    }
}
