#![allow(dead_code)]

use padetype_core::series::PowerSeries;
use padetype_core::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn reals(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| c(x)).collect()
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| if i == n - 1 { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect()
}

/// Taylor coefficients of tan x at x^1, x^3, ..., x^17.
const TAN: [f64; 9] = [
    1.0,
    1.0 / 3.0,
    2.0 / 15.0,
    17.0 / 315.0,
    62.0 / 2835.0,
    1382.0 / 155925.0,
    21844.0 / 6081075.0,
    929569.0 / 638512875.0,
    6404582.0 / 10854718875.0,
];

/// tan(w t) / (w t) through t^16.
pub fn tan_ratio_series(w: f64) -> PowerSeries {
    let mut out = vec![0.0; 17];
    for (n, &t) in TAN.iter().enumerate() {
        out[2 * n] = t * w.powi(2 * n as i32);
    }
    PowerSeries::from_real(&out).unwrap()
}

pub fn tan_ratio(w: f64, t: Complex64) -> Complex64 {
    if t.norm() == 0.0 {
        c(1.0)
    } else {
        (t * w).tan() / (t * w)
    }
}

fn factorials(len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut f = 1.0;
    for i in 0..len {
        if i > 0 {
            f *= i as f64;
        }
        out.push(f);
    }
    out
}

pub fn exp_series(len: usize) -> PowerSeries {
    PowerSeries::from_real(&factorials(len).iter().map(|f| 1.0 / f).collect::<Vec<_>>()).unwrap()
}

pub fn cos_series(len: usize) -> PowerSeries {
    let f = factorials(len);
    let coeffs: Vec<f64> = (0..len)
        .map(|i| if i % 2 == 1 { 0.0 } else if i % 4 == 0 { 1.0 / f[i] } else { -1.0 / f[i] })
        .collect();
    PowerSeries::from_real(&coeffs).unwrap()
}

/// log(1 + t) / t.
pub fn log_ratio_series(len: usize) -> PowerSeries {
    PowerSeries::from_real(&(0..len).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 } / (i + 1) as f64).collect::<Vec<_>>())
        .unwrap()
}

/// log(1 + t).
pub fn log1p_series(len: usize) -> PowerSeries {
    let coeffs: Vec<f64> =
        (0..len).map(|i| if i == 0 { 0.0 } else if i % 2 == 1 { 1.0 / i as f64 } else { -1.0 / i as f64 }).collect();
    PowerSeries::from_real(&coeffs).unwrap()
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut acc = c(0.0);
    for j in 0..n {
        let minor: Vec<Vec<Complex64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x).collect())
            .collect();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += m[0][j] * det(&minor) * sign;
    }
    acc
}

/// Ratio-of-determinants form of the `(k/k)` rational interpolant on `k`
/// nodes.
pub fn rational_det(series: &PowerSeries, nodes: &[Complex64], values: &[Complex64], t: Complex64) -> Complex64 {
    let k = nodes.len();
    let rows: Vec<Vec<Complex64>> = nodes
        .iter()
        .zip(values)
        .map(|(&tau, &f)| {
            (0..=k)
                .map(|j| tau.powi(j as i32 - k as i32) * (series.partial_sum((k - j) as isize, tau) - f))
                .collect()
        })
        .collect();
    let mut num = vec![(0..=k).map(|j| t.powi(j as i32) * series.partial_sum((k - j) as isize, t)).collect::<Vec<_>>()];
    num.extend(rows.iter().cloned());
    let mut den = vec![(0..=k).map(|j| t.powi(j as i32)).collect::<Vec<_>>()];
    den.extend(rows);
    det(&num) / det(&den)
}

/// Ratio-of-determinants form of the barycentric interpolant on `k + 1`
/// nodes.
pub fn barycentric_det(series: &PowerSeries, nodes: &[Complex64], values: &[Complex64], t: Complex64) -> Complex64 {
    let k = nodes.len() - 1;
    let rows: Vec<Vec<Complex64>> = (1..=k)
        .map(|j| {
            nodes
                .iter()
                .zip(values)
                .map(|(&tau, &f)| (f - series.partial_sum(j as isize - 1, tau)) / tau.powi(j as i32))
                .collect()
        })
        .collect();
    let mut num = vec![nodes.iter().zip(values).map(|(&tau, &f)| f / (t - tau)).collect::<Vec<_>>()];
    num.extend(rows.iter().cloned());
    let mut den = vec![nodes.iter().map(|&tau| 1.0 / (t - tau)).collect::<Vec<_>>()];
    den.extend(rows);
    det(&num) / det(&den)
}

/// Points with `rmin <= |z| <= rmax`, pairwise at least `gap` apart.
pub fn annulus_points(rng: &mut StdRng, n: usize, rmin: f64, rmax: f64, gap: f64) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(n);
    while out.len() < n {
        let z = Complex64::from_polar(rng.gen_range(rmin..rmax), rng.gen_range(0.0..std::f64::consts::TAU));
        if out.iter().all(|o| (o - z).norm() >= gap) {
            out.push(z);
        }
    }
    out
}

/// `N / D` with `D(0) = 1`, roots of both drawn from an annulus.
#[derive(Debug, Clone)]
pub struct RandomRational {
    pub num: Vec<Complex64>,
    pub den: Vec<Complex64>,
    pub poles: Vec<Complex64>,
}

impl RandomRational {
    pub fn draw(rng: &mut StdRng, degree: usize) -> Self {
        let zeros: Vec<Complex64> = annulus_points(rng, degree, 0.2, 2.0, 0.1).iter().map(|z| z * 1.5).collect();
        let poles: Vec<Complex64> = annulus_points(rng, degree, 0.2, 2.0, 0.1).iter().map(|z| z * 1.5).collect();
        let mut num = padetype_core::poly::from_roots(&zeros);
        let mut den = padetype_core::poly::from_roots(&poles);
        let s = den[0];
        for x in num.iter_mut().chain(den.iter_mut()) {
            *x /= s;
        }
        Self { num, den, poles }
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        padetype_core::poly::horner(&self.num, t) / padetype_core::poly::horner(&self.den, t)
    }

    pub fn series(&self, len: usize) -> PowerSeries {
        PowerSeries::new(padetype_core::series::taylor_of_rational(&self.num, &self.den, len).unwrap()).unwrap()
    }
}

/// `max_j |a_j - c_j| / max_j |c_j|` over the first `count` coefficients.
pub fn contact_error(taylor: &[Complex64], series: &PowerSeries, count: usize) -> f64 {
    let scale = (0..count).map(|j| series.coeff(j as isize).norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    (0..count).map(|j| (taylor[j] - series.coeff(j as isize)).norm()).fold(0.0, f64::max) / scale
}

/// Largest change of `output` when the coefficients and values it is fitted
/// from are perturbed by about one ulp, over a few perturbations. This is the
/// part of a fit's error that rounding of the data alone accounts for.
pub fn ulp_sensitivity(
    coeffs: &[Complex64],
    values: &[Complex64],
    output: impl Fn(&[Complex64], &[Complex64]) -> Vec<Complex64>,
) -> f64 {
    let base = output(coeffs, values);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let mut jiggle =
            |v: &[Complex64]| -> Vec<Complex64> { v.iter().map(|z| z * (1.0 + f64::EPSILON * rng.gen_range(-1.0..1.0))).collect() };
        let (c2, v2) = (jiggle(coeffs), jiggle(values));
        worst = output(&c2, &v2).iter().zip(&base).map(|(a, b)| (a - b).norm()).fold(worst, f64::max);
    }
    worst
}
