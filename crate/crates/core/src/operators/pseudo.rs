//! Fourier pseudospectral discretization of G(p) + V(u).

use std::f64::consts::{LN_2, PI};

use ndarray::{Array2, Axis};
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::OperatorParams;
use crate::error::{Error, Result};
use crate::specfun::{big_g, Complex};

/// Uniform periodic grid u_j = u_min + j du, j = 0 .. m - 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UGrid {
    u_min: f64,
    u_max: f64,
    m_points: usize,
}

impl UGrid {
    /// Symmetric grid on [-u_max, u_max).
    pub fn new(u_max: f64, m_points: usize) -> Result<Self> {
        Self::spanning(-u_max, u_max, m_points)
    }

    pub fn spanning(u_min: f64, u_max: f64, m_points: usize) -> Result<Self> {
        if !u_min.is_finite() || !u_max.is_finite() {
            return Err(Error::NonFinite { what: "UGrid" });
        }
        if u_max <= u_min || u_max <= 0.0 {
            return Err(Error::domain("UGrid", format!("empty or one-sided span [{u_min}, {u_max}]")));
        }
        if m_points < 64 || !m_points.is_power_of_two() {
            return Err(Error::domain(
                "UGrid",
                format!("m = {m_points} must be a power of two and at least 64"),
            ));
        }
        Ok(UGrid {
            u_min,
            u_max,
            m_points,
        })
    }

    pub fn u_min(&self) -> f64 {
        self.u_min
    }

    pub fn u_max(&self) -> f64 {
        self.u_max
    }

    pub fn len(&self) -> usize {
        self.m_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.u_max - self.u_min) / self.m_points as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        let du = self.spacing();
        (0..self.m_points).map(|j| self.u_min + j as f64 * du).collect()
    }

    /// Angular frequencies in FFT order.
    pub fn frequencies(&self) -> Vec<f64> {
        let m = self.m_points as isize;
        let scale = 2.0 * PI / (self.u_max - self.u_min);
        (0..m)
            .map(|q| {
                let s = if q < m / 2 { q } else { q - m };
                s as f64 * scale
            })
            .collect()
    }
}

fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// V(u) = -alpha log(1 + tanh u) - beta log(1 - tanh u), overflow free.
pub fn potential(params: OperatorParams, u: f64) -> f64 {
    let mut v = 0.0;
    if params.alpha != 0.0 {
        v -= params.alpha * (LN_2 - softplus(-2.0 * u));
    }
    if params.beta != 0.0 {
        v -= params.beta * (LN_2 - softplus(2.0 * u));
    }
    v
}

/// First column of the circulant matrix of the multiplier `symbol(p)`.
pub(crate) fn circulant_column(grid: &UGrid, symbol: impl Fn(f64) -> f64) -> Vec<f64> {
    let m = grid.len();
    let mut buf: Vec<Complex> = grid.frequencies().into_iter().map(|p| Complex::new(symbol(p), 0.0)).collect();
    FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
    buf.iter().map(|c| c.re / m as f64).collect()
}

/// First column of the kinetic matrix G(p) on the grid.
pub fn kinetic_column(grid: &UGrid) -> Vec<f64> {
    circulant_column(grid, big_g)
}

/// Dense symmetric G(p) + V(u), without the confinement check.
pub(crate) fn schroedinger_matrix(params: OperatorParams, grid: &UGrid, symbol: impl Fn(f64) -> f64) -> Array2<f64> {
    let m = grid.len();
    let col = circulant_column(grid, symbol);
    let nodes = grid.nodes();
    let mut h = Array2::<f64>::zeros((m, m));
    h.axis_iter_mut(Axis(0)).into_par_iter().enumerate().for_each(|(j, mut row)| {
        for (l, entry) in row.iter_mut().enumerate() {
            *entry = col[(j + m - l) % m];
        }
        row[j] += potential(params, nodes[j]);
    });
    // the circulant column is real-even up to rounding; enforce exact symmetry
    for j in 0..m {
        for l in j + 1..m {
            let avg = 0.5 * (h[[j, l]] + h[[l, j]]);
            h[[j, l]] = avg;
            h[[l, j]] = avg;
        }
    }
    h
}

/// Dense matrix of G(p) + V(u) on a periodic grid; needs alpha, beta > 0.
pub fn pseudospectral_matrix(params: OperatorParams, grid: &UGrid) -> Result<Array2<f64>> {
    params.require_confining()?;
    Ok(schroedinger_matrix(params, grid, big_g))
}

/// G(p) applied to grid samples through the FFT.
pub fn apply_kinetic(grid: &UGrid, samples: &[Complex]) -> Result<Vec<Complex>> {
    let m = grid.len();
    if samples.len() != m {
        return Err(Error::Precondition(format!("{} samples for a {m}-point grid", samples.len())));
    }
    let mut planner = FftPlanner::new();
    let mut buf = samples.to_vec();
    planner.plan_fft_forward(m).process(&mut buf);
    for (c, p) in buf.iter_mut().zip(grid.frequencies()) {
        *c *= big_g(p) / m as f64;
    }
    planner.plan_fft_inverse(m).process(&mut buf);
    Ok(buf)
}

/// Trigonometric interpolant of periodic grid samples, evaluated at `at`.
pub fn trig_interpolate(grid: &UGrid, samples: &[f64], at: &[f64]) -> Result<Vec<f64>> {
    let m = grid.len();
    if samples.len() != m {
        return Err(Error::Precondition(format!("{} samples for a {m}-point grid", samples.len())));
    }
    let mut buf: Vec<Complex> = samples.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let freqs = grid.frequencies();
    let nyquist = m / 2;
    Ok(at
        .iter()
        .map(|&u| {
            let s = u - grid.u_min;
            let mut acc = 0.0;
            for (q, (c, p)) in buf.iter().zip(&freqs).enumerate() {
                if q == nyquist {
                    acc += c.re * (p * s).cos();
                } else {
                    let (sin, cos) = (p * s).sin_cos();
                    acc += c.re * cos - c.im * sin;
                }
            }
            acc / m as f64
        })
        .collect())
}
