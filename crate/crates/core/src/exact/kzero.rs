//! Numerical check of 2H + log(1 - x^2) = g(l).

use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{apply_k_pointwise, trig_interpolate, OperatorParams, UGrid};
use crate::specfun::{g_dispersion, Complex};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GOfEllConfig {
    /// Half width of the periodic u-grid.
    pub u_max: f64,
    pub m_points: usize,
    /// Largest admissible |phi| at x = +-tanh(u_max), relative to max |phi|.
    pub edge_tolerance: f64,
}

impl Default for GOfEllConfig {
    fn default() -> Self {
        GOfEllConfig {
            u_max: 40.0,
            m_points: 4096,
            edge_tolerance: 1e-3,
        }
    }
}

/// Max over `x_grid` of |g(l) phi - K_00 phi|.
///
/// The left side expands phi over the K_00 modes, which in u = atanh x are
/// plane waves of cosh(u)^{-1} phi(tanh u); the right side is the defining
/// integral.
pub fn verify_g_of_ell(phi: impl Fn(f64) -> f64, x_grid: &[f64], config: &GOfEllConfig) -> Result<f64> {
    let grid = UGrid::new(config.u_max, config.m_points)?;
    let nodes = grid.nodes();
    let samples: Vec<f64> = nodes.iter().map(|&u| phi(u.tanh())).collect();
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { what: "verify_g_of_ell" });
    }
    let peak = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Err(Error::Precondition("test function vanishes on the grid".into()));
    }
    let edge = phi(-config.u_max.tanh()).abs().max(phi(config.u_max.tanh()).abs());
    if !(edge <= config.edge_tolerance * peak) {
        return Err(Error::Precondition(format!(
            "test function does not vanish at the endpoints (|phi| = {edge:e} against max {peak:e})"
        )));
    }

    let m = grid.len();
    let mut buf: Vec<Complex> = samples
        .iter()
        .zip(&nodes)
        .map(|(v, u)| Complex::new(v / u.cosh(), 0.0))
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(m).process(&mut buf);
    for (c, p) in buf.iter_mut().zip(grid.frequencies()) {
        *c *= g_dispersion(p) / m as f64;
    }
    planner.plan_fft_inverse(m).process(&mut buf);
    let image: Vec<f64> = buf.iter().map(|c| c.re).collect();

    let mut at = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        if !(x > -1.0 && x < 1.0) {
            return Err(Error::domain("verify_g_of_ell", format!("grid point x = {x} outside (-1, 1)")));
        }
        at.push(x.atanh());
    }
    let spectral = trig_interpolate(&grid, &image, &at)?;
    let params = OperatorParams::new(0.0, 0.0)?;
    let mut worst = 0.0f64;
    for ((&x, &u), s) in x_grid.iter().zip(&at).zip(spectral) {
        let direct = apply_k_pointwise(params, &phi, x)?;
        worst = worst.max((s * u.cosh() - direct).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::k00_eigenfunction;

    fn grid() -> Vec<f64> {
        (0..=18).map(|j| -0.9 + 0.1 * j as f64).collect()
    }

    #[test]
    fn gaussian_bump() {
        let r = verify_g_of_ell(|x| (-8.0 * x * x).exp(), &grid(), &GOfEllConfig::default()).unwrap();
        assert!(r < 1e-5, "{r}");
    }

    #[test]
    fn constant_is_rejected() {
        let e = verify_g_of_ell(|_| 1.0, &grid(), &GOfEllConfig::default());
        assert!(matches!(e, Err(Error::Precondition(_))));
    }

    #[test]
    fn windowed_mode_leakage_is_reported() {
        // Re phi_k times a window: not a mode any more, but still in range
        let phi = |x: f64| k00_eigenfunction(3.0, x).map_or(0.0, |v| v.re * (1.0 - x * x).powi(3));
        let r = verify_g_of_ell(phi, &grid(), &GOfEllConfig::default()).unwrap();
        assert!(r.is_finite() && r < 1e-4, "{r}");
    }
}
