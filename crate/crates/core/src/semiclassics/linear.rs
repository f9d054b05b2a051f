//! The linear-potential problem (G(p) + 2 beta u) Psi = kappa' Psi solved in Fourier space.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{bessel_j0, ln_gamma, Complex};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearPotentialConfig {
    /// First frequency cutoff; doubled until two cutoffs agree.
    pub p_start: f64,
    pub p_limit: f64,
    pub step: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for LinearPotentialConfig {
    fn default() -> Self {
        LinearPotentialConfig {
            p_start: 50.0,
            p_limit: 3200.0,
            step: 0.01,
            abs_tol: 1e-13,
            rel_tol: 1e-8,
        }
    }
}

/// C-infinity step: 1 on [0, 1/2], 0 from 1 on.
fn cutoff(t: f64) -> f64 {
    if t <= 0.5 {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    let s = 2.0 * (t - 0.5);
    let f = |z: f64| if z > 0.0 { (-1.0 / z).exp() } else { 0.0 };
    f(1.0 - s) / (f(s) + f(1.0 - s))
}

/// arg of the Fourier solution at p >= 0, continuous in p.
fn phase(beta: f64, kappa_prime: f64, p: f64) -> f64 {
    let lg = ln_gamma(Complex::new(0.5, 0.5 * p)).map_or(f64::NAN, |z| z.im);
    (-2.0 * lg - p * LN_2 + 0.5 * kappa_prime * p) / beta
}

fn truncated(beta: f64, kappa_prime: f64, u: f64, p_cut: f64, h: f64) -> f64 {
    let steps = (p_cut / h).ceil() as usize;
    let mut sum = 0.5 * phase(beta, kappa_prime, 0.0).cos();
    for j in 1..steps {
        let p = j as f64 * h;
        sum += cutoff(p / p_cut) * (phase(beta, kappa_prime, p) - p * u).cos();
    }
    2.0 * h * sum
}

/// Psi(u) = int exp(-ipu) Psi~(p) dp with
/// Psi~(p) = [2^{-ip} Gamma((1-ip)/2) / Gamma((1+ip)/2)]^{1/beta} exp(i kappa' p / (2 beta)).
pub fn linear_potential_solution(beta: f64, kappa_prime: f64, u: f64) -> Result<f64> {
    linear_potential_solution_with(beta, kappa_prime, u, &LinearPotentialConfig::default())
}

pub fn linear_potential_solution_with(
    beta: f64,
    kappa_prime: f64,
    u: f64,
    config: &LinearPotentialConfig,
) -> Result<f64> {
    if !beta.is_finite() || !kappa_prime.is_finite() || !u.is_finite() {
        return Err(Error::NonFinite { what: "linear_potential_solution" });
    }
    if beta <= 0.0 {
        return Err(Error::domain("linear_potential_solution", format!("beta = {beta} must be positive")));
    }
    let mut p_cut = config.p_start;
    let mut prev = truncated(beta, kappa_prime, u, p_cut, config.step);
    let mut iterations = 0;
    loop {
        p_cut *= 2.0;
        iterations += 1;
        let next = truncated(beta, kappa_prime, u, p_cut, config.step);
        let change = (next - prev).abs();
        if change <= config.abs_tol.max(config.rel_tol * next.abs()) {
            return Ok(next);
        }
        if p_cut >= config.p_limit {
            return Err(Error::Convergence {
                what: "linear_potential_solution",
                iterations,
                estimate: change,
                tolerance: config.rel_tol,
            });
        }
        prev = next;
    }
}

/// Closed form at beta = 1: y J0(2y) with y = exp(-u + kappa'/2)/2, so that
/// linear_potential_solution(1, kappa', u) = 4 pi times this.
pub fn linear_potential_bessel(kappa_prime: f64, u: f64) -> f64 {
    let y = 0.5 * (-u + 0.5 * kappa_prime).exp();
    y * bessel_j0(2.0 * y)
}
