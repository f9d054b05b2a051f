//! exp(-tau M) on a truncated matrix of M = K_01 - log 2.

use std::f64::consts::LN_2;

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use super::state::{EvolutionBackend, EvolutionState, Interpolant, SolverInfo};
use crate::error::{Error, Result};
use crate::linalg::expm;
use crate::operators::{galerkin_matrix, schroedinger_matrix, trig_interpolate, OperatorParams, SpectralCoeffs, UGrid};
use crate::specfun::big_g;
use crate::specfun::consts::EULER_GAMMA;

/// Relative size of the dropped part that triggers a truncation warning.
pub const TRUNCATION_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixEvolutionConfig {
    pub basis: MatrixBasis,
    /// Grid points (power of two) or Legendre modes.
    pub size: usize,
    /// u-range of the Fourier grid, x = tanh u.
    pub u_min: f64,
    pub u_max: f64,
    /// Largest u at which phi = cosh(u) Psi is read back; beyond it phi is flat.
    pub u_read_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixBasis {
    Fourier,
    Legendre,
}

impl Default for MatrixEvolutionConfig {
    fn default() -> Self {
        MatrixEvolutionConfig {
            basis: MatrixBasis::Fourier,
            size: 1024,
            u_min: -60.0,
            u_max: 30.0,
            u_read_max: 12.0,
        }
    }
}

fn mm_params() -> OperatorParams {
    OperatorParams {
        alpha: 0.0,
        beta: 1.0,
    }
}

/// exp(-tau M) with u = xi phi(2 xi - 1) and d phi / d tau = -M phi.
pub fn evolve_matrix(initial: &EvolutionState, tau_final: f64, n_trunc: usize) -> Result<EvolutionState> {
    let config = MatrixEvolutionConfig {
        size: n_trunc,
        ..Default::default()
    };
    evolve_matrix_with(initial, tau_final, &config)
}

pub fn evolve_matrix_with(
    initial: &EvolutionState,
    tau_final: f64,
    config: &MatrixEvolutionConfig,
) -> Result<EvolutionState> {
    initial.validate()?;
    if !tau_final.is_finite() {
        return Err(Error::NonFinite { what: "evolve_matrix" });
    }
    if tau_final < 0.0 {
        return Err(Error::domain("evolve_matrix", format!("tau = {tau_final} is negative")));
    }
    let backend = match config.basis {
        MatrixBasis::Fourier => EvolutionBackend::Matrix,
        MatrixBasis::Legendre => EvolutionBackend::Legendre,
    };
    let mut info = SolverInfo {
        backend,
        resolution: config.size,
        warnings: Vec::new(),
    };
    if tau_final == 0.0 {
        return Ok(initial.clone().with_solver(info));
    }
    let p = initial.interpolant()?;
    let u_values = match config.basis {
        MatrixBasis::Fourier => fourier(&p, &initial.xi_grid, tau_final, config, &mut info.warnings)?,
        MatrixBasis::Legendre => legendre(&p, &initial.xi_grid, tau_final, config.size, &mut info.warnings)?,
    };
    for w in &info.warnings {
        log::warn!("{w}");
    }
    let mut out = EvolutionState::new(initial.tau + tau_final, initial.xi_grid.clone(), u_values)?;
    out.solver = Some(info);
    Ok(out)
}

/// phi = u/xi at xi = (1 + tanh s)/2, without cancellation.
fn phi_at_s(p: &Interpolant, s: f64) -> Result<f64> {
    let xi = 1.0 / (1.0 + (-2.0 * s).exp());
    p.eval_over_x(xi.clamp(p.lo(), p.hi()))
}

fn fourier(
    p: &Interpolant,
    xi_out: &[f64],
    tau: f64,
    config: &MatrixEvolutionConfig,
    warnings: &mut Vec<String>,
) -> Result<Vec<f64>> {
    let grid = UGrid::spanning(config.u_min, config.u_max, config.size)?;
    let nodes = grid.nodes();
    // Psi = phi / cosh u
    let psi0: Vec<f64> = nodes
        .iter()
        .map(|&s| Ok(phi_at_s(p, s)? / s.cosh()))
        .collect::<Result<_>>()?;
    let mut generator = schroedinger_matrix(mm_params(), &grid, big_g);
    // pseudospectral eigenvalues sit 2 gamma_E below those of K_01
    let shift = 2.0 * EULER_GAMMA - LN_2;
    for j in 0..grid.len() {
        generator[[j, j]] += shift;
    }
    generator *= -tau;
    let propagator = expm(&generator)?;
    let psi = propagator.dot(&Array1::from(psi0));

    let peak = psi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let edge = psi
        .iter()
        .zip(&nodes)
        .filter(|(_, &s)| s < config.u_min + 5.0)
        .fold(0.0f64, |m, (v, _)| m.max(v.abs()));
    if edge > TRUNCATION_TOLERANCE * peak {
        warnings.push(format!(
            "solution reaches the lower grid edge u = {}: |Psi| = {edge:e} against max {peak:e}",
            config.u_min
        ));
    }

    let mut at = Vec::with_capacity(xi_out.len());
    for &xi in xi_out {
        if xi > 0.0 {
            let s = 0.5 * (xi.ln() - (1.0 - xi).ln());
            at.push(s.clamp(config.u_min, config.u_read_max));
        }
    }
    let values = trig_interpolate(&grid, psi.as_slice().unwrap_or(&psi.to_vec()), &at)?;
    let mut out = Vec::with_capacity(xi_out.len());
    let mut it = values.into_iter().zip(at);
    for &xi in xi_out {
        if xi == 0.0 {
            out.push(0.0);
        } else if let Some((v, s)) = it.next() {
            out.push(xi * s.cosh() * v);
        }
    }
    Ok(out)
}

fn legendre(p: &Interpolant, xi_out: &[f64], tau: f64, n: usize, warnings: &mut Vec<String>) -> Result<Vec<f64>> {
    if n < 4 {
        return Err(Error::domain("evolve_matrix", format!("{n} Legendre modes are too few")));
    }
    let phi = |x: f64| p.eval_over_x((0.5 * (1.0 + x)).clamp(p.lo(), p.hi())).unwrap_or(f64::NAN);
    let coeffs = SpectralCoeffs::project(phi, n)?;
    let mut generator: Array2<f64> = galerkin_matrix(mm_params(), n)?.entries;
    for j in 0..n {
        generator[[j, j]] -= LN_2;
    }
    generator *= -tau;
    let evolved = expm(&generator)?.dot(&Array1::from(coeffs.into_vec()));
    let peak = evolved.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tail = evolved.iter().skip(n - 4).fold(0.0f64, |m, v| m.max(v.abs()));
    if tail > TRUNCATION_TOLERANCE * peak {
        warnings.push(format!(
            "Legendre coefficient tail {tail:e} exceeds {TRUNCATION_TOLERANCE:e} of the largest coefficient {peak:e}"
        ));
    }
    let series = SpectralCoeffs::new(evolved.to_vec())?;
    Ok(xi_out.iter().map(|&xi| xi * series.eval(2.0 * xi - 1.0)).collect())
}
