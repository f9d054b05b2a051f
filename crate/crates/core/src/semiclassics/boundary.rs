//! Endpoint behaviour phi ~ |log(1 - x)|^{d_beta}.

use std::f64::consts::LN_2;

use ndarray::ArrayView1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::UGrid;

const MIN_SAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryExponents {
    pub d_alpha: f64,
    pub d_beta: f64,
}

/// d = 1/alpha - 1 at x = -1 and 1/beta - 1 at x = 1.
pub fn boundary_exponents(alpha: f64, beta: f64) -> Result<BoundaryExponents> {
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::NonFinite { what: "boundary_exponents" });
    }
    if alpha <= 0.0 || beta <= 0.0 {
        return Err(Error::domain(
            "boundary_exponents",
            format!("alpha = {alpha}, beta = {beta} must be positive"),
        ));
    }
    Ok(BoundaryExponents {
        d_alpha: 1.0 / alpha - 1.0,
        d_beta: 1.0 / beta - 1.0,
    })
}

/// phi at a point near x = 1, located by |log(1 - x)|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundarySample {
    pub log_gap: f64,
    pub value: f64,
}

fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// -log(1 - tanh u), without forming 1 - tanh u.
pub fn log_gap_of_u(u: f64) -> f64 {
    softplus(2.0 * u) - LN_2
}

/// Samples phi = cosh(u) Psi(u) of a pseudospectral eigenvector with u in
/// the open window.
pub fn boundary_samples(grid: &UGrid, psi: ArrayView1<f64>, window: (f64, f64)) -> Result<Vec<BoundarySample>> {
    if psi.len() != grid.len() {
        return Err(Error::Precondition(format!(
            "{} samples on a {}-point grid",
            psi.len(),
            grid.len()
        )));
    }
    Ok(grid
        .nodes()
        .into_iter()
        .zip(psi)
        .filter(|(u, _)| *u > window.0 && *u < window.1)
        .map(|(u, &v)| BoundarySample {
            log_gap: log_gap_of_u(u),
            value: u.cosh() * v,
        })
        .collect())
}

/// Least-squares slope of log|phi| against log|log(1 - x)|.
pub fn fit_boundary_exponent(samples: &[BoundarySample]) -> Result<f64> {
    let points: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.log_gap > 0.0 && s.value != 0.0 && s.value.is_finite() && s.log_gap.is_finite())
        .map(|s| (s.log_gap.ln(), s.value.abs().ln()))
        .collect();
    if points.len() < MIN_SAMPLES {
        return Err(Error::WindowTooSmall {
            found: points.len(),
            needed: MIN_SAMPLES,
        });
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if !(sxx > 0.0) {
        return Err(Error::Precondition("fit window has no spread in log|log(1 - x)|".into()));
    }
    Ok(sxy / sxx)
}
