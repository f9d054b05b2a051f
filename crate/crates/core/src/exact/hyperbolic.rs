//! K_01 as the radial Laplacian of the hyperbolic plane, cosh r = 2/xi - 1.

use crate::error::{Error, Result};
use crate::quad::GaussRule;
use crate::specfun::{acosh_stable, conical_legendre_on};

// finite differences need h well below the smallest radius and the scale 1
const MAX_STEP: f64 = 1e-2;

pub fn r_from_xi(xi: f64) -> Result<f64> {
    if !xi.is_finite() {
        return Err(Error::NonFinite { what: "r_from_xi" });
    }
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(Error::domain("r_from_xi", format!("xi = {xi} outside (0, 1]")));
    }
    Ok(acosh_stable(2.0 / xi - 1.0))
}

pub fn xi_from_r(r: f64) -> f64 {
    2.0 / (1.0 + r.cosh())
}

/// Max over `r_grid` of |(D_r + 1/4 + k^2) P_{-1/2+ik}(cosh r)| with
/// D_r = d^2/dr^2 + coth(r) d/dr taken by five-point differences of step h.
pub fn hyperbolic_similarity_check(k: f64, r_grid: &[f64], h: f64) -> Result<f64> {
    if !k.is_finite() || !h.is_finite() || r_grid.iter().any(|r| !r.is_finite()) {
        return Err(Error::NonFinite { what: "hyperbolic_similarity_check" });
    }
    if k < 0.0 {
        return Err(Error::domain("hyperbolic_similarity_check", format!("k = {k} < 0")));
    }
    if r_grid.is_empty() {
        return Err(Error::Precondition("empty r-grid".into()));
    }
    let r_min = r_grid.iter().cloned().fold(f64::INFINITY, f64::min);
    let r_max = r_grid.iter().cloned().fold(0.0, f64::max);
    if r_min <= 0.0 {
        return Err(Error::domain("hyperbolic_similarity_check", format!("r = {r_min} must be positive")));
    }
    if !(h > 0.0 && h <= MAX_STEP && 4.0 * h < r_min) {
        return Err(Error::Precondition(format!(
            "step h = {h} too coarse for the r-grid (need 0 < h <= {MAX_STEP} and 4h < {r_min})"
        )));
    }
    // one fixed rule keeps the sampled function smooth in r
    let rule = GaussRule::new(2 * (64 + (1.5 * k * (r_max + 2.0 * h)).ceil() as usize));
    let p = |r: f64| conical_legendre_on(&rule, k, r.cosh());
    let mut worst = 0.0f64;
    for &r in r_grid {
        let f = [p(r - 2.0 * h), p(r - h), p(r), p(r + h), p(r + 2.0 * h)];
        let d1 = (f[0] - f[4] + 8.0 * (f[3] - f[1])) / (12.0 * h);
        let d2 = (16.0 * (f[1] + f[3]) - (f[0] + f[4]) - 30.0 * f[2]) / (12.0 * h * h);
        let residual = d2 + d1 / r.tanh() + (0.25 + k * k) * f[2];
        worst = worst.max(residual.abs());
    }
    Ok(worst)
}
