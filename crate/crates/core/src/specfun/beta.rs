//! Incomplete beta integrals and the semiclassical phase.

use super::gamma::ln_beta;
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};

fn quad_cfg() -> QuadConfig {
    QuadConfig::with_tol(1e-300, 1e-14)
}

/// int_0^y s^{a-1} ds-type piece with the power singularity removed by
/// w = s^a when a < 1. `other` is the exponent at the far end.
fn near_zero(a: f64, other: f64, upper: f64) -> Result<f64> {
    if upper <= 0.0 {
        return Ok(0.0);
    }
    if a < 1.0 {
        let w_max = upper.powf(a);
        let r = integrate(
            |w: f64| (1.0 - w.powf(1.0 / a)).powf(other - 1.0),
            0.0,
            w_max,
            &quad_cfg(),
        )?;
        Ok(r.value / a)
    } else {
        let r = integrate(
            |s: f64| s.powf(a - 1.0) * (1.0 - s).powf(other - 1.0),
            0.0,
            upper,
            &quad_cfg(),
        )?;
        Ok(r.value)
    }
}

/// Unregularized incomplete beta B(y; a, b) = int_0^y s^{a-1}(1-s)^{b-1} ds.
///
/// `one_minus_y` is passed separately so that y within 1e-16 of one keeps
/// its precision.
pub fn incomplete_beta(y: f64, one_minus_y: f64, a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain("incomplete_beta", format!("a = {a}, b = {b} must be positive")));
    }
    if !(0.0..=1.0).contains(&y) {
        return Err(Error::domain("incomplete_beta", format!("y = {y} outside [0, 1]")));
    }
    if y <= 0.5 {
        return near_zero(a, b, y);
    }
    let lower = near_zero(a, b, 0.5)?;
    // upper piece from the other end: int_{1-y}^{1/2} v^{b-1}(1-v)^{a-1} dv
    let full_upper = near_zero(b, a, 0.5)?;
    let missing = near_zero(b, a, one_minus_y)?;
    Ok(lower + full_upper - missing)
}

/// int_{-inf}^{u} exp((kappa' - V(u'))/2) du' with
/// V = -alpha log(1 + tanh u') - beta log(1 - tanh u').
pub fn phase_integral(u: f64, alpha: f64, beta: f64, kappa_prime: f64) -> Result<f64> {
    if u.is_nan() || !alpha.is_finite() || !beta.is_finite() || !kappa_prime.is_finite() {
        return Err(Error::NonFinite { what: "phase_integral" });
    }
    if alpha <= 0.0 {
        return Err(Error::Divergent(format!(
            "phase integral diverges at u -> -inf for alpha = {alpha}"
        )));
    }
    if beta <= 0.0 {
        return Err(Error::domain("phase_integral", format!("beta = {beta} must be positive")));
    }
    if u == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    // s = tanh u', y = (1 + s)/2 turns the integrand into a beta weight
    let y = 1.0 / (1.0 + (-2.0 * u).exp());
    let one_minus_y = 1.0 / (1.0 + (2.0 * u).exp());
    let (a, b) = (0.5 * alpha, 0.5 * beta);
    let ib = incomplete_beta(y, one_minus_y, a, b)?;
    Ok((0.5 * kappa_prime).exp() * (a + b - 1.0).exp2() * ib)
}

/// Closed form of the phase integral over the whole line.
pub fn phase_integral_total(alpha: f64, beta: f64, kappa_prime: f64) -> Result<f64> {
    if alpha <= 0.0 {
        return Err(Error::Divergent(format!(
            "phase integral diverges at u -> -inf for alpha = {alpha}"
        )));
    }
    if beta <= 0.0 {
        return Err(Error::Divergent(format!(
            "phase integral diverges at u -> +inf for beta = {beta}"
        )));
    }
    let (a, b) = (0.5 * alpha, 0.5 * beta);
    Ok((0.5 * kappa_prime + ln_beta(a, b)?).exp() * (a + b - 1.0).exp2())
}
