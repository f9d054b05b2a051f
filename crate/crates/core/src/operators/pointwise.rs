//! Direct evaluation of (K_ab phi)(x) from the defining integral.

use super::OperatorParams;
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};

// the exponential endpoint maps stop where 1 +- y would round to zero
const ENDPOINT_GAP: f64 = 4.0 * f64::EPSILON;

fn endpoint_span(len: f64) -> f64 {
    (len / ENDPOINT_GAP).ln().max(0.0)
}

// special-function inputs carry rounding noise near 1e-13 relative; divided
// by |x - y| it sets a floor near 1e-10 on the integrals
fn cfg(scale: f64) -> QuadConfig {
    QuadConfig {
        abs_tol: 1e-9 * scale.max(1.0),
        rel_tol: 1e-11,
        max_intervals: 4000,
    }
}

/// (K_ab phi)(x) = int (phi(x) - phi(y)) / |x - y| dy
///                 + [(1 - alpha) log(1 + x) + (1 - beta) log(1 - x)] phi(x).
///
/// The symmetric window |y - x| < d/2 is folded onto itself so the
/// integrand stays bounded; the two remaining pieces use y = -1 + c e^{-w}
/// and y = 1 - c e^{-w}, which resolve integrable endpoint singularities of phi.
pub fn apply_k_pointwise(params: OperatorParams, phi: impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite { what: "apply_k_pointwise" });
    }
    if x <= -1.0 || x >= 1.0 {
        return Err(Error::domain("apply_k_pointwise", format!("x = {x} must lie in (-1, 1)")));
    }
    let fx = phi(x);
    if !fx.is_finite() {
        return Err(Error::NonFinite { what: "apply_k_pointwise: phi(x)" });
    }
    let h = 0.5 * (1.0 - x.abs());
    let cfg = cfg(fx.abs());

    let near = integrate(|s: f64| (2.0 * fx - phi(x + s) - phi(x - s)) / s, 0.0, h, &cfg)?.value;

    let left_len = x - h + 1.0;
    let left = integrate(
        |w: f64| {
            let e = (-w).exp();
            let y = -1.0 + left_len * e;
            (fx - phi(y)) / (x - y) * left_len * e
        },
        0.0,
        endpoint_span(left_len),
        &cfg,
    )?
    .value;

    let right_len = 1.0 - x - h;
    let right = integrate(
        |w: f64| {
            let e = (-w).exp();
            let y = 1.0 - right_len * e;
            (fx - phi(y)) / (y - x) * right_len * e
        },
        0.0,
        endpoint_span(right_len),
        &cfg,
    )?
    .value;

    let potential = (1.0 - params.alpha) * x.ln_1p() + (1.0 - params.beta) * (-x).ln_1p();
    Ok(near + left + right + potential * fx)
}
