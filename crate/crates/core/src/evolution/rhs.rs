//! Right-hand side of the multiplicity evolution equation.

use super::state::EvolutionState;
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};

/// int_0^1 deta/(1-eta) [u(eta xi)/eta - u(xi)] + int_xi^1 deta/(1-eta) [u(xi/eta) - u(xi)].
pub fn mm_rhs(state: &EvolutionState, xi: f64) -> Result<f64> {
    let p = state.interpolant()?;
    if !xi.is_finite() {
        return Err(Error::NonFinite { what: "mm_rhs" });
    }
    if !(xi > 0.0 && xi >= p.lo() && xi <= p.hi()) {
        return Err(Error::OutOfRange {
            at: xi,
            lo: p.lo().max(0.0),
            hi: p.hi(),
        });
    }
    let u0 = p.eval(xi)?;
    let cfg = QuadConfig::with_tol(1e-13, 1e-11);
    let mut failure = None;
    let mut guard = |v: Result<f64>| match v {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    // u(eta xi)/eta = xi q(eta xi) with q = u/xi, finite at eta = 0
    let first = integrate(
        |eta| {
            let shrunk = xi * guard(p.eval_over_x(eta * xi));
            (shrunk - u0) / (1.0 - eta)
        },
        0.0,
        1.0,
        &cfg,
    )?;
    let mut guard = |v: Result<f64>| match v {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    };
    let second = if xi < 1.0 {
        integrate(
            |eta| (guard(p.eval((xi / eta).min(1.0))) - u0) / (1.0 - eta),
            xi,
            1.0,
            &cfg,
        )?
        .value
    } else {
        0.0
    };
    match failure {
        Some(e) => Err(e),
        None => Ok(first.value + second),
    }
}
