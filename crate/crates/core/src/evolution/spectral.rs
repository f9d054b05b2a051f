//! Evolution through the Mehler-Fock transform: c(k) -> exp(-kappa(k) tau) c(k).

use super::state::{EvolutionBackend, EvolutionState, SolverInfo};
use crate::error::{Error, Result};
use crate::exact::{mehler_fock_forward, mehler_fock_inverse_checked, MehlerFockCoeffs, MehlerFockConfig};
use crate::specfun::lipatov_kappa;

pub fn evolve_spectral(initial: &EvolutionState, tau_final: f64) -> Result<EvolutionState> {
    evolve_spectral_with(initial, tau_final, &MehlerFockConfig::default())
}

pub fn evolve_spectral_with(
    initial: &EvolutionState,
    tau_final: f64,
    config: &MehlerFockConfig,
) -> Result<EvolutionState> {
    initial.validate()?;
    if !tau_final.is_finite() {
        return Err(Error::NonFinite { what: "evolve_spectral" });
    }
    if tau_final < 0.0 {
        return Err(Error::domain("evolve_spectral", format!("tau = {tau_final} is negative")));
    }
    let mut info = SolverInfo {
        backend: EvolutionBackend::Spectral,
        resolution: config.k_grid()?.len(),
        warnings: Vec::new(),
    };
    if tau_final == 0.0 {
        return Ok(initial.clone().with_solver(info));
    }
    let coeffs = forward(initial, config)?;
    let damped = coeffs.scaled(|k| (-lipatov_kappa(k) * tau_final).exp());
    let u_values = inverse(&damped, &initial.xi_grid, config, &mut info.warnings)?;
    for w in &info.warnings {
        log::warn!("{w}");
    }
    let mut out = EvolutionState::new(initial.tau + tau_final, initial.xi_grid.clone(), u_values)?;
    out.solver = Some(info);
    Ok(out)
}

/// c(k) of the profile, interpolated between its samples.
pub fn forward(state: &EvolutionState, config: &MehlerFockConfig) -> Result<MehlerFockCoeffs> {
    let p = state.interpolant()?;
    let (lo, hi) = (p.lo(), p.hi());
    mehler_fock_forward(|xi| p.eval(xi.clamp(lo, hi)).unwrap_or(f64::NAN), config)
}

/// u at the given xi; xi = 0 maps to 0.
pub fn inverse(
    coeffs: &MehlerFockCoeffs,
    xi: &[f64],
    config: &MehlerFockConfig,
    warnings: &mut Vec<String>,
) -> Result<Vec<f64>> {
    let mut flagged = 0;
    let mut out = Vec::with_capacity(xi.len());
    for &x in xi {
        if x == 0.0 {
            out.push(0.0);
            continue;
        }
        let est = mehler_fock_inverse_checked(coeffs, x, config)?;
        flagged += est.under_resolved as usize;
        out.push(est.value);
    }
    if flagged > 0 {
        warnings.push(format!("k-grid under-resolved at {flagged} of {} points", xi.len()));
    }
    Ok(out)
}
