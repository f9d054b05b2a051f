//! The multiplicity evolution du/dtau = -M u in xi-space, by matrix
//! exponential and by Mehler-Fock transform.

mod matrix;
mod profile;
mod rhs;
mod spectral;
mod state;

pub use matrix::{evolve_matrix, evolve_matrix_with, MatrixBasis, MatrixEvolutionConfig, TRUNCATION_TOLERANCE};
pub use profile::Profile;
pub use rhs::mm_rhs;
pub use spectral::{evolve_spectral, evolve_spectral_with};
pub use state::{
    chebyshev_xi_grid, EvolutionBackend, EvolutionState, Interpolant, SolverInfo, DEFAULT_XI_NODES, ORIGIN_SMALLNESS,
};

use crate::error::{Error, Result};

/// Dispatch on the backend with default resolutions.
pub fn evolve(initial: &EvolutionState, tau_final: f64, backend: EvolutionBackend) -> Result<EvolutionState> {
    match backend {
        EvolutionBackend::Matrix => evolve_matrix_with(initial, tau_final, &MatrixEvolutionConfig::default()),
        EvolutionBackend::Legendre => evolve_matrix_with(
            initial,
            tau_final,
            &MatrixEvolutionConfig {
                basis: MatrixBasis::Legendre,
                size: 128,
                ..Default::default()
            },
        ),
        EvolutionBackend::Spectral => evolve_spectral(initial, tau_final),
    }
}

/// max |a - b| / max |b| over grid points with xi in the window.
pub fn relative_deviation(a: &EvolutionState, b: &EvolutionState, window: (f64, f64)) -> Result<f64> {
    if a.xi_grid != b.xi_grid {
        return Err(Error::Precondition("profiles live on different grids".into()));
    }
    let mut diff = 0.0f64;
    let mut scale = 0.0f64;
    for ((&x, &ua), &ub) in a.xi_grid.iter().zip(&a.u_values).zip(&b.u_values) {
        if x >= window.0 && x <= window.1 {
            diff = diff.max((ua - ub).abs());
            scale = scale.max(ub.abs());
        }
    }
    if scale == 0.0 {
        return Err(Error::Precondition("reference profile vanishes on the window".into()));
    }
    Ok(diff / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile() -> EvolutionState {
        EvolutionState::from_profile(|x| x * (1.0 - x), 48).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let s = profile();
        for b in [EvolutionBackend::Matrix, EvolutionBackend::Spectral] {
            let e = evolve(&s, 0.0, b).unwrap();
            assert_eq!(e.u_values, s.u_values);
        }
    }

    #[test]
    fn spectral_round_trip() {
        let s = profile();
        let cfg = crate::exact::MehlerFockConfig::default();
        let c = spectral::forward(&s, &cfg).unwrap();
        let back = spectral::inverse(&c, &s.xi_grid, &cfg, &mut Vec::new()).unwrap();
        for ((x, a), b) in s.xi_grid.iter().zip(&back).zip(&s.u_values) {
            if *x >= 0.05 {
                assert!((a - b).abs() < 1e-4, "{x}");
            }
        }
    }

    #[test]
    fn backends_agree_at_unit_time() {
        let s = profile();
        let m = evolve(&s, 1.0, EvolutionBackend::Matrix).unwrap();
        let sp = evolve(&s, 1.0, EvolutionBackend::Spectral).unwrap();
        let d = relative_deviation(&m, &sp, (0.05, 0.95)).unwrap();
        assert!(d <= 1e-3, "{d}");
        assert!(m.solver.unwrap().warnings.is_empty());
    }

    #[test]
    fn early_slope_matches_rhs() {
        let s = profile();
        let h = 1e-3;
        let m = evolve(&s, h, EvolutionBackend::Matrix).unwrap();
        for j in [10, 24, 40] {
            let xi = s.xi_grid[j];
            let slope = (m.u_values[j] - s.u_values[j]) / h;
            let r = mm_rhs(&s, xi).unwrap();
            assert!((slope - r).abs() < 2e-3 * (1.0 + r.abs()), "{xi}: {slope} vs {r}");
        }
    }

    #[test]
    fn semigroup_and_linearity() {
        let s = EvolutionState::from_profile(|x| x * (1.0 - x), DEFAULT_XI_NODES).unwrap();
        let one = evolve(&s, 1.0, EvolutionBackend::Matrix).unwrap();
        let two = evolve(&one, 0.5, EvolutionBackend::Matrix).unwrap();
        let direct = evolve(&s, 1.5, EvolutionBackend::Matrix).unwrap();
        assert!((two.tau - 1.5).abs() < 1e-15);
        assert!(relative_deviation(&two, &direct, (0.05, 0.95)).unwrap() < 2e-3);

        let t = EvolutionState::from_profile(|x| (2.0 * x).sin() * (1.0 - x), DEFAULT_XI_NODES).unwrap();
        let mix = s.combine(2.0, &t, -0.5).unwrap();
        let lhs = evolve(&mix, 1.0, EvolutionBackend::Matrix).unwrap();
        let rhs = one.combine(2.0, &evolve(&t, 1.0, EvolutionBackend::Matrix).unwrap(), -0.5).unwrap();
        assert!(relative_deviation(&lhs, &rhs, (0.0, 1.0)).unwrap() < 1e-10);
    }

    #[test]
    fn long_time_rate_approaches_band_edge() {
        // the k ~ 0 edge, kappa(0) = -4 log 2, dominates: u ~ exp(4 log 2 tau) tau^{-3/2}
        let s = profile();
        let a = evolve(&s, 7.0, EvolutionBackend::Matrix).unwrap();
        let b = evolve(&s, 8.0, EvolutionBackend::Matrix).unwrap();
        let j = 24;
        let rate = (b.u_values[j] / a.u_values[j]).ln();
        let edge = 4.0 * std::f64::consts::LN_2;
        assert!(rate < edge && (rate - (edge - 1.5 * (8.0f64 / 7.0).ln())).abs() < 0.1, "{rate}");
    }
}
