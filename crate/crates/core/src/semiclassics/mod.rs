//! WKB spectrum, semiclassical modes, endpoint exponents and the
//! linear-potential solution.

mod boundary;
mod linear;
mod wavefunction;
mod wkb;

pub use boundary::{
    boundary_exponents, boundary_samples, fit_boundary_exponent, log_gap_of_u, BoundaryExponents, BoundarySample,
};
pub use linear::{
    linear_potential_bessel, linear_potential_solution, linear_potential_solution_with, LinearPotentialConfig,
};
pub use wavefunction::{semiclassical_wavefunction, SemiclassicalMode};
pub use wkb::{
    bohr_sommerfeld_phase, bohr_sommerfeld_solve, bohr_sommerfeld_solve_with, wkb_eigenvalue, wkb_table,
    wkb_table_csv, write_wkb_table, TurningPoints, WkbSpectrumRow,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{pseudospectral_spectrum, OperatorParams, UGrid};

    #[test]
    #[ignore = "dense 4096-point eigenproblem; run with --ignored"]
    fn fitted_exponent_of_numerical_ground_state() {
        let grid = UGrid::new(60.0, 4096).unwrap();
        let r = pseudospectral_spectrum(OperatorParams::new(2.0, 2.0).unwrap(), &grid, 1).unwrap();
        let s = boundary_samples(&grid, r.eigenvectors.column(0), (10.0, 25.0)).unwrap();
        let d = fit_boundary_exponent(&s).unwrap();
        assert!((d + 0.5).abs() < 0.05, "{d}");
    }

    #[test]
    fn bessel_solution_has_no_log_power() {
        let s: Vec<BoundarySample> = (0..20)
            .map(|j| {
                let u = 4.0 + 0.5 * j as f64;
                BoundarySample {
                    log_gap: log_gap_of_u(u),
                    value: u.cosh() * linear_potential_bessel(0.0, u),
                }
            })
            .collect();
        assert!(fit_boundary_exponent(&s).unwrap().abs() < 0.05);
    }
}
