//! The operator family K_ab, its discretizations and eigensolvers.

mod galerkin;
mod legendre;
mod monomial;
mod pointwise;
mod pseudo;
mod schroedinger;
mod spectrum;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use galerkin::{
    galerkin_matrix, galerkin_matrix_with, log_matrix_elements, log_matrix_elements_exact, Endpoint,
    GalerkinMatrix, LogElements,
};
pub use legendre::{legendre_jet, orthonormal_legendre, orthonormal_legendre_into, SpectralCoeffs};
pub use monomial::{k11_monomial_eigenvectors, k11_monomial_matrix, legendre_monomial_coeffs, monomial_action_k11};
pub use pointwise::apply_k_pointwise;
pub use pseudo::{apply_kinetic, kinetic_column, potential, pseudospectral_matrix, trig_interpolate, UGrid};
pub(crate) use pseudo::schroedinger_matrix;
pub use schroedinger::{schroedinger_map, MapDirection};
pub use spectrum::{
    eigendecompose, galerkin_spectrum, pseudospectral_spectrum, Backend, SpectralResult, SpectrumRecord,
    Truncation, RESIDUAL_TOLERANCE,
};

/// The pair (alpha, beta) selecting a member of the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    pub alpha: f64,
    pub beta: f64,
}

impl OperatorParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::NonFinite { what: "OperatorParams" });
        }
        if alpha < 0.0 || beta < 0.0 {
            return Err(Error::domain(
                "OperatorParams",
                format!("alpha = {alpha}, beta = {beta} must be non-negative"),
            ));
        }
        Ok(OperatorParams { alpha, beta })
    }

    /// Both endpoint potentials confine, so the spectrum is discrete.
    pub fn is_confining(&self) -> bool {
        self.alpha > 0.0 && self.beta > 0.0
    }

    /// Mirror image under x -> -x.
    pub fn swapped(&self) -> Self {
        OperatorParams {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    pub(crate) fn require_confining(&self) -> Result<()> {
        if self.is_confining() {
            Ok(())
        } else {
            Err(Error::Confinement {
                alpha: self.alpha,
                beta: self.beta,
            })
        }
    }
}

/// h_n = 1 + 1/2 + ... + 1/n, with h_0 = 0.
pub fn harmonic(n: usize) -> f64 {
    (1..=n).fold(0.0, |acc, j| acc + 1.0 / j as f64)
}

/// h_0 .. h_{n-1}.
pub fn harmonic_table(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut acc = 0.0;
    for j in 0..n {
        if j > 0 {
            acc += 1.0 / j as f64;
        }
        out.push(acc);
    }
    out
}
