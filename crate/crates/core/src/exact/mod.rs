//! The exactly solvable members K_11, K_00 and K_01.

mod diffop;
mod hyperbolic;
mod kzero;
mod mehler_fock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{conical_legendre, g_dispersion, lipatov_kappa, Complex};

pub use diffop::{
    apply_c, apply_c_jet, apply_ell, apply_ell_factored, apply_l, apply_l_jet, commutator_ledger, CommutatorLedger,
    DiffOperatorL, LedgerRow, FD_RELATIVE_STEP,
};
pub use hyperbolic::{hyperbolic_similarity_check, r_from_xi, xi_from_r};
pub use kzero::{verify_g_of_ell, GOfEllConfig};
pub use mehler_fock::{
    mehler_fock_forward, mehler_fock_inverse, mehler_fock_inverse_checked, InverseEstimate, MehlerFockCoeffs,
    MehlerFockConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeFamily {
    /// Eigenfunctions of K_01, dispersion kappa(k) + log 2.
    Mm,
    /// Plane waves of K_00, dispersion g(k).
    K00,
}

/// A continuum eigenfunction labelled by its wavenumber.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuumMode {
    pub k: f64,
    pub family: ModeFamily,
    pub dispersion: f64,
}

impl ContinuumMode {
    pub fn new(family: ModeFamily, k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::NonFinite { what: "ContinuumMode" });
        }
        if k < 0.0 {
            return Err(Error::domain("ContinuumMode", format!("k = {k} must be non-negative")));
        }
        let dispersion = match family {
            ModeFamily::Mm => lipatov_kappa(k),
            ModeFamily::K00 => g_dispersion(k),
        };
        Ok(ContinuumMode { k, family, dispersion })
    }

    /// Eigenvalue of the operator whose mode this is: K_01 or K_00.
    pub fn eigenvalue(&self) -> f64 {
        match self.family {
            ModeFamily::Mm => self.dispersion + std::f64::consts::LN_2,
            ModeFamily::K00 => self.dispersion,
        }
    }

    /// Real mode value at x in (-1, 1); the K00 family returns its real part.
    pub fn value(&self, x: f64) -> Result<f64> {
        match self.family {
            ModeFamily::Mm => mm_eigenfunction(self.k, 0.5 * (1.0 + x)),
            ModeFamily::K00 => Ok(k00_eigenfunction(self.k, x)?.re),
        }
    }
}

/// phi(k, xi) = xi^{-1/2+ik} F(1/2+ik, 1/2+ik; 1; 1-xi) = P_{-1/2+ik}(2/xi - 1) / xi.
pub fn mm_eigenfunction(k: f64, xi: f64) -> Result<f64> {
    if !xi.is_finite() || !k.is_finite() {
        return Err(Error::NonFinite { what: "mm_eigenfunction" });
    }
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(Error::domain("mm_eigenfunction", format!("xi = {xi} outside (0, 1]")));
    }
    Ok(conical_legendre(k, 2.0 / xi - 1.0)? / xi)
}

/// phi(k, x) = (1+x)^{(ik-1)/2} (1-x)^{-(ik+1)/2}.
pub fn k00_eigenfunction(k: f64, x: f64) -> Result<Complex> {
    if !x.is_finite() || !k.is_finite() {
        return Err(Error::NonFinite { what: "k00_eigenfunction" });
    }
    if x <= -1.0 || x >= 1.0 {
        return Err(Error::domain("k00_eigenfunction", format!("x = {x} must lie in (-1, 1)")));
    }
    let (lp, lm) = (x.ln_1p(), (-x).ln_1p());
    let modulus = (-0.5 * (lp + lm)).exp();
    Ok(Complex::from_polar(modulus, 0.5 * k * (lp - lm)))
}
