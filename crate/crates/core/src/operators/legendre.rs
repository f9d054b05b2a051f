//! Orthonormal Legendre basis P^_n = sqrt(n + 1/2) P_n.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::GaussRule;

/// Values P^_0(x) .. P^_{n-1}(x), written into `out`.
pub fn orthonormal_legendre_into(x: f64, out: &mut [f64]) {
    let n = out.len();
    if n == 0 {
        return;
    }
    // recurrence directly on the normalized functions
    out[0] = std::f64::consts::FRAC_1_SQRT_2;
    if n == 1 {
        return;
    }
    out[1] = 1.5f64.sqrt() * x;
    for k in 1..n - 1 {
        let kf = k as f64;
        let a = ((2.0 * kf + 1.0) * (2.0 * kf + 3.0)).sqrt() / (kf + 1.0);
        let b = kf / (kf + 1.0) * ((2.0 * kf + 3.0) / (2.0 * kf - 1.0)).sqrt();
        out[k + 1] = a * x * out[k] - b * out[k - 1];
    }
}

pub fn orthonormal_legendre(n: usize, x: f64) -> Vec<f64> {
    let mut v = vec![0.0; n];
    orthonormal_legendre_into(x, &mut v);
    v
}

/// P_n(x), P_n'(x), P_n''(x) for the standard (unnormalized) polynomial.
pub fn legendre_jet(n: usize, x: f64) -> (f64, f64, f64) {
    let (p, dp) = crate::quad::legendre_with_derivative(n, x);
    let nf = n as f64;
    let d2 = if (1.0 - x * x).abs() < 1e-300 {
        // P''(+-1) = (+-1)^n (n-1)n(n+1)(n+2)/8
        let s = if x > 0.0 || n.is_multiple_of(2) { 1.0 } else { -1.0 };
        s * (nf - 1.0) * nf * (nf + 1.0) * (nf + 2.0) / 8.0
    } else {
        (2.0 * x * dp - nf * (nf + 1.0) * p) / (1.0 - x * x)
    };
    (p, dp, d2)
}

/// Coefficients in the orthonormal Legendre basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCoeffs {
    coeffs: Vec<f64>,
}

impl SpectralCoeffs {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("coefficient vector is empty".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite { what: "SpectralCoeffs" });
        }
        Ok(SpectralCoeffs { coeffs })
    }

    /// Gauss-Legendre projection of `f` onto the first `n` basis functions.
    pub fn project(f: impl Fn(f64) -> f64, n: usize) -> Result<Self> {
        let rule = GaussRule::new(n + 32);
        let mut coeffs = vec![0.0; n];
        let mut basis = vec![0.0; n];
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let fx = f(*x);
            orthonormal_legendre_into(*x, &mut basis);
            for (c, b) in coeffs.iter_mut().zip(&basis) {
                *c += w * fx * b;
            }
        }
        SpectralCoeffs::new(coeffs)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.coeffs
    }

    /// Synthesized value sum_n c_n P^_n(x).
    pub fn eval(&self, x: f64) -> f64 {
        let basis = orthonormal_legendre(self.coeffs.len(), x);
        basis.iter().zip(&self.coeffs).map(|(b, c)| b * c).sum()
    }
}
