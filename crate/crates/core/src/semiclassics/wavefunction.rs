//! Semiclassical eigenfunctions A sin(Phi(u) + pi/4) exp(-V(u)/4).

use std::f64::consts::FRAC_PI_4;

use ndarray::ArrayView1;

use super::wkb::wkb_eigenvalue;
use crate::error::{Error, Result};
use crate::operators::{potential, OperatorParams, UGrid};
use crate::quad::{integrate, QuadConfig};
use crate::specfun::consts::EULER_GAMMA;
use crate::specfun::phase_integral;

// exp(-V/2) has fallen below e^{-TAIL} outside the normalization interval
const TAIL: f64 = 40.0;

/// The n-th semiclassical mode, normalized to int Psi^2 du = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemiclassicalMode {
    pub n: usize,
    pub params: OperatorParams,
    pub kappa_prime: f64,
    pub amplitude: f64,
}

impl SemiclassicalMode {
    pub fn new(n: usize, alpha: f64, beta: f64) -> Result<Self> {
        let params = OperatorParams::new(alpha, beta)?;
        let kappa_prime = wkb_eigenvalue(n, alpha, beta)? - 2.0 * EULER_GAMMA;
        let mut mode = SemiclassicalMode {
            n,
            params,
            kappa_prime,
            amplitude: 1.0,
        };
        let lo = -TAIL / alpha - 2.0;
        let hi = TAIL / beta + 2.0;
        let cfg = QuadConfig::with_tol(1e-14, 1e-12);
        let norm = integrate(|u| mode.raw(u).map_or(f64::NAN, |v| v * v), lo, hi, &cfg)?.value;
        if !(norm > 0.0) {
            return Err(Error::NonFinite { what: "SemiclassicalMode" });
        }
        mode.amplitude = norm.sqrt().recip();
        Ok(mode)
    }

    fn raw(&self, u: f64) -> Result<f64> {
        let OperatorParams { alpha, beta } = self.params;
        let phase = phase_integral(u, alpha, beta, self.kappa_prime)?;
        Ok((phase + FRAC_PI_4).sin() * (-0.25 * potential(self.params, u)).exp())
    }

    /// Psi(u).
    pub fn eval(&self, u: f64) -> Result<f64> {
        Ok(self.amplitude * self.raw(u)?)
    }

    /// phi(x) = cosh(u) Psi(u) at x = tanh u; unit norm in L2(-1, 1).
    pub fn eval_x(&self, x: f64) -> Result<f64> {
        if !(x > -1.0 && x < 1.0) {
            return Err(Error::domain("SemiclassicalMode::eval_x", format!("x = {x} outside (-1, 1)")));
        }
        let u = x.atanh();
        Ok(u.cosh() * self.eval(u)?)
    }

    /// |<Psi_sc, v>| for grid samples v of unit Euclidean norm, with Psi_sc
    /// normalized on the same grid.
    pub fn overlap(&self, grid: &UGrid, samples: ArrayView1<f64>) -> Result<f64> {
        if samples.len() != grid.len() {
            return Err(Error::Precondition(format!(
                "{} samples on a {}-point grid",
                samples.len(),
                grid.len()
            )));
        }
        let mut dot = 0.0;
        let mut ss = 0.0;
        let mut vv = 0.0;
        for (u, v) in grid.nodes().into_iter().zip(samples) {
            let s = self.eval(u)?;
            dot += s * v;
            ss += s * s;
            vv += v * v;
        }
        Ok(dot.abs() / (ss * vv).sqrt())
    }
}

/// Psi_n(u) of the semiclassical mode.
pub fn semiclassical_wavefunction(n: usize, alpha: f64, beta: f64, u: f64) -> Result<f64> {
    SemiclassicalMode::new(n, alpha, beta)?.eval(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::orthonormal_legendre;
    use std::f64::consts::PI;

    #[test]
    fn legendre_form_for_one_one() {
        for n in [0, 3, 8] {
            let m = SemiclassicalMode::new(n, 1.0, 1.0).unwrap();
            let a1 = (PI / 2.0 + 1.0 / (2 * n + 1) as f64).powf(-0.5);
            assert!((m.amplitude - a1).abs() < 1e-10, "n {n}");
            for u in [-3.0f64, -0.4, 0.0, 1.1, 5.0] {
                let lg = a1 * (((2 * n + 1) as f64) * u.exp().atan() + FRAC_PI_4).sin() / u.cosh().sqrt();
                assert!((m.eval(u).unwrap() - lg).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sine_form_for_two_two() {
        for n in [0, 4, 11] {
            let m = SemiclassicalMode::new(n, 2.0, 2.0).unwrap();
            let a2 = (1.0 + (2.0 / PI) / (2 * n + 1) as f64).powf(-0.5);
            assert!((m.amplitude - a2).abs() < 1e-10, "n {n}");
            for x in [-0.95, -0.3, 0.2, 0.99] {
                let sf = a2 * (PI / 2.0 * (n as f64 + 0.5) * (x + 1.0) + FRAC_PI_4).sin();
                assert!((m.eval_x(x).unwrap() - sf).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn large_n_legendre_asymptotics() {
        let n = 40;
        let m = SemiclassicalMode::new(n, 1.0, 1.0).unwrap();
        for x in [-0.8, -0.1, 0.35, 0.8] {
            let p = orthonormal_legendre(n + 1, x)[n];
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let sc = sign * m.eval_x(x).unwrap();
            assert!((sc - p).abs() < 0.02 * (1.0 - x * x).powf(-0.25), "x {x}: {sc} vs {p}");
        }
    }

    #[test]
    fn general_parameters_normalize() {
        let m = SemiclassicalMode::new(3, 0.7, 2.5).unwrap();
        let cfg = QuadConfig::default();
        let norm = integrate(|u| m.eval(u).unwrap().powi(2), -70.0, 20.0, &cfg).unwrap().value;
        assert!((norm - 1.0).abs() < 1e-9);
        assert!(SemiclassicalMode::new(0, 0.0, 1.0).is_err());
    }
}
