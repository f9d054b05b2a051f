//! Digamma, trigamma and log-gamma for complex arguments.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

// B_{2k} / (2k), k = 1..7
const PSI_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

// B_{2k}, k = 1..7
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

const SHIFT_TARGET: f64 = 10.0;

/// Digamma function psi(z) = d/dz log Gamma(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite { what: "digamma" });
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole {
            what: "digamma",
            at: format!("{}", z.re),
        });
    }
    Ok(psi(z))
}

/// Unchecked digamma for arguments known to be finite and away from poles.
pub(crate) fn psi(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        return psi(Complex64::new(1.0, 0.0) - z) - PI * cot_pi(z);
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TARGET {
        acc -= w.inv();
        w += 1.0;
    }
    let w2 = (w * w).inv();
    let mut pw = w2;
    let mut series = Complex64::new(0.0, 0.0);
    for c in PSI_ASYMPTOTIC {
        series += pw * c;
        pw *= w2;
    }
    acc + w.ln() - 0.5 * w.inv() - series
}

/// cot(pi z) without overflow for large imaginary parts.
fn cot_pi(z: Complex64) -> Complex64 {
    let a = 2.0 * PI * z.re;
    let b = 2.0 * PI * z.im;
    if b.abs() > 40.0 {
        return Complex64::new(0.0, -b.signum());
    }
    let den = b.cosh() - a.cos();
    Complex64::new(a.sin() / den, -b.sinh() / den)
}

/// Trigamma function psi'(z), for Re z > 0.
pub fn trigamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite { what: "trigamma" });
    }
    if z.re <= 0.0 {
        return Err(Error::domain("trigamma", format!("Re z = {} must be positive", z.re)));
    }
    Ok(psi1(z))
}

pub(crate) fn psi1(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TARGET {
        acc += (w * w).inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pw = inv2 * inv;
    let mut series = Complex64::new(0.0, 0.0);
    for b in BERNOULLI {
        series += pw * b;
        pw *= inv2;
    }
    acc + inv + 0.5 * inv2 + series
}

/// Principal-branch-continuous log Gamma(z) for Re z > 0.
///
/// The imaginary part is continuous along vertical lines, which is what the
/// Fourier-space solutions need.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite { what: "ln_gamma" });
    }
    if z.re <= 0.0 {
        return Err(Error::domain("ln_gamma", format!("Re z = {} must be positive", z.re)));
    }
    Ok(lngamma_pos(z))
}

pub(crate) fn lngamma_pos(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TARGET {
        acc -= w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pw = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for (k, b) in BERNOULLI.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        series += pw * (b / (two_k * (two_k - 1.0)));
        pw *= inv2;
    }
    acc + (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series
}

/// log Gamma(x) for real x > 0.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    Ok(ln_gamma(Complex64::new(x, 0.0))?.re)
}

/// log B(a, b) for a, b > 0.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    Ok(ln_gamma_real(a)? + ln_gamma_real(b)? - ln_gamma_real(a + b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::consts::{EULER_GAMMA, LN_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn digamma_special_values() {
        assert!((digamma(c(1.0, 0.0)).unwrap().re + EULER_GAMMA).abs() < 1e-15);
        assert!((digamma(c(2.0, 0.0)).unwrap().re - (1.0 - EULER_GAMMA)).abs() < 1e-15);
        let half = digamma(c(0.5, 0.0)).unwrap().re;
        assert!((half - (-EULER_GAMMA - 2.0 * LN_2)).abs() < 1e-15);
        // mpmath: digamma(0.25 + 3i)
        let v = digamma(c(0.25, 3.0)).unwrap();
        assert!((v.re - 1.0974491495224779).abs() < 1e-13, "{v}");
        assert!((v.im - 1.6547305473136174).abs() < 1e-13, "{v}");
    }

    #[test]
    fn digamma_reflection_region() {
        // mpmath: digamma(-2.5 + 0.5i)
        let v = digamma(c(-2.5, 0.5)).unwrap();
        assert!((v.re - 1.1165080219699073).abs() < 1e-12, "{v}");
        assert!((v.im - 2.7175825969005915).abs() < 1e-12, "{v}");
    }

    #[test]
    fn digamma_poles_and_nan() {
        assert!(matches!(digamma(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(digamma(c(-3.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(digamma(c(f64::NAN, 0.0)), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn trigamma_values() {
        let pi2 = PI * PI;
        assert!((trigamma(c(1.0, 0.0)).unwrap().re - pi2 / 6.0).abs() < 1e-14);
        assert!((trigamma(c(0.5, 0.0)).unwrap().re - pi2 / 2.0).abs() < 1e-14);
        // mpmath: psi(1, 0.5 + 2i)
        let v = trigamma(c(0.5, 2.0)).unwrap();
        assert!((v.re - 6.883689881738828e-5).abs() < 1e-14, "{v}");
        assert!((v.im + 0.5116211581880996).abs() < 1e-14, "{v}");
    }

    #[test]
    fn ln_gamma_values() {
        assert!(ln_gamma_real(1.0).unwrap().abs() < 1e-15);
        assert!((ln_gamma_real(0.5).unwrap() - 0.5 * PI.ln()).abs() < 4e-15);
        assert!((ln_gamma_real(10.0).unwrap() - 362880f64.ln()).abs() < 1e-13);
        // mpmath: loggamma(0.5 + 20i), continuous branch
        let v = ln_gamma(c(0.5, 20.0)).unwrap();
        assert!((v.re + 30.49698800269326).abs() < 1e-12, "{v}");
        assert!((v.im - 39.91672910847333).abs() < 1e-12, "{v}");
        assert!((ln_beta(0.5, 0.5).unwrap() - PI.ln()).abs() < 1e-14);
    }
}
