//! Dispersion relations of the continuum modes and the kinetic term G(p).

use num_complex::Complex64;

use super::consts::{EULER_GAMMA, LN_2, ZETA3};
use super::gamma::{psi, psi1};
use crate::error::{Error, Result};

const DIRECT_SUM_TERMS: usize = 24;
const EXCESS_RANGE: f64 = 4.0;

// B_{2k} / (2k), k = 2..7, for the tail of the digamma difference
const TAIL_COEFFS: [f64; 6] = [
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Lipatov function kappa(k) = psi(1/2 + ik) + psi(1/2 - ik) - 2 psi(1).
pub fn lipatov_kappa(k: f64) -> f64 {
    let k = k.abs();
    if k <= EXCESS_RANGE {
        -4.0 * LN_2 + lipatov_excess(k)
    } else {
        2.0 * psi(Complex64::new(0.5, k)).re + 2.0 * EULER_GAMMA
    }
}

/// kappa(k) - kappa(0), computed without cancellation for small k.
///
/// Sums 2 k^2 / ((n+1/2)((n+1/2)^2 + k^2)) directly and closes the tail with
/// the difference of asymptotic digamma expansions.
pub fn lipatov_excess(k: f64) -> f64 {
    let k = k.abs();
    if k > EXCESS_RANGE {
        return lipatov_kappa(k) + 4.0 * LN_2;
    }
    let k2 = k * k;
    let mut sum = 0.0;
    for n in (0..DIRECT_SUM_TERMS).rev() {
        let a = n as f64 + 0.5;
        sum += k2 / (a * (a * a + k2));
    }
    let a = DIRECT_SUM_TERMS as f64 + 0.5;
    let a2 = a * a;
    let r2 = a2 + k2;
    let mut tail = 0.5 * (k2 / a2).ln_1p();
    tail += 0.5 * k2 / (a * r2);
    tail += (3.0 * a2 * k2 + k2 * k2) / (12.0 * a2 * r2 * r2);
    let z = Complex64::new(a, k);
    let zi2 = (z * z).inv();
    let ai2 = 1.0 / a2;
    let mut zp = zi2 * zi2;
    let mut ap = ai2 * ai2;
    for c in TAIL_COEFFS {
        tail -= c * (zp.re - ap);
        zp *= zi2;
        ap *= ai2;
    }
    2.0 * (sum + tail)
}

/// Dispersion of the K00 plane waves, g(k) = kappa(k/2) + 2 log 2.
pub fn g_dispersion(k: f64) -> f64 {
    lipatov_kappa(0.5 * k) + 2.0 * LN_2
}

/// Kinetic term G(p) = g(p) + 2 psi(1) of the Schroedinger representation.
pub fn big_g(p: f64) -> f64 {
    g_dispersion(p) - 2.0 * EULER_GAMMA
}

/// G'(p) = -Im psi'(1/2 + ip/2).
pub fn big_g_derivative(p: f64) -> f64 {
    -psi1(Complex64::new(0.5, 0.5 * p)).im
}

/// Leading large-argument inverse, G^{-1}(y) ~ exp(y/2).
pub fn big_g_inverse_leading(y: f64) -> f64 {
    (0.5 * y).exp()
}

/// The p >= 0 solving G(p) = y.
pub fn big_g_inverse(y: f64) -> Result<f64> {
    if !y.is_finite() {
        return Err(Error::NonFinite { what: "big_g_inverse" });
    }
    let g0 = big_g(0.0);
    let excess = y - g0;
    if excess <= 0.0 {
        if excess > -1e-13 {
            return Ok(0.0);
        }
        return Err(Error::domain(
            "big_g_inverse",
            format!("y = {y} is below the minimum G(0) = {g0}"),
        ));
    }
    let mut lo = 0.0;
    let mut hi = big_g_inverse_leading(y) + 1.0;
    let curvature = 3.5 * ZETA3;
    let mut p = if excess < 1.0 {
        (excess / curvature).sqrt()
    } else {
        big_g_inverse_leading(y)
    };
    p = p.clamp(lo, hi);
    for _ in 0..200 {
        // small p is resolved through the excess to avoid cancellation
        let f = if p < EXCESS_RANGE {
            lipatov_excess(0.5 * p) - excess
        } else {
            big_g(p) - y
        };
        if f == 0.0 {
            return Ok(p);
        }
        if f > 0.0 {
            hi = p;
        } else {
            lo = p;
        }
        let d = big_g_derivative(p);
        let mut next = if d > 0.0 { p - f / d } else { f64::NAN };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - p).abs();
        p = next;
        if step <= 1e-15 * p.max(1e-300) || hi - lo <= 1e-15 * hi {
            return Ok(p);
        }
    }
    Err(Error::Convergence {
        what: "big_g_inverse",
        iterations: 200,
        estimate: hi - lo,
        tolerance: 1e-15 * hi,
    })
}
