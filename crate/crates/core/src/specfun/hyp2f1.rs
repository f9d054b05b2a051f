use num_complex::Complex64;

use super::conical::conical_legendre;
use crate::error::{Error, Result};

const SWITCH: f64 = 0.75;
const MAX_TERMS: usize = 1_000_000;

/// F(1/2+ik, 1/2+ik; 1; z) for 0 <= z < 1.
///
/// Uses the power series up to z = 0.75 and the identity
/// x^{1/2+ik} F(1/2+ik, 1/2+ik; 1; 1-x) = P_{-1/2+ik}(2/x - 1) beyond.
pub fn hyp2f1_conical(k: f64, z: f64) -> Result<Complex64> {
    if !k.is_finite() || !z.is_finite() {
        return Err(Error::NonFinite { what: "hyp2f1_conical" });
    }
    if !(0.0..1.0).contains(&z) {
        return Err(Error::domain("hyp2f1_conical", format!("z = {z} outside [0, 1)")));
    }
    if z <= SWITCH {
        return hyp2f1_series(k, z);
    }
    let x = 1.0 - z;
    let p = conical_legendre(k, 2.0 / x - 1.0)?;
    // x^{-1/2-ik}
    let scale = Complex64::from_polar(x.powf(-0.5), -k * x.ln());
    Ok(scale * p)
}

/// Direct summation of the hypergeometric series.
pub(crate) fn hyp2f1_series(k: f64, z: f64) -> Result<Complex64> {
    let a = Complex64::new(0.5, k);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small_run = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let an = a + nf;
        term *= an * an * (z / ((nf + 1.0) * (nf + 1.0)));
        sum += term;
        if term.norm() < 1e-16 * sum.norm() {
            small_run += 1;
            if small_run == 3 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::Convergence {
        what: "hypergeometric series",
        iterations: MAX_TERMS,
        estimate: term.norm(),
        tolerance: 1e-16 * sum.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_is_one() {
        let v = hyp2f1_conical(2.0, 0.0).unwrap();
        assert_eq!(v, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn elliptic_value_at_half() {
        // F(1/2, 1/2; 1; 1/2) = (2/pi) K(1/sqrt 2), mpmath hyp2f1(0.5, 0.5, 1, 0.5)
        let v = hyp2f1_conical(0.0, 0.5).unwrap();
        assert!((v.re - 1.1803405990160962).abs() < 1e-14, "{v}");
        assert!(v.im.abs() < 1e-16);
    }

    #[test]
    fn routes_agree_across_switch() {
        for k in [0.0, 1.0, 4.0] {
            for z in [0.76, 0.9] {
                let a = hyp2f1_series(k, z).unwrap();
                let b = hyp2f1_conical(k, z).unwrap();
                assert!((a - b).norm() < 1e-10 * a.norm().max(1.0), "k = {k}, z = {z}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn rejects_unit_argument() {
        assert!(hyp2f1_conical(1.0, 1.0).is_err());
        assert!(hyp2f1_conical(1.0, -0.1).is_err());
    }
}
