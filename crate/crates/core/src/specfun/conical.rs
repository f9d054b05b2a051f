//! Conical Legendre functions P_{-1/2+ik}(t) for real k and t >= 1.
//!
//! The Laplace integral (1/pi) int_0^pi (t + sqrt(t^2-1) cos th)^{-1/2+ik} dth
//! is rewritten with log(t + sqrt(t^2-1) cos th) = r sin b, t = cosh r, giving
//!
//!   P = (2/pi) int_0^{pi/2} cos(k r sin b) r cos b / sqrt(2 (cosh r - cosh(r sin b))) db
//!
//! whose integrand is smooth and bounded on the closed interval.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::quad::{doubling_rule, GaussRule, DOUBLING_MAX_LEVEL};

const AGREEMENT: f64 = 1e-11;

/// acosh(t) accurate near t = 1.
pub(crate) fn acosh_stable(t: f64) -> f64 {
    let d = t - 1.0;
    if d < 1e8 {
        (d + (d * (t + 1.0)).sqrt()).ln_1p()
    } else {
        t.ln() + (0.5 + 0.5 * (1.0 - 1.0 / (t * t)).sqrt()).ln() + std::f64::consts::LN_2
    }
}

/// Phase r sin b and the weighted amplitude at one quadrature node.
#[inline]
fn node(r: f64, b: f64) -> (f64, f64) {
    let phi = r * b.sin();
    let s = (FRAC_PI_4 - 0.5 * b).sin();
    let gap = 2.0 * (0.5 * (r + phi)).sinh() * (r * s * s).sinh();
    let amp = if gap > 0.0 {
        r * b.cos() / (2.0 * gap).sqrt()
    } else {
        1.0
    };
    (phi, amp)
}

fn sum_rule(rule: &GaussRule, k: f64, r: f64) -> (f64, f64) {
    let mut value = 0.0;
    let mut scale = 0.0;
    for (b, w) in rule.on(0.0, FRAC_PI_2) {
        let (phi, amp) = node(r, b);
        value += w * amp * (k * phi).cos();
        scale += w * amp;
    }
    (value, scale)
}

fn check_args(k: f64, t: f64) -> Result<()> {
    if !k.is_finite() || !t.is_finite() {
        return Err(Error::NonFinite { what: "conical_legendre" });
    }
    if t < 1.0 {
        return Err(Error::domain("conical_legendre", format!("t = {t} < 1")));
    }
    Ok(())
}

fn start_level(k: f64, r: f64) -> usize {
    let mut level = 0;
    while level < DOUBLING_MAX_LEVEL - 1 && ((crate::quad::DOUBLING_BASE << level) as f64) < 1.5 * k.abs() * r {
        level += 1;
    }
    level
}

/// P_{-1/2+ik}(t) for t >= 1.
pub fn conical_legendre(k: f64, t: f64) -> Result<f64> {
    check_args(k, t)?;
    if t == 1.0 {
        return Ok(1.0);
    }
    let r = acosh_stable(t);
    let mut level = start_level(k, r);
    let (mut prev, _) = sum_rule(&doubling_rule(level), k, r);
    loop {
        level += 1;
        let (next, scale) = sum_rule(&doubling_rule(level), k, r);
        let diff = (next - prev).abs();
        if diff <= AGREEMENT * scale.max(f64::MIN_POSITIVE) {
            return Ok(next * 2.0 / PI);
        }
        if level == DOUBLING_MAX_LEVEL {
            return Err(Error::Convergence {
                what: "conical_legendre",
                iterations: level,
                estimate: diff,
                tolerance: AGREEMENT,
            });
        }
        prev = next;
    }
}

/// P_{-1/2+ik}(t) on a fixed rule over b in [0, pi/2]; smooth in t for
/// finite-difference use.
pub(crate) fn conical_legendre_on(rule: &GaussRule, k: f64, t: f64) -> f64 {
    if t <= 1.0 {
        return 1.0;
    }
    sum_rule(rule, k, acosh_stable(t)).0 * 2.0 / PI
}

/// (2/pi) int_0^{pi/2} g(r sin b) r cos b / sqrt(2 (cosh r - cosh(r sin b))) db
/// on a fixed rule, t = cosh r; g = cos(k .) gives P_{-1/2+ik}(t).
#[cfg(test)]
pub(crate) fn mehler_average(rule: &GaussRule, t: f64, g: impl Fn(f64) -> f64) -> f64 {
    if t <= 1.0 {
        return g(0.0);
    }
    let r = acosh_stable(t);
    let mut s = 0.0;
    for (b, w) in rule.on(0.0, FRAC_PI_2) {
        let (phi, amp) = node(r, b);
        s += w * amp * g(phi);
    }
    s * 2.0 / PI
}

/// Precomputed quadrature for many k at one argument t.
#[derive(Debug, Clone)]
pub struct ConicalTable {
    t: f64,
    k_max: f64,
    phases: Vec<f64>,
    weights: Vec<f64>,
}

impl ConicalTable {
    /// Nodes sufficient for every |k| <= k_max.
    pub fn new(t: f64, k_max: f64) -> Result<Self> {
        check_args(k_max, t)?;
        if t == 1.0 {
            return Ok(ConicalTable {
                t,
                k_max: k_max.abs(),
                phases: vec![0.0],
                weights: vec![1.0],
            });
        }
        let r = acosh_stable(t);
        let k_max = k_max.abs();
        let probes = [0.0, 0.5 * k_max, k_max];
        let mut n = 64 + (1.2 * k_max * r).ceil() as usize;
        loop {
            let coarse = GaussRule::new(n);
            let fine = GaussRule::new(2 * n);
            let ok = probes.iter().all(|&k| {
                let (a, scale) = sum_rule(&coarse, k, r);
                let (b, _) = sum_rule(&fine, k, r);
                (a - b).abs() <= AGREEMENT * scale
            });
            if ok {
                let mut phases = Vec::with_capacity(n);
                let mut weights = Vec::with_capacity(n);
                for (b, w) in coarse.on(0.0, FRAC_PI_2) {
                    let (phi, amp) = node(r, b);
                    phases.push(phi);
                    weights.push(2.0 / PI * w * amp);
                }
                return Ok(ConicalTable { t, k_max, phases, weights });
            }
            if n > 200_000 {
                return Err(Error::Convergence {
                    what: "ConicalTable",
                    iterations: n,
                    estimate: f64::NAN,
                    tolerance: AGREEMENT,
                });
            }
            n *= 2;
        }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn k_max(&self) -> f64 {
        self.k_max
    }

    /// P_{-1/2+ik}(t); accuracy is only guaranteed for |k| <= k_max.
    pub fn eval(&self, k: f64) -> f64 {
        self.phases
            .iter()
            .zip(&self.weights)
            .map(|(&phi, &w)| w * (k * phi).cos())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_argument() {
        for k in [0.0, 1.0, 30.0] {
            assert_eq!(conical_legendre(k, 1.0).unwrap(), 1.0);
        }
        assert!((conical_legendre(2.0, 1.0 + 1e-14).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reference_values() {
        // mpmath legenp(-1/2 + ik, 0, t, type=3) at 30 digits
        let cases = [
            (0.0, 3.0, 0.8346268416740732),
            (1.0, 3.0, 0.3154998781504384),
            (2.5, 10.0, 0.14948907907039147),
            (10.0, 1.5, -0.19649036977036988),
        ];
        for (k, t, want) in cases {
            let got = conical_legendre(k, t).unwrap();
            assert!((got - want).abs() < 1e-13, "k = {k}, t = {t}: {got}");
        }
    }

    #[test]
    fn table_matches_pointwise() {
        let table = ConicalTable::new(250.0, 40.0).unwrap();
        for k in [0.0, 0.05, 3.3, 17.0, 40.0] {
            let a = table.eval(k);
            let b = conical_legendre(k, 250.0).unwrap();
            assert!((a - b).abs() < 1e-12, "k = {k}: {a} vs {b}");
        }
    }

    #[test]
    fn rejects_below_one() {
        assert!(conical_legendre(1.0, 0.5).is_err());
        assert!(conical_legendre(f64::NAN, 2.0).is_err());
    }

    #[test]
    fn stable_acosh() {
        for t in [1.0 + 1e-12, 1.5, 1e3, 1e12, 1e30] {
            let r = acosh_stable(t);
            assert!(((r.cosh() - t) / t).abs() < 1e-9, "t = {t}");
        }
    }
}
