//! Mehler-Fock transform pair
//!
//!   c(k) = k tanh(pi k) int_1^inf u(2/(1+t)) P_{-1/2+ik}(t) dt,
//!   u(xi) = int_0^inf P_{-1/2+ik}(2/xi - 1) c(k) dk.
//!
//! The forward integral goes through the Mehler representation of P, which
//! turns it into a cosine transform of the Abel integral
//! A(th) = int_{cosh th}^inf f(t) / sqrt(t - cosh th) dt.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::GaussRule;
use crate::specfun::{acosh_stable, ConicalTable};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MehlerFockConfig {
    pub k_max: f64,
    pub dk: f64,
    /// Upper limit of the t-integral.
    pub t_max: f64,
    /// Gauss-Legendre nodes of the Abel integral.
    pub abel_nodes: usize,
    /// Panel width and nodes per panel in th = acosh t.
    pub panel_width: f64,
    pub panel_nodes: usize,
    /// Admissible tail beyond t_max, relative to the largest integrand value.
    pub tail_tolerance: f64,
    /// Admissible trapezoid/Simpson gap in the inverse, relative to int |c| dk.
    pub inverse_tolerance: f64,
}

impl Default for MehlerFockConfig {
    fn default() -> Self {
        MehlerFockConfig {
            k_max: 40.0,
            dk: 0.05,
            t_max: 1e30,
            abel_nodes: 200,
            panel_width: 0.1,
            panel_nodes: 20,
            tail_tolerance: 1e-5,
            inverse_tolerance: 1e-6,
        }
    }
}

impl MehlerFockConfig {
    fn validate(&self) -> Result<usize> {
        let finite = [self.k_max, self.dk, self.t_max, self.panel_width, self.tail_tolerance];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "MehlerFockConfig" });
        }
        if !(self.k_max > 0.0 && self.dk > 0.0 && self.panel_width > 0.0) {
            return Err(Error::domain("MehlerFockConfig", "k_max, dk and panel width must be positive"));
        }
        if self.t_max <= 1.0 {
            return Err(Error::domain("MehlerFockConfig", format!("t_max = {} must exceed 1", self.t_max)));
        }
        if self.abel_nodes < 8 || self.panel_nodes < 4 {
            return Err(Error::domain("MehlerFockConfig", "too few quadrature nodes"));
        }
        let steps = (self.k_max / self.dk).round();
        if ((steps * self.dk) - self.k_max).abs() > 1e-9 * self.k_max {
            return Err(Error::domain(
                "MehlerFockConfig",
                format!("k_max = {} is not a multiple of dk = {}", self.k_max, self.dk),
            ));
        }
        Ok(steps as usize)
    }

    pub fn k_grid(&self) -> Result<Vec<f64>> {
        let steps = self.validate()?;
        Ok((0..=steps).map(|j| j as f64 * self.dk).collect())
    }
}

/// c(k) on a uniform grid starting at 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MehlerFockCoeffs {
    pub k: Vec<f64>,
    pub c: Vec<f64>,
    pub k_max: f64,
    pub t_max: f64,
    pub abel_nodes: usize,
    pub theta_nodes: usize,
    /// Estimated integrand mass beyond t_max, relative to its peak.
    pub tail_estimate: f64,
}

/// Inverse transform with its quadrature diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InverseEstimate {
    pub value: f64,
    pub simpson: f64,
    /// Trapezoid and Simpson disagree beyond the configured tolerance.
    pub under_resolved: bool,
}

impl MehlerFockCoeffs {
    pub fn zero(config: &MehlerFockConfig) -> Result<Self> {
        let k = config.k_grid()?;
        Ok(MehlerFockCoeffs {
            c: vec![0.0; k.len()],
            k,
            k_max: config.k_max,
            t_max: config.t_max,
            abel_nodes: config.abel_nodes,
            theta_nodes: 0,
            tail_estimate: 0.0,
        })
    }

    /// Coefficients on a user grid; must be uniform, increasing and start at 0.
    pub fn from_samples(k: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        if k.len() != c.len() || k.len() < 3 {
            return Err(Error::Precondition("need matching k and c vectors of length >= 3".into()));
        }
        if k.iter().chain(&c).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "MehlerFockCoeffs" });
        }
        if k[0] != 0.0 {
            return Err(Error::domain("MehlerFockCoeffs", format!("k-grid starts at {} instead of 0", k[0])));
        }
        let dk = k[1] - k[0];
        for w in k.windows(2) {
            if !(w[1] > w[0]) || ((w[1] - w[0]) - dk).abs() > 1e-9 * dk.max(1.0) {
                return Err(Error::domain("MehlerFockCoeffs", "k-grid must be uniform and increasing"));
            }
        }
        let k_max = *k.last().unwrap_or(&0.0);
        Ok(MehlerFockCoeffs {
            k,
            c,
            k_max,
            t_max: f64::NAN,
            abel_nodes: 0,
            theta_nodes: 0,
            tail_estimate: f64::NAN,
        })
    }

    pub fn dk(&self) -> f64 {
        self.k[1] - self.k[0]
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    /// Multiply every c(k) by `factor(k)`.
    pub fn scaled(&self, factor: impl Fn(f64) -> f64) -> Self {
        let mut out = self.clone();
        for (c, &k) in out.c.iter_mut().zip(&self.k) {
            *c *= factor(k);
        }
        out
    }

    /// Two-column CSV with header `k,c`.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["k", "c"])?;
        for (k, c) in self.k.iter().zip(&self.c) {
            w.write_record([crate::output::format_value(*k), crate::output::format_value(*c)])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Abel integral A(th) = 2 sqrt(T) int_0^{pi/2} f(T sec^2 p) sec^2 p dp, T = cosh th.
fn abel(f: &(impl Fn(f64) -> f64 + Sync), rule: &GaussRule, theta: f64) -> f64 {
    let big_t = theta.cosh();
    let mut s = 0.0;
    for (p, w) in rule.on(0.0, FRAC_PI_2) {
        let sec2 = 1.0 / (p.cos() * p.cos());
        s += w * f(big_t * sec2) * sec2;
    }
    2.0 * big_t.sqrt() * s
}

/// Forward transform of u on (0, 1].
///
/// Fails with `TailNotDecaying` when the integrand beyond t_max is not
/// negligible; data with u(xi) ~ xi near 0 need t_max far beyond 1e4.
pub fn mehler_fock_forward(u: impl Fn(f64) -> f64 + Sync, config: &MehlerFockConfig) -> Result<MehlerFockCoeffs> {
    let k = config.k_grid()?;
    let theta_max = acosh_stable(config.t_max);
    let panels = (theta_max / config.panel_width).ceil().max(1.0) as usize;
    let width = theta_max / panels as f64;
    let panel_rule = GaussRule::new(config.panel_nodes);
    let abel_rule = GaussRule::new(config.abel_nodes);
    let f = |t: f64| u(2.0 / (1.0 + t));

    let mut theta = Vec::with_capacity(panels * config.panel_nodes);
    let mut weight = Vec::with_capacity(panels * config.panel_nodes);
    for j in 0..panels {
        let a = j as f64 * width;
        for (th, w) in panel_rule.on(a, a + width) {
            theta.push(th);
            weight.push(w);
        }
    }
    let profile: Vec<f64> = theta.par_iter().map(|&th| abel(&f, &abel_rule, th)).collect();
    if profile.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { what: "mehler_fock_forward" });
    }

    let peak = profile.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tail = if peak == 0.0 {
        0.0
    } else {
        tail_estimate(&f, &abel_rule, theta_max, config.panel_width) / peak
    };
    if !(tail <= config.tail_tolerance) {
        return Err(Error::TailNotDecaying {
            t_max: config.t_max,
            tail,
            tolerance: config.tail_tolerance,
        });
    }

    let weighted: Vec<f64> = profile.iter().zip(&weight).map(|(a, w)| a * w).collect();
    let c = k
        .par_iter()
        .map(|&kk| {
            let s: f64 = theta.iter().zip(&weighted).map(|(th, aw)| (kk * th).cos() * aw).sum();
            kk * (PI * kk).tanh() * SQRT_2 / PI * s
        })
        .collect();
    Ok(MehlerFockCoeffs {
        k,
        c,
        k_max: config.k_max,
        t_max: config.t_max,
        abel_nodes: config.abel_nodes,
        theta_nodes: theta.len(),
        tail_estimate: tail,
    })
}

/// int_{th_max}^inf |A| from the local exponential decay rate of A.
fn tail_estimate(f: &(impl Fn(f64) -> f64 + Sync), rule: &GaussRule, theta_max: f64, span: f64) -> f64 {
    let span = span.max(0.05).min(0.5 * theta_max);
    let end = abel(f, rule, theta_max).abs();
    let before = abel(f, rule, theta_max - span).abs();
    if end == 0.0 {
        return 0.0;
    }
    // rounding noise at the far end gives no usable rate; floor it
    let rate = ((before / end).ln() / span).max(1e-3);
    end / rate
}

/// Trapezoid and Simpson sums of P_{-1/2+ik}(2/xi - 1) c(k) over the k-grid.
fn inverse_sums(coeffs: &MehlerFockCoeffs, xi: f64) -> Result<(f64, f64, f64)> {
    if !xi.is_finite() {
        return Err(Error::NonFinite { what: "mehler_fock_inverse" });
    }
    if !(xi > 0.0 && xi <= 1.0) {
        return Err(Error::domain("mehler_fock_inverse", format!("xi = {xi} outside (0, 1]")));
    }
    let n = coeffs.len();
    if n < 3 {
        return Err(Error::Precondition("k-grid needs at least 3 points".into()));
    }
    let table = ConicalTable::new(2.0 / xi - 1.0, coeffs.k_max)?;
    let dk = coeffs.dk();
    let mut trap = 0.0;
    let mut simpson = 0.0;
    let mut mass = 0.0;
    // Simpson on the largest even number of intervals, trapezoid on a leftover one
    let even = if (n - 1).is_multiple_of(2) { n } else { n - 1 };
    for (j, (&k, &c)) in coeffs.k.iter().zip(&coeffs.c).enumerate() {
        let v = table.eval(k) * c;
        let end = j == 0 || j == n - 1;
        trap += if end { 0.5 * v } else { v };
        mass += c.abs();
        if j < even {
            let w = if j == 0 || j == even - 1 {
                1.0
            } else if j % 2 == 1 {
                4.0
            } else {
                2.0
            };
            simpson += w * v / 3.0;
        }
    }
    if even < n {
        let a = table.eval(coeffs.k[n - 2]) * coeffs.c[n - 2];
        let b = table.eval(coeffs.k[n - 1]) * coeffs.c[n - 1];
        simpson += 0.5 * (a + b);
    }
    Ok((trap * dk, simpson * dk, mass * dk))
}

/// u(xi) from c(k) by the trapezoid rule on the k-grid.
pub fn mehler_fock_inverse(coeffs: &MehlerFockCoeffs, xi: f64) -> Result<f64> {
    Ok(inverse_sums(coeffs, xi)?.0)
}

/// Inverse with a Simpson cross-check; `under_resolved` flags a k-grid too
/// coarse for c.
pub fn mehler_fock_inverse_checked(
    coeffs: &MehlerFockCoeffs,
    xi: f64,
    config: &MehlerFockConfig,
) -> Result<InverseEstimate> {
    let (value, simpson, mass) = inverse_sums(coeffs, xi)?;
    Ok(InverseEstimate {
        value,
        simpson,
        under_resolved: (value - simpson).abs() > config.inverse_tolerance * mass.max(f64::MIN_POSITIVE),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{conical_legendre, mehler_average};

    fn sample_xi() -> Vec<f64> {
        (0..=38).map(|j| 0.05 + 0.025 * j as f64).collect()
    }

    fn round_trip(u: impl Fn(f64) -> f64 + Sync, config: &MehlerFockConfig) -> f64 {
        let c = mehler_fock_forward(&u, config).unwrap();
        sample_xi()
            .into_iter()
            .map(|xi| (mehler_fock_inverse(&c, xi).unwrap() - u(xi)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn zero_input() {
        let cfg = MehlerFockConfig::default();
        let c = mehler_fock_forward(|_| 0.0, &cfg).unwrap();
        assert!(c.c.iter().all(|&v| v == 0.0));
        assert_eq!(mehler_fock_inverse(&c, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn round_trip_linear_profile() {
        let err = round_trip(|xi| xi, &MehlerFockConfig::default());
        assert!(err < 1e-4, "{err}");
    }

    #[test]
    fn round_trip_quadratic_at_moderate_cutoff() {
        let cfg = MehlerFockConfig {
            t_max: 1e4,
            ..Default::default()
        };
        let err = round_trip(|xi| xi * xi * (2.0 - xi), &cfg);
        assert!(err < 1e-4, "{err}");
    }

    #[test]
    fn linear_profile_needs_a_long_tail() {
        let cfg = MehlerFockConfig {
            t_max: 1e4,
            ..Default::default()
        };
        assert!(matches!(mehler_fock_forward(|xi| xi, &cfg), Err(Error::TailNotDecaying { .. })));
    }

    #[test]
    fn endpoint_is_integral_of_c() {
        let cfg = MehlerFockConfig::default();
        let c = mehler_fock_forward(|xi| xi * (1.0 - 0.5 * xi), &cfg).unwrap();
        let dk = c.dk();
        let n = c.len();
        let sum: f64 = c.c.iter().sum::<f64>() - 0.5 * (c.c[0] + c.c[n - 1]);
        assert!((mehler_fock_inverse(&c, 1.0).unwrap() - sum * dk).abs() < 1e-14);
    }

    #[test]
    fn forward_matches_direct_t_integral() {
        // u = xi^2: f(t) = 4/(1+t)^2 decays fast enough for direct quadrature
        let cfg = MehlerFockConfig::default();
        let c = mehler_fock_forward(|xi| xi * xi, &cfg).unwrap();
        let rule = GaussRule::new(40);
        for &j in &[10usize, 20, 60] {
            let k = c.k[j];
            // t = e^s, s in [0, 60]
            let mut s = 0.0;
            for p in 0..240 {
                let a = p as f64 * 0.25;
                s += rule.integrate(a, a + 0.25, |v| {
                    let t = v.exp();
                    4.0 / (1.0 + t).powi(2) * conical_legendre(k, t).unwrap() * t
                });
            }
            let direct = k * (PI * k).tanh() * s;
            assert!((direct - c.c[j]).abs() < 1e-8, "k {k}: {direct} vs {}", c.c[j]);
        }
    }

    #[test]
    fn narrow_band_round_trip() {
        // c0 = k^2 [e^{-(k-2)^2} + e^{-(k+2)^2}] is the cosine transform of
        // B = sqrt(pi) e^{-th^2/4} [(9/2 - th^2/4) cos 2th - 2 th sin 2th],
        // so u = int P c0 dk is a Mehler average of B
        let cfg = MehlerFockConfig {
            t_max: 1e13,
            ..Default::default()
        };
        let c0 = |k: f64| k * k * ((-(k - 2.0).powi(2)).exp() + (-(k + 2.0).powi(2)).exp());
        let rule = GaussRule::new(200);
        let u = |xi: f64| {
            mehler_average(&rule, 2.0 / xi - 1.0, |th| {
                let (s, c) = (2.0 * th).sin_cos();
                PI.sqrt() * (-0.25 * th * th).exp() * ((4.5 - 0.25 * th * th) * c - 2.0 * th * s)
            })
        };
        // endpoint reduction: u(1) = int c0 dk = (9/2) sqrt(pi)
        assert!((u(1.0) - 4.5 * PI.sqrt()).abs() < 1e-12);
        let c1 = mehler_fock_forward(u, &cfg).unwrap();
        for j in (0..c1.len()).step_by(10).take(20) {
            let k = c1.k[j];
            assert!((c1.c[j] - c0(k)).abs() < 1e-4, "k {k}: {} vs {}", c1.c[j], c0(k));
        }
    }

    #[test]
    fn serialization() {
        let cfg = MehlerFockConfig {
            k_max: 1.0,
            dk: 0.5,
            ..Default::default()
        };
        let c = mehler_fock_forward(|xi| xi * xi, &cfg).unwrap();
        let mut buf = Vec::new();
        c.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("k,c\n"));
        assert_eq!(text.lines().count(), 4);
        let back: MehlerFockCoeffs = serde_json::from_str(&c.to_json().unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn inverse_flags_coarse_grid() {
        let k: Vec<f64> = (0..=8).map(|j| j as f64 * 2.5).collect();
        let c: Vec<f64> = k.iter().map(|&v| (3.0 * v).sin()).collect();
        let coeffs = MehlerFockCoeffs::from_samples(k, c).unwrap();
        let est = mehler_fock_inverse_checked(&coeffs, 0.5, &MehlerFockConfig::default()).unwrap();
        assert!(est.under_resolved);
    }
}
