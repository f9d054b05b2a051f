//! Bohr-Sommerfeld quantization of G(p) + V(u).

use std::f64::consts::{LN_2, PI};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{potential, OperatorParams};
use crate::output::{format_value, CsvTable};
use crate::quad::{integrate, QuadConfig};
use crate::roots::brent;
use crate::specfun::consts::EULER_GAMMA;
use crate::specfun::{big_g, big_g_inverse, ln_beta};

/// kappa_n ~ 2 [log(pi (n + 1/2)) - log B(alpha/2, beta/2) + (1 - (alpha+beta)/2) log 2 + gamma_E].
pub fn wkb_eigenvalue(n: usize, alpha: f64, beta: f64) -> Result<f64> {
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::NonFinite { what: "wkb_eigenvalue" });
    }
    if alpha <= 0.0 || beta <= 0.0 {
        return Err(Error::domain(
            "wkb_eigenvalue",
            format!("alpha = {alpha}, beta = {beta} must be positive"),
        ));
    }
    let lb = ln_beta(0.5 * alpha, 0.5 * beta)?;
    Ok(2.0 * ((PI * (n as f64 + 0.5)).ln() - lb + (1.0 - 0.5 * (alpha + beta)) * LN_2 + EULER_GAMMA))
}

/// Where the classically allowed region ends.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TurningPoints {
    /// Momentum vanishes: kappa' - V = G(0). The integrand G^{-1} closes
    /// like a square root at both ends.
    #[default]
    Kinetic,
    /// Potential reaches the level: V = kappa'.
    Potential,
}

fn check_params(what: &'static str, alpha: f64, beta: f64) -> Result<OperatorParams> {
    let p = OperatorParams::new(alpha, beta)?;
    if !p.is_confining() {
        return Err(Error::domain(what, format!("alpha = {alpha}, beta = {beta} must be positive")));
    }
    Ok(p)
}

/// Minimum of the convex potential, at u = log(alpha/beta)/2.
fn potential_minimum(p: OperatorParams) -> (f64, f64) {
    let u = 0.5 * (p.alpha / p.beta).ln();
    (u, potential(p, u))
}

/// Solutions a < b of V(u) = level, or None below the minimum.
fn level_crossings(p: OperatorParams, level: f64) -> Result<Option<(f64, f64)>> {
    let (u0, v0) = potential_minimum(p);
    if level <= v0 {
        return Ok(None);
    }
    let v = |u: f64| potential(p, u);
    let mut step = 1.0;
    while v(u0 - step) <= level {
        step *= 2.0;
    }
    let a = brent(|u| Ok(level - v(u)), u0 - step, u0, 1e-14, "turning point")?;
    step = 1.0;
    while v(u0 + step) <= level {
        step *= 2.0;
    }
    let b = brent(|u| Ok(v(u) - level), u0, u0 + step, 1e-14, "turning point")?;
    Ok(Some((a, b)))
}

/// The phase integral int_a^b G^{-1}(kappa' - V) du.
pub fn bohr_sommerfeld_phase(params: OperatorParams, kappa_prime: f64, turning: TurningPoints) -> Result<f64> {
    let g0 = big_g(0.0);
    let level = match turning {
        TurningPoints::Kinetic => kappa_prime - g0,
        TurningPoints::Potential => kappa_prime,
    };
    let Some((a, b)) = level_crossings(params, level)? else {
        return Ok(0.0);
    };
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    // u = mid - half cos t flattens the square-root closure at a and b
    let integrand = |t: f64| -> f64 {
        let u = mid - half * t.cos();
        let arg = (kappa_prime - potential(params, u)).max(g0);
        big_g_inverse(arg).unwrap_or(f64::NAN) * half * t.sin()
    };
    let cfg = QuadConfig::with_tol(1e-13, 1e-12);
    Ok(integrate(integrand, 0.0, PI, &cfg)?.value)
}

/// kappa_n from the Bohr-Sommerfeld condition with the exact G^{-1};
/// kappa = kappa' + 2 gamma_E.
pub fn bohr_sommerfeld_solve(n: usize, alpha: f64, beta: f64) -> Result<f64> {
    bohr_sommerfeld_solve_with(n, alpha, beta, TurningPoints::Kinetic)
}

pub fn bohr_sommerfeld_solve_with(n: usize, alpha: f64, beta: f64, turning: TurningPoints) -> Result<f64> {
    let p = check_params("bohr_sommerfeld_solve", alpha, beta)?;
    let target = PI * (n as f64 + 0.5);
    let (_, v0) = potential_minimum(p);
    let lo = match turning {
        TurningPoints::Kinetic => v0 + big_g(0.0),
        TurningPoints::Potential => v0,
    };
    let mut hi = (wkb_eigenvalue(n, alpha, beta)? - 2.0 * EULER_GAMMA).max(lo) + 1.0;
    let mut expansions = 0;
    while bohr_sommerfeld_phase(p, hi, turning)? < target {
        hi += 2.0;
        expansions += 1;
        if expansions > 60 {
            return Err(Error::Bracketing {
                what: "bohr_sommerfeld_solve",
                detail: format!("phase still below pi(n + 1/2) at kappa' = {hi}"),
            });
        }
    }
    let kp = brent(
        |k| Ok(bohr_sommerfeld_phase(p, k, turning)? - target),
        lo,
        hi,
        1e-12,
        "bohr_sommerfeld_solve",
    )?;
    Ok(kp + 2.0 * EULER_GAMMA)
}

/// One row of the WKB spectrum table; all values on the kappa scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WkbSpectrumRow {
    pub n: usize,
    pub kappa_closed_form: f64,
    pub kappa_bohr_sommerfeld: f64,
    pub reference: Option<f64>,
}

/// Rows 0..count for (alpha, beta); `reference` is left empty.
pub fn wkb_table(alpha: f64, beta: f64, count: usize) -> Result<Vec<WkbSpectrumRow>> {
    (0..count)
        .map(|n| {
            Ok(WkbSpectrumRow {
                n,
                kappa_closed_form: wkb_eigenvalue(n, alpha, beta)?,
                kappa_bohr_sommerfeld: bohr_sommerfeld_solve(n, alpha, beta)?,
                reference: None,
            })
        })
        .collect()
}

/// Table in the layout n, reference, wkb_closed_form, bohr_sommerfeld on the
/// half-kappa scale of the published table.
pub fn wkb_table_csv(params: OperatorParams, rows: &[WkbSpectrumRow]) -> CsvTable {
    let mut t = CsvTable::new(&["n", "reference", "wkb_closed_form", "bohr_sommerfeld"])
        .meta("alpha", params.alpha)
        .meta("beta", params.beta)
        .meta("scale", "kappa/2");
    for r in rows {
        t.push(vec![
            r.n.to_string(),
            r.reference.map(|v| format_value(0.5 * v)).unwrap_or_default(),
            format_value(0.5 * r.kappa_closed_form),
            format_value(0.5 * r.kappa_bohr_sommerfeld),
        ]);
    }
    t
}

pub fn write_wkb_table(params: OperatorParams, rows: &[WkbSpectrumRow], out: impl Write) -> Result<()> {
    wkb_table_csv(params, rows).write(out)
}
