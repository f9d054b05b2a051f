//! Legendre-Galerkin matrices of K_ab.

use ndarray::{Array1, Array2, Axis};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::legendre::orthonormal_legendre_into;
use super::{harmonic_table, OperatorParams};
use crate::error::{Error, Result};
use crate::quad::GaussRule;

/// Which endpoint carries the logarithm: log(1 + x) or log(1 - x).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    Left,
    Right,
}

impl Endpoint {
    pub fn from_sign(sign: i32) -> Result<Self> {
        match sign {
            1 => Ok(Endpoint::Left),
            -1 => Ok(Endpoint::Right),
            _ => Err(Error::domain("Endpoint::from_sign", format!("sign {sign} is not +1 or -1"))),
        }
    }
}

/// How the log(1 +- x) matrix elements are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LogElements {
    #[default]
    Quadrature,
    ClosedForm,
}

/// Panels in the angle theta = acos(-x) measured from the left endpoint:
/// graded geometrically towards theta = 0 where log(1 + x) is singular.
fn graded_nodes(n: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut edges = vec![0.0f64];
    let mut a = 0.5f64;
    let mut small = vec![];
    while a > 1e-15 {
        small.push(a);
        a *= 0.25;
    }
    small.reverse();
    edges.extend(small);
    let span = std::f64::consts::PI - 0.5;
    let bulk = (span / 0.5).ceil() as usize;
    for j in 1..=bulk {
        edges.push(0.5 + span * j as f64 / bulk as f64);
    }
    let mut x = vec![];
    let mut w = vec![];
    let mut log_left = vec![];
    for pair in edges.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let rule = GaussRule::new((n as f64 * (hi - lo)) as usize + 30);
        for (theta, wt) in rule.on(lo, hi) {
            // x = -cos(theta), 1 + x = 2 sin^2(theta / 2)
            let half = (0.5 * theta).sin();
            x.push(-theta.cos());
            w.push(wt * theta.sin());
            log_left.push(std::f64::consts::LN_2 + 2.0 * half.ln());
        }
    }
    (x, w, log_left)
}

/// Matrix of multiplication by log(1 + x) (`Left`) or log(1 - x) (`Right`)
/// in the orthonormal Legendre basis, by graded quadrature.
pub fn log_matrix_elements(endpoint: Endpoint, n: usize) -> Result<Array2<f64>> {
    if n == 0 {
        return Err(Error::Precondition("truncation must be at least 1".into()));
    }
    let (mut x, w, logs) = graded_nodes(n);
    if endpoint == Endpoint::Right {
        x.iter_mut().for_each(|v| *v = -*v);
    }
    let q = x.len();
    let mut basis = Array2::<f64>::zeros((q, n));
    basis
        .axis_iter_mut(Axis(0))
        .into_par_iter()
        .enumerate()
        .for_each(|(i, mut row)| {
            orthonormal_legendre_into(x[i], row.as_slice_mut().expect("row-major rows are contiguous"));
        });
    let scale: Array1<f64> = w.iter().zip(&logs).map(|(a, b)| a * b).collect();
    let weighted = &basis * &scale.insert_axis(Axis(1));
    let mut m = weighted.t().dot(&basis);
    symmetrize(&mut m);
    Ok(m)
}

/// Closed-form matrix elements of log(1 +- x) between normalized Legendre
/// polynomials.
pub fn log_matrix_elements_exact(endpoint: Endpoint, n: usize) -> Result<Array2<f64>> {
    if n == 0 {
        return Err(Error::Precondition("truncation must be at least 1".into()));
    }
    let h = harmonic_table(2 * n);
    let mut m = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let (fi, fj) = (i as f64, j as f64);
            let right = if i == j {
                std::f64::consts::LN_2 - 1.0 / (2.0 * fi + 1.0) - 2.0 * (h[2 * i] - h[i])
            } else {
                let d = (fi - fj).abs();
                -2.0 * ((fi + 0.5) * (fj + 0.5)).sqrt() / (d * (fi + fj + 1.0))
            };
            m[[i, j]] = match endpoint {
                Endpoint::Right => right,
                Endpoint::Left if (i + j) % 2 == 1 => -right,
                Endpoint::Left => right,
            };
        }
    }
    Ok(m)
}

fn symmetrize(m: &mut Array2<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (m[[i, j]] + m[[j, i]]);
            m[[i, j]] = avg;
            m[[j, i]] = avg;
        }
    }
}

/// Truncated Galerkin matrix of K_ab.
#[derive(Debug, Clone)]
pub struct GalerkinMatrix {
    pub entries: Array2<f64>,
    pub params: OperatorParams,
    pub n_trunc: usize,
}

impl GalerkinMatrix {
    /// Largest |M_mn - M_nm| / (1 + |M_mn|).
    pub fn asymmetry(&self) -> f64 {
        let n = self.n_trunc;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..i {
                let a = self.entries[[i, j]];
                worst = worst.max((a - self.entries[[j, i]]).abs() / (1.0 + a.abs()));
            }
        }
        worst
    }
}

/// diag(2 h_n) + (1 - alpha) log(1 + x) + (1 - beta) log(1 - x).
pub fn galerkin_matrix(params: OperatorParams, n: usize) -> Result<GalerkinMatrix> {
    galerkin_matrix_with(params, n, LogElements::Quadrature)
}

pub fn galerkin_matrix_with(params: OperatorParams, n: usize, method: LogElements) -> Result<GalerkinMatrix> {
    if n == 0 {
        return Err(Error::Precondition("truncation must be at least 1".into()));
    }
    let h = harmonic_table(n);
    let mut entries = Array2::<f64>::zeros((n, n));
    for (i, hi) in h.iter().enumerate() {
        entries[[i, i]] = 2.0 * hi;
    }
    let (wl, wr) = (1.0 - params.alpha, 1.0 - params.beta);
    if wl != 0.0 || wr != 0.0 {
        let build = |e| match method {
            LogElements::Quadrature => log_matrix_elements(e, n),
            LogElements::ClosedForm => log_matrix_elements_exact(e, n),
        };
        // one endpoint matrix gives the other by the parity x -> -x
        let reference = build(Endpoint::Right)?;
        for i in 0..n {
            for j in 0..n {
                let r = reference[[i, j]];
                let l = if (i + j) % 2 == 1 { -r } else { r };
                entries[[i, j]] += wl * l + wr * r;
            }
        }
    }
    Ok(GalerkinMatrix {
        entries,
        params,
        n_trunc: n,
    })
}
