//! Sampled profiles u(tau, xi) and their interpolation.

use std::f64::consts::PI;
use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::output::format_value;

/// |u(first node)| allowed at xi = 0, relative to max |u|.
pub const ORIGIN_SMALLNESS: f64 = 1e-8;

/// Default Chebyshev order of a profile. Evolved profiles are not analytic at
/// xi = 0, so re-evolving a sampled state loses accuracy like n^{-1.2}.
pub const DEFAULT_XI_NODES: usize = 384;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvolutionBackend {
    /// exp(-tau M) on the Fourier grid of the Schroedinger representation.
    Matrix,
    /// exp(-tau M) on the Legendre-Galerkin matrix.
    Legendre,
    /// Mehler-Fock transform, damping of c(k), inverse.
    Spectral,
}

impl std::fmt::Display for EvolutionBackend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EvolutionBackend::Matrix => "matrix",
            EvolutionBackend::Legendre => "legendre",
            EvolutionBackend::Spectral => "spectral",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverInfo {
    pub backend: EvolutionBackend,
    /// Grid points, Legendre modes or k-samples.
    pub resolution: usize,
    pub warnings: Vec<String>,
}

/// u(tau, xi) on an increasing grid in [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvolutionState {
    pub tau: f64,
    pub xi_grid: Vec<f64>,
    pub u_values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverInfo>,
}

/// n + 1 Chebyshev-Lobatto nodes (1 - cos(pi j / n))/2, dense near xi = 0.
pub fn chebyshev_xi_grid(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::domain("chebyshev_xi_grid", format!("n = {n} must be at least 2")));
    }
    Ok((0..=n)
        .map(|j| {
            let s = (0.5 * PI * j as f64 / n as f64).sin();
            s * s
        })
        .collect())
}

impl EvolutionState {
    pub fn new(tau: f64, xi_grid: Vec<f64>, u_values: Vec<f64>) -> Result<Self> {
        let state = EvolutionState {
            tau,
            xi_grid,
            u_values,
            solver: None,
        };
        state.validate()?;
        Ok(state)
    }

    /// u sampled on `chebyshev_xi_grid(n)`, with u(0) set to 0.
    pub fn from_profile(u: impl Fn(f64) -> f64, n: usize) -> Result<Self> {
        let xi_grid = chebyshev_xi_grid(n)?;
        let u_values = xi_grid.iter().map(|&x| if x == 0.0 { 0.0 } else { u(x) }).collect();
        Self::new(0.0, xi_grid, u_values)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.tau.is_finite() || self.u_values.iter().chain(&self.xi_grid).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "EvolutionState" });
        }
        if self.tau < 0.0 {
            return Err(Error::domain("EvolutionState", format!("tau = {} is negative", self.tau)));
        }
        if self.xi_grid.len() != self.u_values.len() {
            return Err(Error::Precondition(format!(
                "{} grid points but {} values",
                self.xi_grid.len(),
                self.u_values.len()
            )));
        }
        if self.xi_grid.len() < 3 {
            return Err(Error::Precondition("profile needs at least 3 samples".into()));
        }
        if self.xi_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Precondition("xi grid is not strictly increasing".into()));
        }
        let (lo, hi) = (self.xi_grid[0], *self.xi_grid.last().unwrap_or(&1.0));
        if lo < 0.0 || hi > 1.0 {
            return Err(Error::domain("EvolutionState", format!("xi grid [{lo}, {hi}] leaves [0, 1]")));
        }
        let peak = self.u_values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if lo == 0.0 && self.u_values[0].abs() > ORIGIN_SMALLNESS * peak {
            return Err(Error::Precondition(format!(
                "profile does not vanish at xi = 0 (u = {:e})",
                self.u_values[0]
            )));
        }
        Ok(())
    }

    pub fn with_solver(mut self, solver: SolverInfo) -> Self {
        self.solver = Some(solver);
        self
    }

    /// Same grid, values a u + b other.
    pub fn combine(&self, a: f64, other: &EvolutionState, b: f64) -> Result<EvolutionState> {
        if self.xi_grid != other.xi_grid {
            return Err(Error::Precondition("profiles live on different grids".into()));
        }
        let u_values = self.u_values.iter().zip(&other.u_values).map(|(x, y)| a * x + b * y).collect();
        EvolutionState::new(self.tau, self.xi_grid.clone(), u_values)
    }

    pub fn interpolant(&self) -> Result<Interpolant> {
        Interpolant::new(&self.xi_grid, &self.u_values)
    }

    /// CSV (xi, u) under a `# {json}` line carrying tau and solver metadata.
    pub fn write_csv(&self, mut out: impl Write) -> Result<()> {
        let header = StateHeader {
            tau: self.tau,
            solver: self.solver.clone(),
        };
        writeln!(out, "# {}", serde_json::to_string(&header)?)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["xi", "u"])?;
        for (x, u) in self.xi_grid.iter().zip(&self.u_values) {
            w.write_record([format_value(*x), format_value(*u)])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv(input: impl Read) -> Result<Self> {
        let mut header: Option<StateHeader> = None;
        let mut body = String::new();
        for line in BufReader::new(input).lines() {
            let line = line?;
            if let Some(rest) = line.strip_prefix('#') {
                if header.is_none() {
                    header = serde_json::from_str(rest.trim()).ok();
                }
            } else {
                body.push_str(&line);
                body.push('\n');
            }
        }
        let mut xi_grid = Vec::new();
        let mut u_values = Vec::new();
        let mut reader = csv::Reader::from_reader(body.as_bytes());
        for record in reader.deserialize() {
            let (x, u): (f64, f64) = record?;
            xi_grid.push(x);
            u_values.push(u);
        }
        let header = header.unwrap_or(StateHeader { tau: 0.0, solver: None });
        let mut state = EvolutionState::new(header.tau, xi_grid, u_values)?;
        state.solver = header.solver;
        Ok(state)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct StateHeader {
    tau: f64,
    #[serde(default)]
    solver: Option<SolverInfo>,
}

/// Barycentric polynomial interpolation through all samples.
#[derive(Debug, Clone)]
pub struct Interpolant {
    nodes: Vec<f64>,
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl Interpolant {
    pub fn new(nodes: &[f64], values: &[f64]) -> Result<Self> {
        if nodes.len() != values.len() || nodes.is_empty() {
            return Err(Error::Precondition("interpolation needs matching, non-empty samples".into()));
        }
        // weights 1 / prod (x_j - x_k), formed in log scale and rescaled
        let n = nodes.len();
        let mut logs = vec![0.0; n];
        let mut signs = vec![1.0; n];
        for j in 0..n {
            for k in 0..n {
                if k != j {
                    let d = nodes[j] - nodes[k];
                    if d == 0.0 {
                        return Err(Error::Precondition("repeated interpolation node".into()));
                    }
                    logs[j] -= d.abs().ln();
                    if d < 0.0 {
                        signs[j] = -signs[j];
                    }
                }
            }
        }
        let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let weights = logs.iter().zip(&signs).map(|(l, s)| s * (l - top).exp()).collect();
        Ok(Interpolant {
            nodes: nodes.to_vec(),
            values: values.to_vec(),
            weights,
        })
    }

    pub fn lo(&self) -> f64 {
        self.nodes[0]
    }

    pub fn hi(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    fn check(&self, x: f64) -> Result<()> {
        if !(x >= self.lo() && x <= self.hi()) {
            return Err(Error::OutOfRange {
                at: x,
                lo: self.lo(),
                hi: self.hi(),
            });
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&xj, &fj), &wj) in self.nodes.iter().zip(&self.values).zip(&self.weights) {
            let d = x - xj;
            if d == 0.0 {
                return Ok(fj);
            }
            let t = wj / d;
            num += t * fj;
            den += t;
        }
        Ok(num / den)
    }

    /// p(x)/x for an interpolant with a node at 0 and p(0) = 0; finite as x -> 0.
    pub fn eval_over_x(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        if self.nodes[0] != 0.0 {
            return Ok(self.eval(x)? / x);
        }
        // p(x) = x N(x) / (w_0 + x D(x)) with the sums over the nodes x_j > 0
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&xj, &fj), &wj) in self.nodes.iter().zip(&self.values).zip(&self.weights).skip(1) {
            let d = x - xj;
            if d == 0.0 {
                return Ok(fj / xj);
            }
            let t = wj / d;
            num += t * fj;
            den += t;
        }
        Ok(num / (self.weights[0] + x * den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = chebyshev_xi_grid(8).unwrap();
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], 0.0);
        assert!((g[8] - 1.0).abs() < 1e-15);
        assert!(g[1] - g[0] < g[5] - g[4]);
    }

    #[test]
    fn interpolation_is_spectral() {
        let s = EvolutionState::from_profile(|x| x * (1.0 - x) * (3.0 * x).cos(), 40).unwrap();
        let p = s.interpolant().unwrap();
        for x in [1e-9f64, 0.013, 0.5, 0.77, 1.0] {
            let exact = x * (1.0 - x) * (3.0 * x).cos();
            assert!((p.eval(x).unwrap() - exact).abs() < 1e-13);
            assert!((p.eval_over_x(x).unwrap() - exact / x).abs() < 1e-11);
        }
        assert!((p.eval_over_x(1e-300).unwrap() - 1.0).abs() < 1e-11);
        assert!(matches!(p.eval(1.5), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn nonzero_origin_rejected() {
        let g = chebyshev_xi_grid(4).unwrap();
        assert!(EvolutionState::new(0.0, g, vec![1.0; 5]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let s = EvolutionState::from_profile(|x| x.sin(), 12).unwrap().with_solver(SolverInfo {
            backend: EvolutionBackend::Spectral,
            resolution: 801,
            warnings: vec![],
        });
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# {\"tau\":0.0,"));
        let back = EvolutionState::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.solver, s.solver);
        for (a, b) in back.u_values.iter().zip(&s.u_values) {
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1e-300));
        }
        let mut again = Vec::new();
        back.write_csv(&mut again).unwrap();
        assert_eq!(again, buf);
    }
}
