//! The second-order operator L commuting with M, its commutator with
//! log(1+x), and the first-order operator l of the K_00 family.

use std::ops::{Add, Mul, Sub};

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{galerkin_matrix, legendre_jet, OperatorParams};
use crate::quad::GaussRule;
use crate::specfun::Complex;

/// Finite-difference step relative to the distance 1 - |x| from the nearest endpoint.
pub const FD_RELATIVE_STEP: f64 = 1e-3;

// modes carried by the Galerkin M matrix used in the commutator ledger
const LEDGER_MODES: usize = 16;

fn check_x(what: &'static str, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite { what });
    }
    if x <= -1.0 || x >= 1.0 {
        return Err(Error::domain(what, format!("x = {x} must lie in (-1, 1)")));
    }
    Ok(FD_RELATIVE_STEP * (1.0 - x.abs()))
}

fn first_derivative<T>(f: &impl Fn(f64) -> T, x: f64, h: f64) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    (f(x - 2.0 * h) - f(x + 2.0 * h) + (f(x + h) - f(x - h)) * 8.0) * (1.0 / (12.0 * h))
}

fn second_derivative<T>(f: &impl Fn(f64) -> T, x: f64, h: f64) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let outer = f(x - 2.0 * h) + f(x + 2.0 * h);
    let inner = f(x - h) + f(x + h);
    (inner * 16.0 - outer - f(x) * 30.0) * (1.0 / (12.0 * h * h))
}

/// L = (1+x) d/dx (1-x^2) d/dx + (1-x^2) d/dx - (1+x), with known value and
/// first two derivatives of phi at x.
pub fn apply_l_jet(x: f64, value: f64, d1: f64, d2: f64) -> f64 {
    let q = 1.0 - x * x;
    (1.0 + x) * (q * d2 - 2.0 * x * d1) + q * d1 - (1.0 + x) * value
}

/// L phi at x by five-point differences.
pub fn apply_l(phi: impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    let h = check_x("apply_l", x)?;
    Ok(apply_l_jet(x, phi(x), first_derivative(&phi, x, h), second_derivative(&phi, x, h)))
}

/// C = [L, log(1+x)] = 2(1-x^2) d/dx - 2x, from the value and slope at x.
pub fn apply_c_jet(x: f64, value: f64, d1: f64) -> f64 {
    2.0 * (1.0 - x * x) * d1 - 2.0 * x * value
}

pub fn apply_c(phi: impl Fn(f64) -> f64, x: f64) -> Result<f64> {
    let h = check_x("apply_c", x)?;
    Ok(apply_c_jet(x, phi(x), first_derivative(&phi, x, h)))
}

/// l phi = i[-(1-x^2) phi' + x phi].
pub fn apply_ell(phi: impl Fn(f64) -> Complex, x: f64) -> Result<Complex> {
    let h = check_x("apply_ell", x)?;
    let d1 = first_derivative(&phi, x, h);
    Ok(Complex::i() * (x * phi(x) - d1 * (1.0 - x * x)))
}

/// l phi = -i sqrt(1-x^2) d/dx [sqrt(1-x^2) phi].
pub fn apply_ell_factored(phi: impl Fn(f64) -> Complex, x: f64) -> Result<Complex> {
    let h = check_x("apply_ell_factored", x)?;
    let weighted = |y: f64| phi(y) * (1.0 - y * y).sqrt();
    let d1 = first_derivative(&weighted, x, h);
    Ok(-Complex::i() * d1 * (1.0 - x * x).sqrt())
}

/// Tridiagonal symbols of L on the standard Legendre polynomials:
/// L P_n = A_n P_{n+1} + B_n P_n + C_{n-1} P_{n-1}.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffOperatorL;

impl DiffOperatorL {
    /// A_n = -(n+1)^3 / (2n+1).
    pub fn upper(&self, n: usize) -> f64 {
        let m = n as f64 + 1.0;
        -m * m * m / (2.0 * n as f64 + 1.0)
    }

    /// B_n = -(n^2 + n + 1).
    pub fn diagonal(&self, n: usize) -> f64 {
        let nf = n as f64;
        -(nf * nf + nf + 1.0)
    }

    /// C_{n-1} = -n^3 / (2n+1), the P_{n-1} coefficient of L P_n.
    pub fn lower(&self, n: usize) -> f64 {
        let nf = n as f64;
        -nf * nf * nf / (2.0 * nf + 1.0)
    }

    /// R_n = -2(n+1)^2 / (2n+1), the P_{n+1} coefficient of C P_n.
    pub fn commutator_upper(&self, n: usize) -> f64 {
        let m = n as f64 + 1.0;
        -2.0 * m * m / (2.0 * n as f64 + 1.0)
    }

    /// S_{n-1} = 2n^2 / (2n+1), the P_{n-1} coefficient of C P_n.
    pub fn commutator_lower(&self, n: usize) -> f64 {
        let nf = n as f64;
        2.0 * nf * nf / (2.0 * nf + 1.0)
    }

    /// Matrix of L in the orthonormal basis, rows and columns 0..n.
    pub fn orthonormal_matrix(&self, n: usize) -> Array2<f64> {
        let mut m = Array2::zeros((n, n));
        // <P^_i, L P^_j> = sqrt((j+1/2)/(i+1/2)) * [P_i coefficient of L P_j]
        let scale = |i: usize, j: usize| ((j as f64 + 0.5) / (i as f64 + 0.5)).sqrt();
        for j in 0..n {
            m[[j, j]] = self.diagonal(j);
            if j + 1 < n {
                m[[j + 1, j]] = self.upper(j) * scale(j + 1, j);
            }
            if j > 0 {
                m[[j - 1, j]] = self.lower(j) * scale(j - 1, j);
            }
        }
        m
    }
}

/// One degree of the commuting-operator check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerRow {
    pub n: usize,
    pub upper: f64,
    pub upper_projected: f64,
    pub diagonal: f64,
    pub diagonal_projected: f64,
    pub lower: f64,
    pub lower_projected: f64,
    pub commutator_upper: f64,
    pub commutator_upper_projected: f64,
    pub commutator_lower: f64,
    pub commutator_lower_projected: f64,
    /// -2 A_n / (n+1) + R_n: the P_{n+1} part of [L, M] P_n.
    pub upper_relation: f64,
    /// 2 C_{n-1} / n + S_{n-1}: the P_{n-1} part of [L, M] P_n.
    pub lower_relation: f64,
    /// 2 A_n / (n+1) + R_n, the same relation with the sign of the first
    /// term flipped; equals 2 R_n, not zero.
    pub upper_as_printed: f64,
    /// P_{n+-1} coefficients of [L, M] P_n from the Galerkin M matrix.
    pub bracket_upper: f64,
    pub bracket_lower: f64,
    /// Largest coefficient of [L, M] P_n over all degrees.
    pub bracket_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorLedger {
    pub rows: Vec<LedgerRow>,
}

impl CommutatorLedger {
    /// Largest gap between a closed-form symbol and its projection.
    pub fn max_symbol_error(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|r| {
                [
                    r.upper - r.upper_projected,
                    r.diagonal - r.diagonal_projected,
                    r.lower - r.lower_projected,
                    r.commutator_upper - r.commutator_upper_projected,
                    r.commutator_lower - r.commutator_lower_projected,
                ]
            })
            .fold(0.0, |m, d| m.max(d.abs()))
    }

    /// Largest |relation| among the closed-form commutation relations.
    pub fn max_relation(&self) -> f64 {
        self.rows
            .iter()
            .fold(0.0, |m, r| m.max(r.upper_relation.abs()).max(r.lower_relation.abs()))
    }

    /// Largest coefficient of the numerical commutator [L, M].
    pub fn max_bracket(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.bracket_max))
    }
}

/// Coefficients of P_{n-1}, P_n, P_{n+1} in `apply(P_n)` by Gauss-Legendre projection.
fn project_neighbours(rule: &GaussRule, n: usize, apply: impl Fn(f64, f64, f64, f64) -> f64) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let (p, d1, d2) = legendre_jet(n, x);
        let image = apply(x, p, d1, d2);
        for (slot, m) in [n.wrapping_sub(1), n, n + 1].into_iter().enumerate() {
            if m == usize::MAX {
                continue;
            }
            let (pm, _, _) = legendre_jet(m, x);
            out[slot] += w * image * pm * (2.0 * m as f64 + 1.0) / 2.0;
        }
    }
    out
}

/// Symbols of L and C for degrees 0..=n_max, checked against projections,
/// and the commutator [L, M] with M = K_01 - log 2 from the Galerkin matrix.
pub fn commutator_ledger(n_max: usize) -> Result<CommutatorLedger> {
    let size = LEDGER_MODES.max(n_max + 4);
    let rule = GaussRule::new(n_max + 8);
    let op = DiffOperatorL;

    let mut m = galerkin_matrix(OperatorParams::new(0.0, 1.0)?, size)?.entries;
    for j in 0..size {
        m[[j, j]] -= std::f64::consts::LN_2;
    }
    let l = op.orthonormal_matrix(size);
    let bracket = l.dot(&m) - m.dot(&l);
    // coefficient of P_i in [L, M] P_j
    let to_standard = |i: usize, j: usize| bracket[[i, j]] * ((i as f64 + 0.5) / (j as f64 + 0.5)).sqrt();

    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let [lo, mid, up] = project_neighbours(&rule, n, apply_l_jet);
        let [c_lo, _, c_up] = project_neighbours(&rule, n, |x, p, d1, _| apply_c_jet(x, p, d1));
        let nf = n as f64;
        let (a, c, r, s) = (op.upper(n), op.lower(n), op.commutator_upper(n), op.commutator_lower(n));
        let lower_relation = if n == 0 { 0.0 } else { 2.0 * c / nf + s };
        // the ledger stops short of the truncation edge, where the product
        // L M picks up missing rows
        let bracket_max = (0..=n_max + 1).fold(0.0f64, |acc, i| acc.max(to_standard(i, n).abs()));
        rows.push(LedgerRow {
            n,
            upper: a,
            upper_projected: up,
            diagonal: op.diagonal(n),
            diagonal_projected: mid,
            lower: c,
            lower_projected: if n == 0 { 0.0 } else { lo },
            commutator_upper: r,
            commutator_upper_projected: c_up,
            commutator_lower: s,
            commutator_lower_projected: if n == 0 { 0.0 } else { c_lo },
            upper_relation: -2.0 * a / (nf + 1.0) + r,
            lower_relation,
            upper_as_printed: 2.0 * a / (nf + 1.0) + r,
            bracket_upper: to_standard(n + 1, n),
            bracket_lower: if n == 0 { 0.0 } else { to_standard(n - 1, n) },
            bracket_max,
        });
    }
    Ok(CommutatorLedger { rows })
}
