//! K_11 on monomials: an upper triangular matrix with diagonal 2 h_n.

use ndarray::Array2;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use super::harmonic;
use crate::error::{Error, Result};

/// Coefficients (index = power) of K_11 applied to x^n.
pub fn monomial_action_k11(n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    out[n] = 2.0 * harmonic(n);
    // only even k contribute: (1 + (-1)^k) / k
    for k in (2..=n).step_by(2) {
        out[n - k] -= 2.0 / k as f64;
    }
    out
}

/// Column j holds K_11 x^j in the monomial basis 1, x, .., x^{n-1}.
pub fn k11_monomial_matrix(n: usize) -> Array2<f64> {
    let mut m = Array2::zeros((n, n));
    for j in 0..n {
        for (i, c) in monomial_action_k11(j).into_iter().enumerate() {
            m[[i, j]] = c;
        }
    }
    m
}

/// Monomial coefficients of the standard Legendre polynomial P_n.
pub fn legendre_monomial_coeffs(n: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 1.0];
    for k in 1..n {
        let kf = k as f64;
        let mut next = vec![0.0; k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += (2.0 * kf + 1.0) / (kf + 1.0) * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= kf / (kf + 1.0) * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

type Exact = Ratio<BigInt>;

fn exact(num: i64, den: i64) -> Exact {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// The monomial matrix of K_11 in exact rational arithmetic.
fn exact_monomial_matrix(n: usize) -> Vec<Vec<Exact>> {
    let mut m = vec![vec![Exact::zero(); n]; n];
    let mut h = Exact::zero();
    for j in 0..n {
        if j > 0 {
            h += exact(1, j as i64);
        }
        m[j][j] = &h * exact(2, 1);
        for k in (2..=j).step_by(2) {
            m[j - k][j] -= exact(2, k as i64);
        }
    }
    m
}

fn l2_inner(p: &[Exact], q: &[Exact]) -> Exact {
    let mut s = Exact::zero();
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            if (i + j) % 2 == 0 {
                s += a * b * exact(2, (i + j + 1) as i64);
            }
        }
    }
    s
}

/// Eigenvectors of the triangular monomial matrix, each scaled to unit L2
/// norm on [-1, 1] with positive leading coefficient.
///
/// Back substitution cancels heavily in the monomial basis, so the solve and
/// the norms are carried out in exact rationals and rounded once.
pub fn k11_monomial_eigenvectors(n: usize) -> Result<Vec<Vec<f64>>> {
    let t = exact_monomial_matrix(n);
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let lam = &t[j][j];
        let mut v = vec![Exact::zero(); j + 1];
        v[j] = Exact::one();
        for i in (0..j).rev() {
            let mut s = Exact::zero();
            for l in i + 1..=j {
                s += &t[i][l] * &v[l];
            }
            let gap = lam - &t[i][i];
            if gap.is_zero() {
                return Err(Error::Precondition(format!("repeated diagonal entry at {i}, {j}")));
            }
            v[i] = s / gap;
        }
        let norm = l2_inner(&v, &v)
            .to_f64()
            .ok_or(Error::NonFinite { what: "k11_monomial_eigenvectors" })?
            .sqrt();
        let mut row = Vec::with_capacity(j + 1);
        for c in &v {
            let c = c.to_f64().ok_or(Error::NonFinite { what: "k11_monomial_eigenvectors" })?;
            row.push(c / norm);
        }
        out.push(row);
    }
    Ok(out)
}
