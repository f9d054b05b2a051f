//! x = tanh u, phi = cosh(u) Psi.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapDirection {
    /// phi(x) samples at x_j = tanh u_j to Psi(u_j).
    Forward,
    /// Psi(u_j) samples back to phi(tanh u_j).
    Inverse,
}

/// Pointwise change of representation on matched grids: `u` holds the
/// Schroedinger nodes, `values` the samples at u_j (or at tanh u_j).
pub fn schroedinger_map(direction: MapDirection, u: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    if u.len() != values.len() {
        return Err(Error::Precondition(format!(
            "{} nodes but {} samples",
            u.len(),
            values.len()
        )));
    }
    Ok(u.iter()
        .zip(values)
        .map(|(&uj, &v)| match direction {
            MapDirection::Forward => v / uj.cosh(),
            MapDirection::Inverse => v * uj.cosh(),
        })
        .collect())
}
