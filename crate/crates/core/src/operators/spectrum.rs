//! Ordered eigenpairs with backend and truncation metadata.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use super::galerkin::{galerkin_matrix_with, LogElements};
use super::pseudo::{pseudospectral_matrix, UGrid};
use super::OperatorParams;
use crate::error::{Error, Result};
use crate::linalg::{max_residual, symmetric_eigen, EigRange};
use crate::specfun::consts::EULER_GAMMA;

/// Bound on |M v - lambda v| / |v| for every returned pair.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;

// entries below this magnitude are skipped when fixing the sign
const SIGN_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Galerkin,
    Pseudospectral,
    Dense,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Galerkin => "galerkin",
            Backend::Pseudospectral => "pseudospectral",
            Backend::Dense => "dense",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    /// Matrix dimension of the returned pairs.
    pub size: usize,
    /// Dimension of the coarser companion run, if one was made.
    pub coarse_size: Option<usize>,
    /// |lambda(size) - lambda(coarse_size)| per eigenvalue.
    pub estimate: Option<Vec<f64>>,
    pub grid: Option<UGrid>,
}

/// Eigenvalues ascending; eigenvector columns of unit norm whose first
/// entry above 1e-8 in magnitude is positive.
///
/// Galerkin vectors hold Legendre coefficients, pseudospectral vectors hold
/// Psi(u_j) samples. Eigenvalues are those of K_ab in both cases.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub params: Option<OperatorParams>,
    pub backend: Backend,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Array2<f64>,
    pub truncation: Truncation,
}

/// The published JSON form of a spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRecord {
    pub params: OperatorParams,
    pub backend: Backend,
    pub n: usize,
    pub eigenvalues: Vec<f64>,
}

impl SpectralResult {
    pub fn record(&self) -> Result<SpectrumRecord> {
        let params = self
            .params
            .ok_or_else(|| Error::Precondition("spectrum carries no operator parameters".into()))?;
        Ok(SpectrumRecord {
            params,
            backend: self.backend,
            n: self.truncation.size,
            eigenvalues: self.eigenvalues.clone(),
        })
    }
}

fn fix_signs(vectors: &mut Array2<f64>) {
    for mut col in vectors.columns_mut() {
        if let Some(&lead) = col.iter().find(|v| v.abs() > SIGN_THRESHOLD) {
            if lead < 0.0 {
                col.mapv_inplace(|v| -v);
            }
        }
    }
}

fn decompose(matrix: &Array2<f64>, range: EigRange) -> Result<(Vec<f64>, Array2<f64>)> {
    let mut eig = symmetric_eigen(matrix, range)?;
    for (index, r) in max_residual(matrix, &eig).into_iter().enumerate() {
        if !(r <= RESIDUAL_TOLERANCE) {
            return Err(Error::Residual {
                index,
                residual: r,
                tolerance: RESIDUAL_TOLERANCE,
            });
        }
    }
    fix_signs(&mut eig.vectors);
    Ok((eig.values, eig.vectors))
}

/// Full eigendecomposition of a symmetric matrix.
pub fn eigendecompose(matrix: &Array2<f64>) -> Result<SpectralResult> {
    let (eigenvalues, eigenvectors) = decompose(matrix, EigRange::All)?;
    Ok(SpectralResult {
        params: None,
        backend: Backend::Dense,
        eigenvalues,
        eigenvectors,
        truncation: Truncation {
            size: matrix.nrows(),
            coarse_size: None,
            estimate: None,
            grid: None,
        },
    })
}

/// Lowest `count` eigenpairs of the Galerkin matrix at 2n, with the change
/// from the n-mode run as truncation estimate.
pub fn galerkin_spectrum(params: OperatorParams, n: usize, count: usize, method: LogElements) -> Result<SpectralResult> {
    if count == 0 || count > n {
        return Err(Error::Precondition(format!("cannot take {count} eigenvalues from {n} modes")));
    }
    let coarse = galerkin_matrix_with(params, n, method)?;
    let (coarse_values, _) = decompose(&coarse.entries, EigRange::Lowest(count))?;
    let fine = galerkin_matrix_with(params, 2 * n, method)?;
    let (eigenvalues, eigenvectors) = decompose(&fine.entries, EigRange::Lowest(count))?;
    let estimate = eigenvalues.iter().zip(&coarse_values).map(|(a, b)| (a - b).abs()).collect();
    Ok(SpectralResult {
        params: Some(params),
        backend: Backend::Galerkin,
        eigenvalues,
        eigenvectors,
        truncation: Truncation {
            size: 2 * n,
            coarse_size: Some(n),
            estimate: Some(estimate),
            grid: None,
        },
    })
}

/// Lowest `count` eigenpairs of G(p) + V(u); eigenvalues shifted by 2 gamma_E
/// to the K_ab scale.
pub fn pseudospectral_spectrum(params: OperatorParams, grid: &UGrid, count: usize) -> Result<SpectralResult> {
    if count == 0 || count > grid.len() {
        return Err(Error::Precondition(format!(
            "cannot take {count} eigenvalues from {} grid points",
            grid.len()
        )));
    }
    let h = pseudospectral_matrix(params, grid)?;
    let (values, eigenvectors) = decompose(&h, EigRange::Lowest(count))?;
    Ok(SpectralResult {
        params: Some(params),
        backend: Backend::Pseudospectral,
        eigenvalues: values.into_iter().map(|v| v + 2.0 * EULER_GAMMA).collect(),
        eigenvectors,
        truncation: Truncation {
            size: grid.len(),
            coarse_size: None,
            estimate: None,
            grid: Some(*grid),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{galerkin_matrix, harmonic};
    use ndarray::array;

    #[test]
    fn small_dense_cases() {
        let r = eigendecompose(&array![[0.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 3.0]]).unwrap();
        assert_eq!(r.eigenvalues, vec![0.0, 2.0, 3.0]);
        for j in 0..3 {
            assert!((r.eigenvectors[[j, j]] - 1.0).abs() < 1e-15);
        }
        let r = eigendecompose(&array![[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert!((r.eigenvalues[0] + 1.0).abs() < 1e-15 && (r.eigenvalues[1] - 1.0).abs() < 1e-15);
        assert!(r.eigenvectors[[0, 0]] > 0.0 && r.eigenvectors[[0, 1]] > 0.0);
    }

    #[test]
    fn harmonic_spectrum() {
        let p = OperatorParams::new(1.0, 1.0).unwrap();
        let r = eigendecompose(&galerkin_matrix(p, 10).unwrap().entries).unwrap();
        for (n, v) in r.eigenvalues.iter().enumerate() {
            assert!((v - 2.0 * harmonic(n)).abs() < 1e-14);
        }
    }

    #[test]
    fn record_serializes_to_schema_shape() {
        let p = OperatorParams::new(1.0, 1.0).unwrap();
        let r = galerkin_spectrum(p, 8, 3, LogElements::ClosedForm).unwrap();
        let json = serde_json::to_value(r.record().unwrap()).unwrap();
        assert_eq!(json["backend"], "galerkin");
        assert_eq!(json["n"], 16);
        assert_eq!(json["params"]["alpha"], 1.0);
        assert_eq!(json["eigenvalues"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn two_two_ground_state_small_grid() {
        // coarse grid; the tight comparison lives in the acceptance target
        let p = OperatorParams::new(2.0, 2.0).unwrap();
        let g = UGrid::new(30.0, 512).unwrap();
        let r = pseudospectral_spectrum(p, &g, 2).unwrap();
        assert!((0.5 * r.eigenvalues[0] - 0.2332).abs() < 2e-3, "{:?}", r.eigenvalues);
        let gal = galerkin_spectrum(p, 128, 2, LogElements::ClosedForm).unwrap();
        assert!((0.5 * gal.eigenvalues[0] - 0.233214).abs() < 1e-4);
        assert!(gal.truncation.estimate.unwrap()[0] < 1e-4);
    }

    #[test]
    fn mirrored_params_confinement() {
        let g = UGrid::new(30.0, 64).unwrap();
        let p = OperatorParams::new(0.0, 1.0).unwrap();
        assert!(matches!(pseudospectral_spectrum(p, &g, 1), Err(Error::Confinement { .. })));
    }
}
