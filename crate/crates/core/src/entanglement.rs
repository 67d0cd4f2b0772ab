//! Entanglement of bipartite states: negativity from the partial transpose,
//! and Schmidt-coefficient functionals of pure states.

use serde::Serialize;

use crate::error::Result;
use crate::linalg::{DensityMatrix, PureState};

/// Eigenvalues of `rho^{T_A}` below this count as negative.
const NEG_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PartialTransposeReport {
    /// `Tr |rho^{T_A}| - 1`.
    pub negativity: f64,
    /// Fraction of negative eigenvalues of `rho^{T_A}`.
    pub fraction: f64,
    /// `sum |lambda_-|`, half the negativity.
    pub negative_mass: f64,
}

pub fn partial_transpose_report(rho: &DensityMatrix) -> Result<PartialTransposeReport> {
    let pt = rho.partial_transpose()?;
    let values = pt.eig()?.values().to_vec();
    let abs_sum: f64 = values.iter().map(|v| v.abs()).sum();
    let negatives: Vec<f64> = values.iter().copied().filter(|&v| v < -NEG_TOL).collect();
    Ok(PartialTransposeReport {
        negativity: (abs_sum - 1.0).max(0.0),
        fraction: negatives.len() as f64 / values.len() as f64,
        negative_mass: -negatives.iter().sum::<f64>(),
    })
}

pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    Ok(partial_transpose_report(rho)?.negativity)
}

pub fn negative_fraction(rho: &DensityMatrix) -> Result<f64> {
    Ok(partial_transpose_report(rho)?.fraction)
}

/// `((Tr sqrt(rho_A))^2 - 1)/2` for the reduction of `psi`.
pub fn pure_negativity(psi: &PureState) -> Result<f64> {
    let s: f64 = psi.schmidt_coefficients()?.iter().map(|l| l.sqrt()).sum();
    Ok(((s * s - 1.0) / 2.0).max(0.0))
}

/// `N det(rho_A)^{1/N}` with `N = min(N_A, N_B)`.
pub fn g_concurrence(psi: &PureState) -> Result<f64> {
    let lambda = psi.schmidt_coefficients()?;
    let n = lambda.len() as f64;
    if lambda.iter().any(|&l| l <= 0.0) {
        return Ok(0.0);
    }
    let mean_log = lambda.iter().map(|l| l.ln()).sum::<f64>() / n;
    Ok(n * mean_log.exp())
}
